#include "cdwb/arith.hpp"

#include "cdwb/error.hpp"

namespace cdwb {

namespace {

Value checked(unsigned __int128 v, const ArithLimits& limits) {
  if (v > limits.value_cap)
    throw OverflowError("term value exceeds cap " + std::to_string(limits.value_cap));
  return static_cast<Value>(v);
}

Value eval(const TermPtr& t, const Assignment* alpha, const ArithLimits& limits) {
  switch (t->kind) {
    case Term::Kind::Zero:
      return 0;
    case Term::Kind::Numeral:
      return checked(t->value, limits);
    case Term::Kind::Succ:
      return checked(static_cast<unsigned __int128>(eval(t->lhs, alpha, limits)) + 1, limits);
    case Term::Kind::Plus:
      return checked(static_cast<unsigned __int128>(eval(t->lhs, alpha, limits)) +
                         eval(t->rhs, alpha, limits),
                     limits);
    case Term::Kind::Times:
      return checked(static_cast<unsigned __int128>(eval(t->lhs, alpha, limits)) *
                         eval(t->rhs, alpha, limits),
                     limits);
    case Term::Kind::Var:
      if (alpha) {
        if (auto it = alpha->find(t->name); it != alpha->end()) return checked(it->second, limits);
      }
      throw OpenTermError("no value for variable '" + t->name + "'");
    case Term::Kind::Quote:
      throw OpenTermError("unresolved quote(" + t->name + ")");
  }
  return 0;
}

TermPtr s_chain(Value k) {
  TermPtr t = zero();
  for (Value i = 0; i < k; ++i) t = succ(t);
  return t;
}

// Small parts print as S-chains so the variants differ visibly from the numeral.
TermPtr part(Value k) { return k <= 4 ? s_chain(k) : numeral(k); }

TermPtr collapse(const TermPtr& t, const ArithLimits& limits) {
  if (is_closed(t)) return numeral(value_closed(t, limits));
  switch (t->kind) {
    case Term::Kind::Succ:
      return succ(collapse(t->lhs, limits));
    case Term::Kind::Plus:
      return plus(collapse(t->lhs, limits), collapse(t->rhs, limits));
    case Term::Kind::Times:
      return times(collapse(t->lhs, limits), collapse(t->rhs, limits));
    default:
      return t;
  }
}

}  // namespace

Value value_closed(const TermPtr& t, const ArithLimits& limits) { return eval(t, nullptr, limits); }

Value value_assign(const TermPtr& t, const Assignment& alpha, const ArithLimits& limits) {
  return eval(t, &alpha, limits);
}

std::vector<TermPtr> term_variants(Value n, std::size_t budget) {
  std::vector<TermPtr> candidates;
  if (n == 0) {
    candidates = {zero(), plus(zero(), zero()), times(zero(), succ(zero())), numeral(0)};
  } else {
    candidates.push_back(numeral(n));
    candidates.push_back(plus(part(n - n / 2), part(n / 2)));
    candidates.push_back(n <= 4 ? s_chain(n) : succ(numeral(n - 1)));
    for (Value a = 2; a * a <= n; ++a) {
      if (n % a == 0) {
        candidates.push_back(times(part(a), part(n / a)));
        break;
      }
    }
    candidates.push_back(times(succ(zero()), numeral(n)));
    candidates.push_back(plus(numeral(n), zero()));
  }

  std::vector<TermPtr> out;
  for (auto& c : candidates) {
    if (size(c) > budget) continue;
    bool dup = false;
    for (const auto& o : out) dup = dup || equal(o, c);
    if (!dup) out.push_back(std::move(c));
  }
  return out;
}

FormulaPtr collapse_closed_terms(const FormulaPtr& f, const ArithLimits& limits) {
  switch (f->kind) {
    case Formula::Kind::Eq:
      return eq(collapse(f->lhs, limits), collapse(f->rhs, limits));
    case Formula::Kind::Tr:
      return tr(collapse(f->lhs, limits));
    case Formula::Kind::Det:
      return det(collapse(f->lhs, limits));
    case Formula::Kind::Not:
      return neg(collapse_closed_terms(f->left, limits));
    case Formula::Kind::And:
      return conj(collapse_closed_terms(f->left, limits), collapse_closed_terms(f->right, limits));
    case Formula::Kind::Or:
      return disj(collapse_closed_terms(f->left, limits), collapse_closed_terms(f->right, limits));
    case Formula::Kind::Forall:
      return forall(f->var, collapse_closed_terms(f->left, limits));
    case Formula::Kind::Exists:
      return exists(f->var, collapse_closed_terms(f->left, limits));
  }
  return f;
}

}  // namespace cdwb
