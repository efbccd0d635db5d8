#include "cdwb/syntax.hpp"

#include "cdwb/error.hpp"

#include <algorithm>
#include <utility>

namespace cdwb {

namespace {

TermPtr make_term(Term::Kind k, TermPtr l = nullptr, TermPtr r = nullptr, std::string name = {},
                  Natural value = 0) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->lhs = std::move(l);
  t->rhs = std::move(r);
  t->name = std::move(name);
  t->value = value;
  return t;
}

FormulaPtr make_formula(Formula::Kind k, TermPtr a, TermPtr b, FormulaPtr l, FormulaPtr r,
                        std::string v = {}) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  f->left = std::move(l);
  f->right = std::move(r);
  f->var = std::move(v);
  return f;
}

void print(const TermPtr& t, bool expand, std::string& out) {
  switch (t->kind) {
    case Term::Kind::Zero:
      out += '0';
      return;
    case Term::Kind::Succ:
      out += "S(";
      print(t->lhs, expand, out);
      out += ')';
      return;
    case Term::Kind::Plus:
    case Term::Kind::Times:
      out += '(';
      print(t->lhs, expand, out);
      out += t->kind == Term::Kind::Plus ? '+' : '*';
      print(t->rhs, expand, out);
      out += ')';
      return;
    case Term::Kind::Var:
      out += t->name;
      return;
    case Term::Kind::Numeral:
      if (expand) {
        for (Natural i = 0; i < t->value; ++i) out += "S(";
        out += '0';
        out.append(t->value, ')');
      } else {
        out += '#';
        out += std::to_string(t->value);
      }
      return;
    case Term::Kind::Quote:
      out += "quote(" + t->name + ")";
      return;
  }
}

void print(const FormulaPtr& f, bool expand, std::string& out) {
  switch (f->kind) {
    case Formula::Kind::Eq:
      print(f->lhs, expand, out);
      out += '=';
      print(f->rhs, expand, out);
      return;
    case Formula::Kind::Tr:
    case Formula::Kind::Det:
      out += f->kind == Formula::Kind::Tr ? "T(" : "D(";
      print(f->lhs, expand, out);
      out += ')';
      return;
    case Formula::Kind::Not:
      out += '~';
      print(f->left, expand, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      out += '(';
      print(f->left, expand, out);
      out += f->kind == Formula::Kind::And ? '&' : '|';
      print(f->right, expand, out);
      out += ')';
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out += f->kind == Formula::Kind::Forall ? "forall " : "exists ";
      out += f->var;
      out += '.';
      print(f->left, expand, out);
      return;
  }
}

void collect_free(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Term::Kind::Var) out.insert(t->name);
  collect_free(t->lhs, out);
  collect_free(t->rhs, out);
}

void collect_free(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Tr:
    case Formula::Kind::Det:
      collect_free(f->lhs, out);
      collect_free(f->rhs, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::set<std::string> inner;
      collect_free(f->left, inner);
      inner.erase(f->var);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      collect_free(f->left, out);
      collect_free(f->right, out);
  }
}

bool term_has_quote(const TermPtr& t) {
  if (!t) return false;
  return t->kind == Term::Kind::Quote || term_has_quote(t->lhs) || term_has_quote(t->rhs);
}

FormulaPtr rebuild(const FormulaPtr& f, TermPtr a, TermPtr b, FormulaPtr l, FormulaPtr r) {
  return make_formula(f->kind, std::move(a), std::move(b), std::move(l), std::move(r), f->var);
}

bool is_negation_of_disjunction_of_negations(const Formula& f) {
  return f.kind == Formula::Kind::Not && f.left->kind == Formula::Kind::Or &&
         f.left->left->kind == Formula::Kind::Not && f.left->right->kind == Formula::Kind::Not;
}

bool is_negated_exists_negation(const Formula& f) {
  return f.kind == Formula::Kind::Not && f.left->kind == Formula::Kind::Exists &&
         f.left->left->kind == Formula::Kind::Not;
}

}  // namespace

TermPtr zero() { return make_term(Term::Kind::Zero); }
TermPtr succ(TermPtr t) { return make_term(Term::Kind::Succ, std::move(t)); }
TermPtr plus(TermPtr a, TermPtr b) { return make_term(Term::Kind::Plus, std::move(a), std::move(b)); }
TermPtr times(TermPtr a, TermPtr b) { return make_term(Term::Kind::Times, std::move(a), std::move(b)); }
TermPtr var(std::string name) { return make_term(Term::Kind::Var, nullptr, nullptr, std::move(name)); }
TermPtr quote(std::string name) { return make_term(Term::Kind::Quote, nullptr, nullptr, std::move(name)); }
TermPtr numeral(Natural n) { return make_term(Term::Kind::Numeral, nullptr, nullptr, {}, n); }

FormulaPtr eq(TermPtr a, TermPtr b) {
  return make_formula(Formula::Kind::Eq, std::move(a), std::move(b), nullptr, nullptr);
}
FormulaPtr tr(TermPtr t) { return make_formula(Formula::Kind::Tr, std::move(t), nullptr, nullptr, nullptr); }
FormulaPtr det(TermPtr t) { return make_formula(Formula::Kind::Det, std::move(t), nullptr, nullptr, nullptr); }
FormulaPtr neg(FormulaPtr f) { return make_formula(Formula::Kind::Not, nullptr, nullptr, std::move(f), nullptr); }
FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  return make_formula(Formula::Kind::And, nullptr, nullptr, std::move(a), std::move(b));
}
FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
  return make_formula(Formula::Kind::Or, nullptr, nullptr, std::move(a), std::move(b));
}
FormulaPtr forall(std::string v, FormulaPtr body) {
  return make_formula(Formula::Kind::Forall, nullptr, nullptr, std::move(body), nullptr, std::move(v));
}
FormulaPtr exists(std::string v, FormulaPtr body) {
  return make_formula(Formula::Kind::Exists, nullptr, nullptr, std::move(body), nullptr, std::move(v));
}

bool is_atomic(const Formula& f) {
  return f.kind == Formula::Kind::Eq || f.kind == Formula::Kind::Tr || f.kind == Formula::Kind::Det;
}

bool is_quantifier(const Formula& f) {
  return f.kind == Formula::Kind::Forall || f.kind == Formula::Kind::Exists;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Zero:
      return true;
    case Term::Kind::Numeral:
      return a->value == b->value;
    case Term::Kind::Var:
    case Term::Kind::Quote:
      return a->name == b->name;
    default:
      return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Tr:
    case Formula::Kind::Det:
      return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return a->var == b->var && equal(a->left, b->left);
    default:
      return equal(a->left, b->left) && equal(a->right, b->right);
  }
}

std::string to_string(const TermPtr& t, bool expand_numerals) {
  std::string out;
  print(t, expand_numerals, out);
  return out;
}

std::string to_string(const FormulaPtr& f, bool expand_numerals) {
  std::string out;
  print(f, expand_numerals, out);
  return out;
}

std::size_t size(const TermPtr& t) {
  if (!t) return 0;
  return 1 + size(t->lhs) + size(t->rhs);
}

std::size_t size(const FormulaPtr& f) {
  if (!f) return 0;
  return 1 + size(f->lhs) + size(f->rhs) + size(f->left) + size(f->right);
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_free(f, out);
  return out;
}

bool is_closed(const TermPtr& t) {
  if (!t) return true;
  if (t->kind == Term::Kind::Var || t->kind == Term::Kind::Quote) return false;
  return is_closed(t->lhs) && is_closed(t->rhs);
}

bool is_sentence(const FormulaPtr& f) { return free_vars(f).empty(); }

bool has_quote(const FormulaPtr& f) {
  if (!f) return false;
  return term_has_quote(f->lhs) || term_has_quote(f->rhs) || has_quote(f->left) || has_quote(f->right);
}

TermPtr substitute_numeral(const TermPtr& t, const std::string& v, Natural n) {
  if (!t) return t;
  switch (t->kind) {
    case Term::Kind::Var:
      return t->name == v ? numeral(n) : t;
    case Term::Kind::Zero:
    case Term::Kind::Numeral:
    case Term::Kind::Quote:
      return t;
    default: {
      auto l = substitute_numeral(t->lhs, v, n);
      auto r = substitute_numeral(t->rhs, v, n);
      if (l == t->lhs && r == t->rhs) return t;
      return make_term(t->kind, std::move(l), std::move(r));
    }
  }
}

FormulaPtr substitute_numeral(const FormulaPtr& f, const std::string& v, Natural n) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Tr:
    case Formula::Kind::Det: {
      auto a = substitute_numeral(f->lhs, v, n);
      auto b = substitute_numeral(f->rhs, v, n);
      if (a == f->lhs && b == f->rhs) return f;
      return rebuild(f, std::move(a), std::move(b), nullptr, nullptr);
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      if (f->var == v) return f;
      auto body = substitute_numeral(f->left, v, n);
      if (body == f->left) return f;
      return rebuild(f, nullptr, nullptr, std::move(body), nullptr);
    }
    default: {
      auto l = substitute_numeral(f->left, v, n);
      auto r = f->right ? substitute_numeral(f->right, v, n) : nullptr;
      if (l == f->left && r == f->right) return f;
      return rebuild(f, nullptr, nullptr, std::move(l), std::move(r));
    }
  }
}

FormulaPtr apply_assignment(const FormulaPtr& f, const Assignment& alpha) {
  auto fv = free_vars(f);
  bool same = fv.size() == alpha.size() &&
              std::equal(fv.begin(), fv.end(), alpha.begin(), [](const auto& v, const auto& kv) {
                return v == kv.first;
              });
  if (!same) {
    std::string msg = "assignment domain {";
    for (const auto& [k, _] : alpha) msg += k + ",";
    msg += "} does not match free variables {";
    for (const auto& v : fv) msg += v + ",";
    throw DomainError(msg + "} of " + to_string(f));
  }
  FormulaPtr out = f;
  for (const auto& [v, n] : alpha) out = substitute_numeral(out, v, n);
  return out;
}

Assignment restrict_to(const Assignment& alpha, const FormulaPtr& f) {
  Assignment out;
  for (const auto& v : free_vars(f)) {
    auto it = alpha.find(v);
    if (it != alpha.end()) out.emplace(v, it->second);
  }
  return out;
}

std::vector<FormulaPtr> direct_subformulas(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return {f->left};
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return {f->left, f->right};
    default:
      return {};
  }
}

FormulaPtr translate_star(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Tr:
    case Formula::Kind::Det:
      return f;
    case Formula::Kind::Not:
      return neg(translate_star(f->left));
    case Formula::Kind::And:
      return neg(disj(neg(translate_star(f->left)), neg(translate_star(f->right))));
    case Formula::Kind::Or:
      return disj(translate_star(f->left), translate_star(f->right));
    case Formula::Kind::Forall:
      return neg(exists(f->var, neg(translate_star(f->left))));
    case Formula::Kind::Exists:
      return exists(f->var, translate_star(f->left));
  }
  return f;
}

FormulaPtr translate_circ(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Tr:
    case Formula::Kind::Det:
      return f;
    case Formula::Kind::And:
    case Formula::Kind::Forall:
      throw TranslationError("not in the image of translate_star: " + to_string(f));
    case Formula::Kind::Not:
      if (is_negation_of_disjunction_of_negations(*f))
        return conj(translate_circ(f->left->left->left), translate_circ(f->left->right->left));
      if (is_negated_exists_negation(*f)) return forall(f->left->var, translate_circ(f->left->left->left));
      return neg(translate_circ(f->left));
    case Formula::Kind::Or:
      return disj(translate_circ(f->left), translate_circ(f->right));
    case Formula::Kind::Exists:
      return exists(f->var, translate_circ(f->left));
  }
  return f;
}

Code SentenceTable::intern(const FormulaPtr& f) {
  if (has_quote(f)) throw BindError("cannot intern a formula with unresolved quote: " + to_string(f));
  auto key = to_string(f);
  if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
  Code c = next_++;
  by_key_.emplace(std::move(key), c);
  by_code_.emplace(c, f);
  return c;
}

std::optional<Code> SentenceTable::find(const FormulaPtr& f) const {
  if (auto it = by_key_.find(to_string(f)); it != by_key_.end()) return it->second;
  return std::nullopt;
}

const FormulaPtr& SentenceTable::decode(Code c) const {
  auto it = by_code_.find(c);
  if (it == by_code_.end()) throw Error("no formula with code " + std::to_string(c));
  return it->second;
}

std::optional<Code> SentenceTable::code_of(std::string_view name) const {
  if (auto it = names_.find(name); it != names_.end()) return it->second;
  return std::nullopt;
}

void SentenceTable::bind(Code c, const FormulaPtr& f) {
  by_key_.emplace(to_string(f), c);
  by_code_.emplace(c, f);
}

}  // namespace cdwb
