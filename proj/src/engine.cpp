#include "cdwb/engine.hpp"

#include "cdwb/error.hpp"

#include <algorithm>

namespace cdwb {

namespace {

bool in(const CodeSet& s, Code c) { return s.count(c) != 0; }

bool determinately_false(const CodeSet& D, const CodeSet& T, Code c) { return in(D, c) && !in(T, c); }
bool determinately_true(const CodeSet& D, const CodeSet& T, Code c) { return in(D, c) && in(T, c); }

bool operator_clause(const Member& m, const CodeSet& D, const CodeSet& T) {
  const auto& ch = m.children;
  switch (m.formula->kind) {
    case Formula::Kind::Eq:
      return true;
    case Formula::Kind::Tr:
    case Formula::Kind::Det:
      return m.target && in(D, *m.target);
    case Formula::Kind::Not:
      return in(D, ch[0]);
    case Formula::Kind::And:
      return (in(D, ch[0]) && in(D, ch[1])) || determinately_false(D, T, ch[0]) ||
             determinately_false(D, T, ch[1]);
    case Formula::Kind::Or:
      return (in(D, ch[0]) && in(D, ch[1])) || determinately_true(D, T, ch[0]) ||
             determinately_true(D, T, ch[1]);
    case Formula::Kind::Forall:
      return std::all_of(ch.begin(), ch.end(), [&](Code c) { return in(D, c); }) ||
             std::any_of(ch.begin(), ch.end(), [&](Code c) { return determinately_false(D, T, c); });
    case Formula::Kind::Exists:
      return std::all_of(ch.begin(), ch.end(), [&](Code c) { return in(D, c); }) ||
             std::any_of(ch.begin(), ch.end(), [&](Code c) { return determinately_true(D, T, c); });
  }
  return false;
}

class Evaluator {
public:
  Evaluator(const CodeSet& D, const CodeSet& T, const WitnessSet& W, const ArithLimits& limits)
      : D_(D), T_(T), W_(W), limits_(limits) {}

  bool operator()(const FormulaPtr& f) const {
    switch (f->kind) {
      case Formula::Kind::Eq:
        return value_closed(f->lhs, limits_) == value_closed(f->rhs, limits_);
      case Formula::Kind::Tr:
        return in(T_, value_closed(f->lhs, limits_));
      case Formula::Kind::Det:
        return in(D_, value_closed(f->lhs, limits_));
      case Formula::Kind::Not:
        return !(*this)(f->left);
      case Formula::Kind::And:
        return (*this)(f->left) && (*this)(f->right);
      case Formula::Kind::Or:
        return (*this)(f->left) || (*this)(f->right);
      case Formula::Kind::Forall:
        return std::all_of(W_.begin(), W_.end(),
                           [&](Natural w) { return (*this)(substitute_numeral(f->left, f->var, w)); });
      case Formula::Kind::Exists:
        return std::any_of(W_.begin(), W_.end(),
                           [&](Natural w) { return (*this)(substitute_numeral(f->left, f->var, w)); });
    }
    return false;
  }

private:
  const CodeSet& D_;
  const CodeSet& T_;
  const WitnessSet& W_;
  ArithLimits limits_;
};

class MemberEvaluator {
public:
  MemberEvaluator(const CodeSet& D, const CodeSet& T, const Universe& U) : D_(D), T_(T), U_(U) {}

  bool operator()(Code c) {
    if (auto it = memo_.find(c); it != memo_.end()) return it->second;
    const Member& m = *U_.find(c);
    bool v = false;
    const auto& ch = m.children;
    switch (m.formula->kind) {
      case Formula::Kind::Eq:
        v = m.eq_holds;
        break;
      case Formula::Kind::Tr:
        v = in(T_, *m.target);
        break;
      case Formula::Kind::Det:
        v = in(D_, *m.target);
        break;
      case Formula::Kind::Not:
        v = !(*this)(ch[0]);
        break;
      case Formula::Kind::And:
        v = (*this)(ch[0]) && (*this)(ch[1]);
        break;
      case Formula::Kind::Or:
        v = (*this)(ch[0]) || (*this)(ch[1]);
        break;
      case Formula::Kind::Forall:
        v = std::all_of(ch.begin(), ch.end(), [&](Code k) { return (*this)(k); });
        break;
      case Formula::Kind::Exists:
        v = std::any_of(ch.begin(), ch.end(), [&](Code k) { return (*this)(k); });
        break;
    }
    memo_.emplace(c, v);
    return v;
  }

private:
  const CodeSet& D_;
  const CodeSet& T_;
  const Universe& U_;
  std::map<Code, bool> memo_;
};

CodeSet intersect(const CodeSet& a, const CodeSet& b) {
  CodeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace

CodeSet d_operator(const CodeSet& D, const CodeSet& T, const Universe& U) {
  CodeSet out;
  for (const auto& m : U.members()) {
    if (operator_clause(m, D, T)) out.insert(out.end(), m.code);
  }
  return out;
}

bool tarski_eval(const CodeSet& D, const CodeSet& T, const FormulaPtr& phi, const WitnessSet& W,
                 const ArithLimits& limits) {
  if (!is_sentence(phi)) throw OpenTermError("tarski_eval on an open formula: " + to_string(phi));
  return Evaluator(D, T, W, limits)(phi);
}

CodeSet tarski_members(const CodeSet& D, const CodeSet& T, const Universe& U) {
  MemberEvaluator eval(D, T, U);
  CodeSet out;
  for (const auto& m : U.members()) {
    if (eval(m.code)) out.insert(out.end(), m.code);
  }
  return out;
}

StageTrace run_stages(const Universe& U, std::size_t max_stages) {
  if (max_stages < 1) throw Error("max_stages must be at least 1");
  StageTrace trace;
  trace.stages.push_back(Stage{0, {}, {}});
  for (std::size_t i = 0; i < max_stages; ++i) {
    const Stage& cur = trace.stages.back();
    Stage next{i + 1, d_operator(cur.D, cur.T, U), tarski_members(cur.D, cur.T, U)};
    bool fixed = next.D == cur.D && intersect(next.T, cur.D) == intersect(cur.T, cur.D);
    trace.stages.push_back(std::move(next));
    if (fixed) {
      trace.fixpoint = i;
      break;
    }
  }
  std::tie(trace.D_omega, trace.T_omega) = limit_sets(trace);
  return trace;
}

std::pair<CodeSet, CodeSet> limit_sets(const StageTrace& trace) {
  CodeSet D, T;
  for (const auto& s : trace.stages) {
    D.insert(s.D.begin(), s.D.end());
    auto dt = intersect(s.D, s.T);
    T.insert(dt.begin(), dt.end());
  }
  return {std::move(D), std::move(T)};
}

bool t_final(const CodeSet& D_omega, const CodeSet& T_omega, const FormulaPtr& phi,
             const WitnessSet& W, const ArithLimits& limits) {
  return tarski_eval(D_omega, T_omega, phi, W, limits);
}

TruthTable t_final_table(const CodeSet& D_omega, const CodeSet& T_omega, const Universe& U) {
  MemberEvaluator eval(D_omega, T_omega, U);
  TruthTable out;
  for (const auto& m : U.members()) out.emplace_hint(out.end(), m.code, eval(m.code));
  return out;
}

bool extended_determinate(const FormulaPtr& phi, const Universe& U, const CodeSet& D_omega,
                          const CodeSet& T_omega) {
  if (auto c = U.lookup(phi)) return in(D_omega, *c);
  const auto& W = U.witnesses();
  const auto limits = U.caps().limits();
  auto det = [&](const FormulaPtr& f) { return extended_determinate(f, U, D_omega, T_omega); };
  auto truth = [&](const FormulaPtr& f) { return t_final(D_omega, T_omega, f, W, limits); };
  switch (phi->kind) {
    case Formula::Kind::Eq:
      return true;
    case Formula::Kind::Tr:
    case Formula::Kind::Det:
      return in(D_omega, value_closed(phi->lhs, limits));
    case Formula::Kind::Not:
      return det(phi->left);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool want = phi->kind == Formula::Kind::Or;
      bool dl = det(phi->left), dr = det(phi->right);
      return (dl && dr) || (dl && truth(phi->left) == want) || (dr && truth(phi->right) == want);
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool want = phi->kind == Formula::Kind::Exists;
      bool all = true, decisive = false;
      for (const auto& inst : instances(phi, W)) {
        bool d = det(inst);
        all = all && d;
        decisive = decisive || (d && truth(inst) == want);
        if (decisive) break;
      }
      return all || decisive;
    }
  }
  return false;
}

}  // namespace cdwb
