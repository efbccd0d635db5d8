#include "cdwb/error.hpp"
#include "cdwb/similarity.hpp"
#include "tally.hpp"

#include <algorithm>

namespace cdwb {

using detail::Tally;
using detail::yes_no;

namespace {

std::set<std::string> keys_of(const SatContext& ctx, const SatSet& s) {
  std::set<std::string> out;
  for (const auto& e : s) out.insert(ctx.key(e));
  return out;
}

std::map<std::string, bool> previous_values(const SatContext& ctx, const Generation* prev) {
  std::map<std::string, bool> out;
  if (!prev) return out;
  for (const auto& e : prev->domain) out.emplace(ctx.key(e), prev->truths.count(e) != 0);
  return out;
}

std::vector<Code> translated_roots(SatContext& ctx, const std::vector<FormulaPtr>& gamma) {
  std::vector<Code> roots;
  for (const auto& g : gamma) {
    Code c = ctx.add(translate_star(g));
    if (std::find(roots.begin(), roots.end(), c) == roots.end()) roots.push_back(c);
  }
  return roots;
}

}  // namespace

DetCompPair pair_from_pipeline(SatContext& ctx, const Universe& U, const CodeSet& D_omega,
                               const CodeSet& T_omega) {
  std::vector<Code> roots;
  for (const auto& m : U.members()) roots.push_back(ctx.add(translate_star(m.formula)));
  DetCompPair pair;
  pair.fragment = close_entries(ctx, roots);
  for (const auto& e : pair.fragment) {
    auto sentence = apply_assignment(ctx.formula(e.formula), e.assignment);
    if (!extended_determinate(sentence, U, D_omega, T_omega)) continue;
    pair.D.insert(e);
    if (t_final(D_omega, T_omega, sentence, U.witnesses(), U.caps().limits())) pair.S.insert(e);
  }
  return pair;
}

Generation ev_extend(SatContext& ctx, const DetCompPair& pair, const Generation* prev,
                     const std::vector<FormulaPtr>& gamma, std::size_t max_entries) {
  auto pre = check_det_comp(ctx, pair.fragment, pair.D, pair.S);
  if (!pre.passed()) {
    std::string msg = "(D0, S0) is not determinately compositional:";
    for (const auto& name : pre.failures()) {
      msg += " " + name;
      const auto& w = pre.results.at(name).witness;
      if (w) msg += " [" + w->detail + "]";
    }
    throw PreconditionError(msg);
  }

  Generation gen;
  gen.formulas = translated_roots(ctx, gamma);
  gen.domain = close_entries(ctx, gen.formulas, max_entries);

  const auto D0 = keys_of(ctx, pair.D);
  const auto S0 = keys_of(ctx, pair.S);
  const auto before = previous_values(ctx, prev);
  const auto& limits = ctx.limits();
  auto order = rank_order(ctx, gen.domain);

  std::map<SatEntry, bool> value;
  auto base = [&](const SatEntry& e) {
    const auto& k = ctx.key(e);
    if (auto it = before.find(k); it != before.end()) return it->second;
    bool compat = D0.count(k) && S0.count(k);
    const auto& f = ctx.formula(e.formula);
    bool atom = false;
    switch (f->kind) {
      case Formula::Kind::Eq:
        atom = value_assign(f->lhs, e.assignment, limits) == value_assign(f->rhs, e.assignment, limits);
        break;
      case Formula::Kind::Det:
      case Formula::Kind::Tr: {
        auto tk = ctx.target_key(value_assign(f->lhs, e.assignment, limits));
        const auto& pool = f->kind == Formula::Kind::Det ? D0 : S0;
        atom = tk && pool.count(*tk);
        if (atom && !compat) ++gen.atom_clause_only;
        break;
      }
      default:
        break;
    }
    return compat || atom;
  };
  auto compose = [&](const SatEntry& e) {
    auto ch = ctx.children(e);
    auto v = [&](const SatEntry& c) { return value.at(c); };
    switch (ctx.formula(e.formula)->kind) {
      case Formula::Kind::Not:
        return !v(ch[0]);
      case Formula::Kind::Or:
      case Formula::Kind::Exists:
        return std::any_of(ch.begin(), ch.end(), v);
      case Formula::Kind::And:
      case Formula::Kind::Forall:
        return std::all_of(ch.begin(), ch.end(), v);
      default:
        return base(e);
    }
  };

  for (std::size_t i = 0; i < order.classes.size(); ++i) {
    for (const auto& e : order.classes[i].members) {
      bool v = order.rank[i] == 0 ? base(e) : compose(e);
      value.emplace(e, v);
      if (v) gen.truths.insert(e);
    }
  }
  return gen;
}

AxiomReport check_gamma(SatContext& ctx, const SatSet& S, const std::vector<FormulaPtr>& gamma,
                        const SatSet& D0, const SatSet& S0, const Generation* prev) {
  AxiomReport report;
  Tally tally(report, {"COMP-EQ", "COMP-D", "COMP-T", "COMP-NEG", "COMP-OR", "COMP-EX", "REG", "COMPAT",
                       "PRES"});
  auto domain = close_entries(ctx, translated_roots(ctx, gamma));
  const auto D0k = keys_of(ctx, D0);
  const auto S0k = keys_of(ctx, S0);
  const auto before = previous_values(ctx, prev);
  const auto& limits = ctx.limits();
  auto s = [&](const SatEntry& e) { return S.count(e) != 0; };

  for (const auto& e : domain) {
    const auto& f = ctx.formula(e.formula);
    auto clause = [&](bool expected) {
      return [&, expected] {
        return "(" + to_string(f) + ") under " + ctx.key(e) + ": S=" + yes_no(s(e)) + " but the clause gives " +
               yes_no(expected);
      };
    };
    switch (f->kind) {
      case Formula::Kind::Eq: {
        bool v = value_assign(f->lhs, e.assignment, limits) == value_assign(f->rhs, e.assignment, limits);
        tally.record("COMP-EQ", s(e) == v, e.formula, clause(v));
        break;
      }
      case Formula::Kind::Det:
      case Formula::Kind::Tr: {
        auto tk = ctx.target_key(value_assign(f->lhs, e.assignment, limits));
        if (!tk) break;
        bool det = f->kind == Formula::Kind::Det;
        bool v = det ? D0k.count(*tk) != 0 : S0k.count(*tk) != 0;
        tally.record(det ? "COMP-D" : "COMP-T", s(e) == v, e.formula, clause(v));
        break;
      }
      case Formula::Kind::Not: {
        bool v = !s(ctx.children(e)[0]);
        tally.record("COMP-NEG", s(e) == v, e.formula, clause(v));
        break;
      }
      case Formula::Kind::Or: {
        auto ch = ctx.children(e);
        bool v = std::any_of(ch.begin(), ch.end(), s);
        tally.record("COMP-OR", s(e) == v, e.formula, clause(v));
        break;
      }
      case Formula::Kind::Exists: {
        auto ch = ctx.children(e);
        bool v = std::any_of(ch.begin(), ch.end(), s);
        tally.record("COMP-EX", s(e) == v, e.formula, clause(v));
        break;
      }
      default:
        break;
    }
    const auto& k = ctx.key(e);
    if (D0k.count(k)) {
      bool v = S0k.count(k) != 0;
      tally.record("COMPAT", s(e) == v, e.formula, clause(v));
    }
    if (auto it = before.find(k); it != before.end())
      tally.record("PRES", s(e) == it->second, e.formula, clause(it->second));
  }

  std::map<std::string, std::vector<const SatEntry*>> groups;
  for (const auto& e : domain) groups[ctx.key(e)].push_back(&e);
  for (const auto& [k, g] : groups) {
    if (g.size() < 2) continue;
    bool first = s(*g.front());
    auto bad = std::find_if(g.begin(), g.end(), [&](const SatEntry* e) { return s(*e) != first; });
    tally.record("REG", bad == g.end(), g.front()->formula,
                 [&] { return "entries with canonical form " + k + " disagree"; });
  }
  return report;
}

}  // namespace cdwb
