#include "cdwb/similarity.hpp"

#include "cdwb/error.hpp"
#include "tally.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace cdwb {

using detail::Tally;
using detail::yes_no;

FormulaPtr canonical_pair(const FormulaPtr& phi, const Assignment& alpha, const ArithLimits& limits) {
  return collapse_closed_terms(apply_assignment(phi, alpha), limits);
}

bool similar(const FormulaPtr& a, const Assignment& alpha, const FormulaPtr& b, const Assignment& beta,
             const ArithLimits& limits) {
  return equal(canonical_pair(a, alpha, limits), canonical_pair(b, beta, limits));
}

namespace {

// Term nodes of a formula in preorder; closed ones are the possible holes.
struct Occurrences {
  std::vector<std::size_t> subtree;  // node count of the subtree rooted at each index
  std::vector<std::size_t> closed;   // indices of closed nodes
};

std::size_t collect(const TermPtr& t, Occurrences& occ) {
  std::size_t at = occ.subtree.size();
  occ.subtree.push_back(0);
  if (is_closed(t)) occ.closed.push_back(at);
  std::size_t n = 1;
  if (t->lhs) n += collect(t->lhs, occ);
  if (t->rhs) n += collect(t->rhs, occ);
  occ.subtree[at] = n;
  return n;
}

void collect(const FormulaPtr& f, Occurrences& occ) {
  if (f->lhs) collect(f->lhs, occ);
  if (f->rhs) collect(f->rhs, occ);
  if (f->left) collect(f->left, occ);
  if (f->right) collect(f->right, occ);
}

class TemplateMatch {
public:
  TemplateMatch(const Occurrences& occ, const std::vector<bool>& hole, const ArithLimits& limits)
      : occ_(occ), hole_(hole), limits_(limits) {}

  bool formula(const FormulaPtr& a, const FormulaPtr& b) {
    if (a->kind != b->kind || a->var != b->var) return false;
    if (a->lhs && !term(a->lhs, b->lhs)) return false;
    if (a->rhs && !term(a->rhs, b->rhs)) return false;
    if (a->left && !formula(a->left, b->left)) return false;
    if (a->right && !formula(a->right, b->right)) return false;
    return true;
  }

private:
  bool term(const TermPtr& a, const TermPtr& b) {
    std::size_t at = next_;
    if (hole_[at]) {
      next_ += occ_.subtree[at];
      return is_closed(b) && value_closed(a, limits_) == value_closed(b, limits_);
    }
    ++next_;
    if (a->kind != b->kind || a->name != b->name || a->value != b->value) return false;
    if (a->lhs && !term(a->lhs, b->lhs)) return false;
    if (a->rhs && !term(a->rhs, b->rhs)) return false;
    return true;
  }

  const Occurrences& occ_;
  const std::vector<bool>& hole_;
  const ArithLimits& limits_;
  std::size_t next_ = 0;
};

}  // namespace

bool similar_oracle(const FormulaPtr& a, const Assignment& alpha, const FormulaPtr& b,
                    const Assignment& beta, std::size_t size_bound, const ArithLimits& limits) {
  auto x = apply_assignment(a, alpha);
  auto y = apply_assignment(b, beta);
  Occurrences occ;
  collect(x, occ);
  const std::size_t k = occ.closed.size();
  if (k > size_bound || k >= 63)
    throw CapExceeded("oracle bound exceeded: " + std::to_string(k) + " closed subterm occurrences");
  std::vector<bool> hole(occ.subtree.size(), false);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    for (std::size_t i = 0; i < k; ++i) hole[occ.closed[i]] = (mask >> i) & 1U;
    if (TemplateMatch(occ, hole, limits).formula(x, y)) return true;
  }
  return false;
}

SatContext::SatContext(SentenceTable& table, CodeSet known, WitnessSet witnesses, ArithLimits limits)
    : table_(&table), known_(std::move(known)), witnesses_(std::move(witnesses)), limits_(limits) {}

const std::string& SatContext::key(const SatEntry& e) const {
  auto it = keys_.find(e);
  if (it == keys_.end())
    it = keys_.emplace(e, to_string(canonical_pair(formula(e.formula), e.assignment, limits_))).first;
  return it->second;
}

std::optional<std::string> SatContext::target_key(Value c) const {
  auto it = targets_.find(c);
  if (it == targets_.end()) {
    std::optional<std::string> k;
    if (known_.count(c))
      k = to_string(collapse_closed_terms(translate_star(table_->decode(c)), limits_));
    it = targets_.emplace(c, std::move(k)).first;
  }
  return it->second;
}

std::vector<SatEntry> SatContext::children(const SatEntry& e) const {
  const auto& f = formula(e.formula);
  std::vector<SatEntry> out;
  auto sub = [&](const FormulaPtr& g, const Assignment& alpha) {
    SatEntry child{table_->intern(g), restrict_to(alpha, g)};
    if (std::find(out.begin(), out.end(), child) == out.end()) out.push_back(std::move(child));
  };
  switch (f->kind) {
    case Formula::Kind::Not:
      sub(f->left, e.assignment);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      sub(f->left, e.assignment);
      sub(f->right, e.assignment);
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      for (Natural w : witnesses_) {
        Assignment beta = e.assignment;
        beta[f->var] = w;
        sub(f->left, beta);
      }
      break;
    default:
      break;
  }
  return out;
}

namespace {

void all_assignments(const std::vector<std::string>& vars, std::size_t i, Assignment& cur,
                     const WitnessSet& W, const std::function<void(const Assignment&)>& emit) {
  if (i == vars.size()) {
    emit(cur);
    return;
  }
  for (Natural w : W) {
    cur[vars[i]] = w;
    all_assignments(vars, i + 1, cur, W, emit);
  }
  cur.erase(vars[i]);
}

}  // namespace

SatSet close_entries(SatContext& ctx, const SatSet& seeds, std::size_t max_entries) {
  SatSet out;
  std::deque<SatEntry> queue;
  auto admit = [&](const SatEntry& e) {
    if (!out.insert(e).second) return;
    if (out.size() > max_entries)
      throw CapExceeded("entry closure exceeds " + std::to_string(max_entries) + " entries at " +
                        to_string(ctx.formula(e.formula)));
    queue.push_back(e);
  };
  for (const auto& e : seeds) admit(e);
  while (!queue.empty()) {
    auto e = queue.front();
    queue.pop_front();
    for (auto& c : ctx.children(e)) admit(c);
  }
  return out;
}

SatSet close_entries(SatContext& ctx, const std::vector<Code>& roots, std::size_t max_entries) {
  SatSet seeds;
  for (Code c : roots) {
    auto fv = free_vars(ctx.formula(c));
    std::vector<std::string> vars(fv.begin(), fv.end());
    Assignment cur;
    all_assignments(vars, 0, cur, ctx.witnesses(), [&](const Assignment& a) {
      seeds.insert(SatEntry{c, a});
      if (seeds.size() > max_entries)
        throw CapExceeded("entry closure exceeds " + std::to_string(max_entries) + " entries");
    });
  }
  return close_entries(ctx, seeds, max_entries);
}

RankOrder rank_order(const SatContext& ctx, const SatSet& entries) {
  std::map<std::string, std::vector<SatEntry>> groups;
  std::map<Code, std::vector<const SatEntry*>> by_formula;
  for (const auto& e : entries) {
    groups[ctx.key(e)].push_back(e);
    by_formula[e.formula].push_back(&e);
  }

  auto child_keys = [&](const SatEntry& e) {
    std::set<std::string> out;
    const auto& f = ctx.formula(e.formula);
    auto exact = [&](const FormulaPtr& g) {
      auto code = ctx.table().find(g);
      if (!code) return;
      SatEntry c{*code, restrict_to(e.assignment, g)};
      if (entries.count(c)) out.insert(ctx.key(c));
    };
    switch (f->kind) {
      case Formula::Kind::Not:
        exact(f->left);
        break;
      case Formula::Kind::And:
      case Formula::Kind::Or:
        exact(f->left);
        exact(f->right);
        break;
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        auto code = ctx.table().find(f->left);
        if (!code) break;
        auto it = by_formula.find(*code);
        if (it == by_formula.end()) break;
        for (const SatEntry* c : it->second) {
          bool agrees = std::all_of(c->assignment.begin(), c->assignment.end(), [&](const auto& kv) {
            if (kv.first == f->var) return true;
            auto a = e.assignment.find(kv.first);
            return a != e.assignment.end() && a->second == kv.second;
          });
          if (agrees) out.insert(ctx.key(*c));
        }
        break;
      }
      default:
        break;
    }
    return out;
  };

  std::map<std::string, std::set<std::string>> below;
  for (const auto& [k, members] : groups) {
    for (const auto& e : members) {
      for (auto& c : child_keys(e)) below[k].insert(std::move(c));
    }
  }

  std::map<std::string, std::size_t> rank;
  std::set<std::string> active;
  std::function<std::size_t(const std::string&)> visit = [&](const std::string& k) -> std::size_t {
    if (auto it = rank.find(k); it != rank.end()) return it->second;
    if (!active.insert(k).second) throw Error("similarity classes form a cycle at " + k);
    std::size_t r = 0;
    if (auto it = below.find(k); it != below.end()) {
      for (const auto& c : it->second) r = std::max(r, visit(c) + 1);
    }
    active.erase(k);
    rank.emplace(k, r);
    return r;
  };
  for (const auto& [k, _] : groups) visit(k);

  std::vector<std::pair<std::size_t, std::string>> order;
  for (const auto& [k, r] : rank) order.emplace_back(r, k);
  std::sort(order.begin(), order.end());

  RankOrder out;
  for (auto& [r, k] : order) {
    auto& members = groups[k];
    const auto& m = members.front();
    out.index.emplace(k, out.classes.size());
    out.classes.push_back(
        SimClass{k, canonical_pair(ctx.formula(m.formula), m.assignment, ctx.limits()), std::move(members)});
    out.rank.push_back(r);
  }
  return out;
}

namespace {

std::string describe(const SatContext& ctx, const SatEntry& e) {
  std::string s = "(" + to_string(ctx.formula(e.formula)) + ", {";
  bool first = true;
  for (const auto& [v, n] : e.assignment) {
    s += (first ? "" : ",") + v + "=" + std::to_string(n);
    first = false;
  }
  return s + "})";
}

std::set<std::string> keys_of(const SatContext& ctx, const SatSet& s) {
  std::set<std::string> out;
  for (const auto& e : s) out.insert(ctx.key(e));
  return out;
}

void check_regular(Tally& tally, const std::string& name, const SatContext& ctx, const SatSet& domain,
                   const std::function<bool(const SatEntry&)>& pred) {
  std::map<std::string, std::vector<const SatEntry*>> groups;
  for (const auto& e : domain) groups[ctx.key(e)].push_back(&e);
  for (const auto& [k, g] : groups) {
    if (g.size() < 2) continue;
    bool first = pred(*g.front());
    auto bad = std::find_if(g.begin(), g.end(), [&](const SatEntry* e) { return pred(*e) != first; });
    const SatEntry& at = bad == g.end() ? *g.front() : **bad;
    tally.record(name, bad == g.end(), at.formula, [&] {
      return describe(ctx, *g.front()) + " and " + describe(ctx, at) + " are similar but disagree";
    });
  }
}

}  // namespace

AxiomReport check_det_comp(const SatContext& ctx, const SatSet& fragment, const SatSet& D, const SatSet& S) {
  AxiomReport report;
  report.notes.push_back("D'2 and D'3 checked for atoms whose canonical form is T(#c) or D(#c)");
  report.notes.push_back("S3 checked as D(phi) -> (S(T(#phi)) <-> S(phi))");
  Tally tally(report, {"D'1", "D'2", "D'3", "D'4", "D'5", "D'6", "R'1", "R'2", "S1", "S2", "S3", "S4",
                       "S5", "S6"});
  const auto Dk = keys_of(ctx, D);
  const auto Sk = keys_of(ctx, S);
  auto d = [&](const SatEntry& e) { return D.count(e) != 0; };
  auto s = [&](const SatEntry& e) { return S.count(e) != 0; };
  const auto& limits = ctx.limits();

  for (const auto& e : fragment) {
    const auto& f = ctx.formula(e.formula);
    auto where = [&](const std::string& what) { return [&, what] { return describe(ctx, e) + ": " + what; }; };
    switch (f->kind) {
      case Formula::Kind::Eq: {
        tally.record("D'1", d(e), e.formula, where("equation outside D"));
        bool holds = value_assign(f->lhs, e.assignment, limits) == value_assign(f->rhs, e.assignment, limits);
        tally.record("S1", s(e) == holds, e.formula, where("S=" + yes_no(s(e)) + " but values give " + yes_no(holds)));
        break;
      }
      case Formula::Kind::Tr:
      case Formula::Kind::Det: {
        auto tk = ctx.target_key(value_assign(f->lhs, e.assignment, limits));
        if (!tk) break;
        bool target_d = Dk.count(*tk) != 0;
        bool is_tr = f->kind == Formula::Kind::Tr;
        tally.record(is_tr ? "D'2" : "D'3", d(e) == target_d, e.formula,
                     where("D=" + yes_no(d(e)) + " but D(target " + *tk + ")=" + yes_no(target_d)));
        if (!target_d) break;
        if (is_tr) {
          bool target_s = Sk.count(*tk) != 0;
          tally.record("S3", s(e) == target_s, e.formula,
                       where("S=" + yes_no(s(e)) + " but S(target " + *tk + ")=" + yes_no(target_s)));
        } else {
          tally.record("S2", s(e), e.formula, where("target " + *tk + " in D but S fails"));
        }
        break;
      }
      case Formula::Kind::Not: {
        auto ch = ctx.children(e);
        tally.record("D'4", d(e) == d(ch[0]), e.formula,
                     where("D=" + yes_no(d(e)) + " but D(negated)=" + yes_no(d(ch[0]))));
        if (d(e)) {
          tally.record("S4", s(e) == !s(ch[0]), e.formula,
                       where("S=" + yes_no(s(e)) + " and S(negated)=" + yes_no(s(ch[0]))));
        }
        break;
      }
      case Formula::Kind::Or: {
        auto ch = ctx.children(e);
        const auto& a = ch[0];
        const auto& b = ch.size() > 1 ? ch[1] : ch[0];
        bool rhs = (d(a) && d(b)) || (d(a) && s(a)) || (d(b) && s(b));
        tally.record("D'5", d(e) == rhs, e.formula, where("D=" + yes_no(d(e)) + " but the clause gives " + yes_no(rhs)));
        if (d(e)) {
          bool v = s(a) || s(b);
          tally.record("S5", s(e) == v, e.formula, where("S=" + yes_no(s(e)) + " but disjuncts give " + yes_no(v)));
        }
        break;
      }
      case Formula::Kind::Exists: {
        auto ch = ctx.children(e);
        bool all_d = std::all_of(ch.begin(), ch.end(), d);
        bool witnessed = std::any_of(ch.begin(), ch.end(), [&](const SatEntry& c) { return d(c) && s(c); });
        tally.record("D'6", d(e) == (all_d || witnessed), e.formula,
                     where("D=" + yes_no(d(e)) + " but the clause gives " + yes_no(all_d || witnessed)));
        if (d(e)) {
          bool v = std::any_of(ch.begin(), ch.end(), s);
          tally.record("S6", s(e) == v, e.formula, where("S=" + yes_no(s(e)) + " but instances give " + yes_no(v)));
        }
        break;
      }
      default:
        break;
    }
  }
  check_regular(tally, "R'1", ctx, fragment, s);
  check_regular(tally, "R'2", ctx, fragment, d);
  return report;
}

AxiomReport check_det_comp(SatContext& ctx, const SatSet& D, const SatSet& S) {
  SatSet seeds = D;
  seeds.insert(S.begin(), S.end());
  return check_det_comp(ctx, close_entries(ctx, seeds), D, S);
}

}  // namespace cdwb
