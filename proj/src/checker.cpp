#include "cdwb/checker.hpp"

#include "cdwb/error.hpp"
#include "tally.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace cdwb {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Vacuous:
      return "vacuous";
  }
  return "?";
}

bool AxiomReport::passed() const {
  return std::none_of(results.begin(), results.end(),
                      [](const auto& kv) { return kv.second.status == Status::Fail; });
}

std::vector<std::string> AxiomReport::failures() const {
  std::vector<std::string> out;
  for (const auto& [name, r] : results) {
    if (r.status == Status::Fail) out.push_back(name);
  }
  return out;
}

void AxiomReport::merge(const AxiomReport& other) {
  for (const auto& [name, r] : other.results) results[name] = r;
  for (const auto& n : other.notes) {
    if (std::find(notes.begin(), notes.end(), n) == notes.end()) notes.push_back(n);
  }
}

namespace {

using detail::Tally;
using detail::yes_no;

bool in(const CodeSet& s, Code c) { return s.count(c) != 0; }

bool focused(const Focus& only, Code c) { return !only || *only == c; }

// Members grouped by their collapsed form (maximal closed subterms replaced by
// value numerals). Members in one group differ only by equal-valued terms.
std::vector<std::vector<Code>> similarity_groups(const Universe& U) {
  std::map<std::string, std::vector<Code>> groups;
  const auto limits = U.caps().limits();
  for (const auto& m : U.members())
    groups[to_string(collapse_closed_terms(m.formula, limits))].push_back(m.code);
  std::vector<std::vector<Code>> out;
  for (auto& [_, g] : groups) {
    if (g.size() > 1) out.push_back(std::move(g));
  }
  return out;
}

void check_groups(Tally& tally, const std::string& name, const Universe& U, const Focus& only,
                  const std::function<bool(Code)>& pred) {
  for (const auto& g : similarity_groups(U)) {
    if (only && std::find(g.begin(), g.end(), *only) == g.end()) continue;
    bool first = pred(g.front());
    auto bad = std::find_if(g.begin(), g.end(), [&](Code c) { return pred(c) != first; });
    tally.record(name, bad == g.end(), bad == g.end() ? g.front() : *bad, [&] {
      return "sentences " + std::to_string(g.front()) + " and " + std::to_string(*bad) +
             " differ only by equal-valued terms but disagree (" + yes_no(first) + " vs " +
             yes_no(!first) + ")";
    });
  }
}

// Negation lookups: the materialized ~phi when U has it, else the derived rule.
class Negations {
public:
  explicit Negations(const Universe& U) {
    for (const auto& m : U.members()) {
      if (m.formula->kind == Formula::Kind::Not) of_.emplace(m.children[0], m.code);
    }
  }

  std::optional<Code> negation_of(Code c) const {
    if (auto it = of_.find(c); it != of_.end()) return it->second;
    return std::nullopt;
  }

private:
  std::unordered_map<Code, Code> of_;
};

std::string describe(const Member& m) { return to_string(m.formula); }

}  // namespace

AxiomReport check_cd_axioms(const CodeSet& D, const TruthTable& T, const Universe& U, Focus only) {
  AxiomReport report;
  report.notes.push_back(
      "D6 read as D(forall v phi) <-> (forall x D phi(x)) | (exists y (D ~phi(y) & T ~phi(y)))");
  report.notes.push_back("D4 read as D(~phi) <-> D(phi)");
  report.notes.push_back("T2 checked as the one-way implication D x -> T D(num x)");
  Tally tally(report, {"T1", "T2", "T3", "T4", "T5", "T6", "D1", "D2", "D3", "D4", "D5", "D5-EQUIV",
                       "D6", "R1", "R2"});

  Negations negs(U);
  auto tv = [&](Code c) {
    auto it = T.find(c);
    return it != T.end() && it->second;
  };
  auto t_neg = [&](Code c) {
    if (auto n = negs.negation_of(c)) return tv(*n);
    return !tv(c);
  };
  auto d_neg = [&](Code c) {
    if (auto n = negs.negation_of(c)) return in(D, *n);
    return in(D, c);
  };

  for (const auto& m : U.members()) {
    if (!focused(only, m.code)) continue;
    const Code c = m.code;
    const auto& ch = m.children;
    switch (m.formula->kind) {
      case Formula::Kind::Eq:
        tally.record("T1", tv(c) == m.eq_holds, c, [&] {
          const auto limits = U.caps().limits();
          return "T(" + describe(m) + ")=" + yes_no(tv(c)) + " but terms have values (" +
                 std::to_string(value_closed(m.formula->lhs, limits)) + ", " +
                 std::to_string(value_closed(m.formula->rhs, limits)) + ")";
        });
        tally.record("D1", in(D, c), c, [&] { return describe(m) + " is an equation outside D"; });
        break;
      case Formula::Kind::Det:
        if (in(D, *m.target)) {
          tally.record("T2", tv(c), c, [&] {
            return std::to_string(*m.target) + " in D but T(" + describe(m) + ") fails";
          });
        }
        tally.record("D3", in(D, c) == in(D, *m.target), c, [&] {
          return "D(" + describe(m) + ")=" + yes_no(in(D, c)) + " but D(" +
                 std::to_string(*m.target) + ")=" + yes_no(in(D, *m.target));
        });
        break;
      case Formula::Kind::Tr:
        if (in(D, *m.target)) {
          tally.record("T3", tv(*m.target) == tv(c), c, [&] {
            return "T(" + std::to_string(*m.target) + ")=" + yes_no(tv(*m.target)) + " but T(" +
                   describe(m) + ")=" + yes_no(tv(c));
          });
        }
        tally.record("D2", in(D, c) == in(D, *m.target), c, [&] {
          return "D(" + describe(m) + ")=" + yes_no(in(D, c)) + " but D(" +
                 std::to_string(*m.target) + ")=" + yes_no(in(D, *m.target));
        });
        break;
      case Formula::Kind::Not:
        tally.record("T4", tv(c) == !tv(ch[0]), c, [&] {
          return "T(" + describe(m) + ")=" + yes_no(tv(c)) + " and T(" + std::to_string(ch[0]) +
                 ")=" + yes_no(tv(ch[0]));
        });
        tally.record("D4", in(D, c) == in(D, ch[0]), c, [&] {
          return "D(" + describe(m) + ")=" + yes_no(in(D, c)) + " but D(" + std::to_string(ch[0]) +
                 ")=" + yes_no(in(D, ch[0]));
        });
        break;
      case Formula::Kind::And: {
        tally.record("T5", tv(c) == (tv(ch[0]) && tv(ch[1])), c, [&] {
          return "T(" + describe(m) + ")=" + yes_no(tv(c)) + " with conjuncts " + yes_no(tv(ch[0])) +
                 ", " + yes_no(tv(ch[1]));
        });
        bool rhs = (in(D, ch[0]) && in(D, ch[1])) || (in(D, ch[0]) && t_neg(ch[0])) ||
                   (in(D, ch[1]) && t_neg(ch[1]));
        tally.record("D5", in(D, c) == rhs, c, [&] {
          return "D(" + describe(m) + ")=" + yes_no(in(D, c)) + " but the clause gives " + yes_no(rhs);
        });
        for (Code k : ch) {
          bool printed = in(D, k) && t_neg(k);
          bool operator_form = d_neg(k) && t_neg(k);
          tally.record("D5-EQUIV", printed == operator_form, c, [&] {
            return "conjunct " + std::to_string(k) + ": (D phi & T~phi)=" + yes_no(printed) +
                   " but (D~phi & T~phi)=" + yes_no(operator_form);
          });
        }
        break;
      }
      case Formula::Kind::Forall: {
        bool all_true = std::all_of(ch.begin(), ch.end(), tv);
        tally.record("T6", tv(c) == all_true, c, [&] {
          return "T(" + describe(m) + ")=" + yes_no(tv(c)) + " but instances give " + yes_no(all_true);
        });
        bool all_det = std::all_of(ch.begin(), ch.end(), [&](Code k) { return in(D, k); });
        bool refuted = std::any_of(ch.begin(), ch.end(), [&](Code k) { return d_neg(k) && t_neg(k); });
        tally.record("D6", in(D, c) == (all_det || refuted), c, [&] {
          return "D(" + describe(m) + ")=" + yes_no(in(D, c)) + " but the clause gives " +
                 yes_no(all_det || refuted);
        });
        break;
      }
      default:
        break;
    }
  }
  check_groups(tally, "R1", U, only, tv);
  check_groups(tally, "R2", U, only, [&](Code c) { return in(D, c); });
  return report;
}

AxiomReport check_ct_minus(const CodeSet& D, const CodeSet& T, const TruthTable& Tprime,
                           const Universe& U, Focus only) {
  AxiomReport report;
  Tally tally(report, {"CT-EQ", "CT-D", "CT-T", "CT-NEG", "CT-AND", "CT-OR", "CT-ALL", "CT-EX",
                       "CT-REG"});
  auto tv = [&](Code c) {
    auto it = Tprime.find(c);
    return it != Tprime.end() && it->second;
  };
  for (const auto& m : U.members()) {
    if (!focused(only, m.code)) continue;
    const Code c = m.code;
    const auto& ch = m.children;
    auto report_value = [&](bool expected) {
      return [&, expected] {
        return "T'(" + describe(m) + ")=" + yes_no(tv(c)) + " but the clause gives " + yes_no(expected);
      };
    };
    switch (m.formula->kind) {
      case Formula::Kind::Eq:
        tally.record("CT-EQ", tv(c) == m.eq_holds, c, report_value(m.eq_holds));
        break;
      case Formula::Kind::Det:
        tally.record("CT-D", tv(c) == in(D, *m.target), c, report_value(in(D, *m.target)));
        break;
      case Formula::Kind::Tr:
        tally.record("CT-T", tv(c) == in(T, *m.target), c, report_value(in(T, *m.target)));
        break;
      case Formula::Kind::Not:
        tally.record("CT-NEG", tv(c) == !tv(ch[0]), c, report_value(!tv(ch[0])));
        break;
      case Formula::Kind::And: {
        bool v = tv(ch[0]) && tv(ch[1]);
        tally.record("CT-AND", tv(c) == v, c, report_value(v));
        break;
      }
      case Formula::Kind::Or: {
        bool v = tv(ch[0]) || tv(ch[1]);
        tally.record("CT-OR", tv(c) == v, c, report_value(v));
        break;
      }
      case Formula::Kind::Forall: {
        bool v = std::all_of(ch.begin(), ch.end(), tv);
        tally.record("CT-ALL", tv(c) == v, c, report_value(v));
        break;
      }
      case Formula::Kind::Exists: {
        bool v = std::any_of(ch.begin(), ch.end(), tv);
        tally.record("CT-EX", tv(c) == v, c, report_value(v));
        break;
      }
    }
  }
  check_groups(tally, "CT-REG", U, only, tv);
  return report;
}

AxiomReport check_monotonicity(const StageTrace& trace) {
  AxiomReport report;
  Tally tally(report, {"MONO-D", "MONO-T"});
  const auto& st = trace.stages;
  for (std::size_t k = 0; k < st.size(); ++k) {
    for (std::size_t n = k + 1; n < st.size(); ++n) {
      auto missing = std::find_if(st[k].D.begin(), st[k].D.end(), [&](Code c) { return !in(st[n].D, c); });
      tally.record("MONO-D", missing == st[k].D.end(),
                   missing == st[k].D.end() ? std::nullopt : std::optional<Code>(*missing), [&] {
                     return "(k,n)=(" + std::to_string(k) + "," + std::to_string(n) + "): " +
                            std::to_string(*missing) + " in D_k but not in D_n";
                   });
      auto flipped = std::find_if(st[k].D.begin(), st[k].D.end(),
                                  [&](Code c) { return in(st[k].T, c) != in(st[n].T, c); });
      tally.record("MONO-T", flipped == st[k].D.end(),
                   flipped == st[k].D.end() ? std::nullopt : std::optional<Code>(*flipped), [&] {
                     return "(k,n)=(" + std::to_string(k) + "," + std::to_string(n) + "): " +
                            std::to_string(*flipped) + " in D_k with T_k=" +
                            yes_no(in(st[k].T, *flipped)) + ", T_n=" + yes_no(in(st[n].T, *flipped));
                   });
    }
  }
  return report;
}

AxiomReport check_fixpoint(const CodeSet& D_omega, const CodeSet& T_omega, const Universe& U,
                           Focus only) {
  AxiomReport report;
  Tally tally(report, {"FIXPOINT"});
  auto image = d_operator(D_omega, T_omega, U);
  std::optional<Code> bad;
  for (const auto& m : U.members()) {
    if (!focused(only, m.code)) continue;
    if (in(image, m.code) != in(D_omega, m.code)) {
      bad = m.code;
      break;
    }
  }
  if (!bad) {
    for (Code c : D_omega) {
      if (focused(only, c) && !U.contains(c)) {
        bad = c;
        break;
      }
    }
  }
  tally.record("FIXPOINT", !bad, bad, [&] {
    return std::to_string(*bad) + (in(image, *bad) ? " is in the operator image but not in D_omega"
                                                   : " is in D_omega but not in the operator image");
  });
  return report;
}

AxiomReport check_partial_comp(const CodeSet& D_omega, const CodeSet& T_omega, const Universe& U,
                               Focus only) {
  AxiomReport report;
  Tally tally(report, {"C9-EQ", "C9-D", "C9-T", "C9-NEG", "C9-AND", "C9-OR", "C9-ALL", "C9-EX",
                       "C9-REG"});
  auto tv = [&](Code c) { return in(T_omega, c); };
  for (const auto& m : U.members()) {
    if (!focused(only, m.code) || !in(D_omega, m.code)) continue;
    const Code c = m.code;
    const auto& ch = m.children;
    auto detail = [&](bool expected) {
      return [&, expected] {
        return describe(m) + " in D_omega has T_omega=" + yes_no(tv(c)) + " but the clause gives " +
               yes_no(expected);
      };
    };
    switch (m.formula->kind) {
      case Formula::Kind::Eq:
        tally.record("C9-EQ", tv(c) == m.eq_holds, c, detail(m.eq_holds));
        break;
      case Formula::Kind::Det:
        tally.record("C9-D", tv(c) == in(D_omega, *m.target), c, detail(in(D_omega, *m.target)));
        break;
      case Formula::Kind::Tr:
        tally.record("C9-T", tv(c) == tv(*m.target), c, detail(tv(*m.target)));
        break;
      case Formula::Kind::Not:
        tally.record("C9-NEG", tv(c) == !tv(ch[0]), c, detail(!tv(ch[0])));
        break;
      case Formula::Kind::And: {
        bool v = tv(ch[0]) && tv(ch[1]);
        tally.record("C9-AND", tv(c) == v, c, detail(v));
        break;
      }
      case Formula::Kind::Or: {
        bool v = tv(ch[0]) || tv(ch[1]);
        tally.record("C9-OR", tv(c) == v, c, detail(v));
        break;
      }
      case Formula::Kind::Forall: {
        bool v = std::all_of(ch.begin(), ch.end(), tv);
        tally.record("C9-ALL", tv(c) == v, c, detail(v));
        break;
      }
      case Formula::Kind::Exists: {
        bool v = std::any_of(ch.begin(), ch.end(), tv);
        tally.record("C9-EX", tv(c) == v, c, detail(v));
        break;
      }
    }
  }
  check_groups(tally, "C9-REG", U, only, tv);
  return report;
}

AxiomReport check_compat(const TruthTable& t_final, const CodeSet& T_omega, const CodeSet& D_omega,
                         Focus only) {
  AxiomReport report;
  Tally tally(report, {"COMPAT"});
  for (Code c : D_omega) {
    if (!focused(only, c)) continue;
    auto it = t_final.find(c);
    bool tf = it != t_final.end() && it->second;
    tally.record("COMPAT", tf == in(T_omega, c), c, [&] {
      return std::to_string(c) + " in D_omega: t_final=" + yes_no(tf) + ", T_omega=" + yes_no(in(T_omega, c));
    });
  }
  return report;
}

AxiomReport check_limits(const StageTrace& trace) {
  AxiomReport report;
  Tally tally(report, {"LIMIT-D", "LIMIT-T"});
  auto [D, T] = limit_sets(trace);
  auto first_diff = [](const CodeSet& a, const CodeSet& b) -> std::optional<Code> {
    CodeSet diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(diff, diff.end()));
    if (diff.empty()) return std::nullopt;
    return *diff.begin();
  };
  auto dd = first_diff(D, trace.D_omega);
  tally.record("LIMIT-D", !dd, dd, [&] {
    return std::to_string(*dd) + " differs between D_omega and the union of the stages";
  });
  auto td = first_diff(T, trace.T_omega);
  tally.record("LIMIT-T", !td, td, [&] {
    return std::to_string(*td) + " differs between T_omega and the union of T_i ∩ D_i";
  });
  return report;
}

AxiomReport check_pipeline(const StageTrace& trace, const TruthTable& t_final, const Universe& U) {
  AxiomReport report;
  report.merge(check_limits(trace));
  report.merge(check_monotonicity(trace));
  report.merge(check_fixpoint(trace.D_omega, trace.T_omega, U));
  report.merge(check_partial_comp(trace.D_omega, trace.T_omega, U));
  report.merge(check_compat(t_final, trace.T_omega, trace.D_omega));
  report.merge(check_ct_minus(trace.D_omega, trace.T_omega, t_final, U));
  report.merge(check_cd_axioms(trace.D_omega, t_final, U));
  return report;
}

}  // namespace cdwb
