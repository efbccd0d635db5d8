#pragma once

// Axiom and claim checkers with counterexample extraction. Every check is
// instantiated over the members of a universe; quantified clauses range over
// its witness set.

#include "cdwb/engine.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cdwb {

enum class Status { Pass, Fail, Vacuous };

const char* to_string(Status s);

struct Witness {
  std::optional<Code> phi;
  std::string detail;
};

struct AxiomResult {
  Status status = Status::Vacuous;
  std::size_t instances = 0;
  std::optional<Witness> witness;  // first failing instance
};

struct AxiomReport {
  std::map<std::string, AxiomResult> results;
  std::vector<std::string> notes;

  bool passed() const;  // no Fail entries
  std::vector<std::string> failures() const;
  void merge(const AxiomReport& other);
};

/// Restricts a check to the instances anchored at one sentence (or, for the
/// trace checks, one stage pair). Used to replay a reported witness.
using Focus = std::optional<Code>;

/// T1-T6, D1-D6, R1-R2 and the D5 form-equivalence check, with T a truth table
/// over the members of U.
AxiomReport check_cd_axioms(const CodeSet& D, const TruthTable& T, const Universe& U,
                            Focus only = std::nullopt);

/// Compositional clauses for Tprime relative to (D, T).
AxiomReport check_ct_minus(const CodeSet& D, const CodeSet& T, const TruthTable& Tprime,
                           const Universe& U, Focus only = std::nullopt);

/// D_k ⊆ D_n and D_k ∩ T_k = D_k ∩ T_n for all computed k <= n.
AxiomReport check_monotonicity(const StageTrace& trace);

/// d_operator(D_omega, T_omega) == D_omega.
AxiomReport check_fixpoint(const CodeSet& D_omega, const CodeSet& T_omega, const Universe& U,
                           Focus only = std::nullopt);

/// Compositional clauses for T_omega on the sentences of D_omega.
AxiomReport check_partial_comp(const CodeSet& D_omega, const CodeSet& T_omega, const Universe& U,
                               Focus only = std::nullopt);

/// For phi in D_omega: t_final(phi) iff phi in T_omega.
AxiomReport check_compat(const TruthTable& t_final, const CodeSet& T_omega, const CodeSet& D_omega,
                         Focus only = std::nullopt);

/// D_omega and T_omega equal the unions computed from the stages of the trace.
AxiomReport check_limits(const StageTrace& trace);

/// Every pipeline check over a trace: limits, monotonicity, fixpoint, partial
/// compositionality, compatibility, CT clauses for t_final and the axioms.
AxiomReport check_pipeline(const StageTrace& trace, const TruthTable& t_final, const Universe& U);

}  // namespace cdwb
