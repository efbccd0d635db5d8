#pragma once

// Stagewise construction of determinateness and truth predicates over a
// finite universe.

#include "cdwb/universe.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace cdwb {

using CodeSet = std::set<Code>;
using TruthTable = std::map<Code, bool>;

/// One step of the determinateness operator. Returns the members of U that
/// satisfy one of the clauses relative to (D, T). Questions about a negation
/// ~psi are answered by D(~psi) <=> psi in D and T(~psi) <=> psi not in T, so a
/// conjunct is "determinately false" when it is in D and not in T.
CodeSet d_operator(const CodeSet& D, const CodeSet& T, const Universe& U);

/// Classical truth of a sentence in the structure (N, D, T) with quantifiers
/// ranging over the witness set.
bool tarski_eval(const CodeSet& D, const CodeSet& T, const FormulaPtr& phi, const WitnessSet& W,
                 const ArithLimits& limits = {});

/// tarski_eval for every member of U, memoised over member children.
CodeSet tarski_members(const CodeSet& D, const CodeSet& T, const Universe& U);

struct Stage {
  std::size_t index = 0;
  CodeSet D;
  CodeSet T;
};

struct StageTrace {
  std::vector<Stage> stages;
  /// Index k with stage k+1 equal to stage k on (D, T ∩ D); the trace then ends
  /// at stage k+1.
  std::optional<std::size_t> fixpoint;
  CodeSet D_omega;
  CodeSet T_omega;
};

/// Iterates D_{i+1} = d_operator(D_i, T_i), T_{i+1} = tarski(D_i, T_i) from the
/// empty stage until a fixpoint or until max_stages stages past stage 0.
StageTrace run_stages(const Universe& U, std::size_t max_stages);

/// (union of D_i, union of T_i ∩ D_i) over the computed stages.
std::pair<CodeSet, CodeSet> limit_sets(const StageTrace& trace);

/// The final truth predicate: Tarskian truth over (D_omega, T_omega).
bool t_final(const CodeSet& D_omega, const CodeSet& T_omega, const FormulaPtr& phi,
             const WitnessSet& W, const ArithLimits& limits = {});

/// t_final tabulated over the members of U.
TruthTable t_final_table(const CodeSet& D_omega, const CodeSet& T_omega, const Universe& U);

/// Determinateness extended from D_omega to arbitrary sentences: members of U
/// answer by membership, other sentences by the operator clauses evaluated at
/// (D_omega, t_final).
bool extended_determinate(const FormulaPtr& phi, const Universe& U, const CodeSet& D_omega,
                          const CodeSet& T_omega);

}  // namespace cdwb
