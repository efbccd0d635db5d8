#pragma once

// Satisfaction classes over (formula, assignment) pairs, syntactic similarity,
// determinately compositional pairs and the finite extension step that builds
// a compositional, regular class for a finite formula set.

#include "cdwb/checker.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cdwb {

struct SatEntry {
  Code formula = 0;
  Assignment assignment;

  auto operator<=>(const SatEntry&) const = default;
};

using SatSet = std::set<SatEntry>;

/// phi[alpha] with every maximal closed subterm replaced by the numeral of its
/// value.
FormulaPtr canonical_pair(const FormulaPtr& phi, const Assignment& alpha, const ArithLimits& limits = {});

bool similar(const FormulaPtr& a, const Assignment& alpha, const FormulaPtr& b, const Assignment& beta,
             const ArithLimits& limits = {});

/// Brute force over templates: every subset of the closed-subterm occurrences of
/// a[alpha] is tried as the set of holes, and b[beta] must fill each hole with
/// a closed term of the same value. Throws CapExceeded when a[alpha] has more
/// than size_bound closed-subterm occurrences.
bool similar_oracle(const FormulaPtr& a, const Assignment& alpha, const FormulaPtr& b,
                    const Assignment& beta, std::size_t size_bound, const ArithLimits& limits = {});

/// Formula codes of entries live in the sentence table; T(#c) and D(#c) point
/// at the entry (star(c), {}) only when c is one of the known sentences.
class SatContext {
public:
  SatContext(SentenceTable& table, CodeSet known, WitnessSet witnesses, ArithLimits limits = {});

  SentenceTable& table() const { return *table_; }
  const CodeSet& known() const { return known_; }
  const WitnessSet& witnesses() const { return witnesses_; }
  const ArithLimits& limits() const { return limits_; }

  Code add(const FormulaPtr& f) { return table_->intern(f); }
  const FormulaPtr& formula(Code c) const { return table_->decode(c); }

  /// Printed canonical_pair; entries are similar iff their keys coincide.
  const std::string& key(const SatEntry& e) const;
  /// Key of the entry a T/D atom with this target value refers to.
  std::optional<std::string> target_key(Value c) const;
  /// Direct-subformula entries, quantifier bodies under every witness.
  std::vector<SatEntry> children(const SatEntry& e) const;

private:
  SentenceTable* table_;
  CodeSet known_;
  WitnessSet witnesses_;
  ArithLimits limits_;
  mutable std::map<SatEntry, std::string> keys_;
  mutable std::map<Value, std::optional<std::string>> targets_;
};

/// Downward closure of the roots (sentences with the empty assignment, open
/// formulas under every assignment into the witnesses). Throws CapExceeded past
/// max_entries.
SatSet close_entries(SatContext& ctx, const std::vector<Code>& roots, std::size_t max_entries = 200'000);
SatSet close_entries(SatContext& ctx, const SatSet& seeds, std::size_t max_entries = 200'000);

struct SimClass {
  std::string key;
  FormulaPtr canonical;
  std::vector<SatEntry> members;
};

struct RankOrder {
  std::vector<SimClass> classes;   // ascending by rank, then key
  std::vector<std::size_t> rank;   // parallel to classes
  std::map<std::string, std::size_t> index;

  std::size_t rank_of(const std::string& key) const { return rank.at(index.at(key)); }
};

/// Partition by similarity, ranked by the longest chain of direct-subformula
/// steps below each class. Children are looked up among the given entries only.
RankOrder rank_order(const SatContext& ctx, const SatSet& entries);

/// D'1-D'6, R'1-R'2 and S1-S6 over the entries of the fragment.
AxiomReport check_det_comp(const SatContext& ctx, const SatSet& fragment, const SatSet& D, const SatSet& S);
/// Same, over the downward closure of D and S.
AxiomReport check_det_comp(SatContext& ctx, const SatSet& D, const SatSet& S);

struct DetCompPair {
  SatSet fragment;
  SatSet D;
  SatSet S;
};

/// The pair induced by a pipeline run: the fragment is the closure of the
/// translated members of U; D holds the extended determinate instances and S
/// those that are also true.
DetCompPair pair_from_pipeline(SatContext& ctx, const Universe& U, const CodeSet& D_omega,
                               const CodeSet& T_omega);

struct Generation {
  std::vector<Code> formulas;  // translated roots
  SatSet domain;
  SatSet truths;
  /// Entries made true by a T/D atom base clause but not by D0 ∩ S0.
  std::size_t atom_clause_only = 0;
};

/// Builds S over the closure of the translated gamma. Throws PreconditionError
/// when (D0, S0) is not determinately compositional on the fragment, and
/// CapExceeded when the closure is too large.
Generation ev_extend(SatContext& ctx, const DetCompPair& pair, const Generation* prev,
                     const std::vector<FormulaPtr>& gamma, std::size_t max_entries = 200'000);

/// Regularity, compositionality over the closure of the translated gamma,
/// compatibility with (D0, S0) and preservation of prev.
AxiomReport check_gamma(SatContext& ctx, const SatSet& S, const std::vector<FormulaPtr>& gamma,
                        const SatSet& D0, const SatSet& S0, const Generation* prev);

}  // namespace cdwb
