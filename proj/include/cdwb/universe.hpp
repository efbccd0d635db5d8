#pragma once

#include "cdwb/arith.hpp"
#include "cdwb/syntax.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace cdwb {

using WitnessSet = std::set<Natural>;

struct Caps {
  std::size_t max_sentences = 10'000;
  Value max_value = 1'000'000'000;

  ArithLimits limits() const { return ArithLimits{max_value}; }
};

/// A sentence of the universe with its structural links resolved to codes.
struct Member {
  Code code = 0;
  FormulaPtr formula;
  /// Not: the negated sentence. And/Or: both sides. Forall/Exists: one instance
  /// per witness, in witness order.
  std::vector<Code> children;
  /// Tr/Det atoms: value of the argument term.
  std::optional<Value> target;
  /// Eq atoms: whether both sides have the same value.
  bool eq_holds = false;
};

/// Finite sentence set closed under direct subformulas (restricted to
/// sentences) and witness instances, together with the witness set W.
class Universe {
public:
  const std::vector<Member>& members() const { return members_; }
  const Member* find(Code c) const;
  bool contains(Code c) const { return find(c) != nullptr; }
  std::optional<Code> lookup(const FormulaPtr& f) const;
  const WitnessSet& witnesses() const { return witnesses_; }
  std::size_t size() const { return members_.size(); }
  const Caps& caps() const { return caps_; }
  std::set<Code> codes() const;

private:
  friend Universe build_universe(SentenceTable&, const std::vector<Code>&, const WitnessSet&,
                                 const Caps&);

  std::vector<Member> members_;  // sorted by code
  std::unordered_map<Code, std::size_t> index_;
  std::unordered_map<std::string, Code> by_key_;
  WitnessSet witnesses_;
  Caps caps_;
};

/// Builds the least closure of the seeds. W is {0..N} together with the codes of
/// the direct-subformula closure of the seeds; instances are then closed over
/// that W. Throws CapExceeded naming the sentence that crossed the cap.
Universe build_universe(SentenceTable& table, const std::vector<Code>& seeds, Natural witness_max,
                        const Caps& caps = {});

/// Closure of the seeds over an explicitly given witness set. Rebuilding from
/// u.codes() with u.witnesses() reproduces u.
Universe build_universe(SentenceTable& table, const std::vector<Code>& seeds,
                        const WitnessSet& witnesses, const Caps& caps = {});

/// One instance per witness, ordered by witness. Throws Error on a
/// non-quantified formula.
std::vector<FormulaPtr> instances(const FormulaPtr& f, const WitnessSet& witnesses);

}  // namespace cdwb
