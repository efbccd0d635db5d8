#pragma once

#include "cdwb/syntax.hpp"

#include <cstddef>
#include <vector>

namespace cdwb {

using Value = Natural;

/// Evaluation bounds. Any intermediate value above value_cap raises OverflowError.
struct ArithLimits {
  Value value_cap = 1'000'000'000;
};

/// Value of a closed term. Throws OpenTermError on variables or unresolved
/// quotes, OverflowError past the cap.
Value value_closed(const TermPtr& t, const ArithLimits& limits = {});

/// Value of t under alpha. Throws OpenTermError when a variable of t is
/// missing from alpha.
Value value_assign(const TermPtr& t, const Assignment& alpha, const ArithLimits& limits = {});

/// Syntactically distinct closed terms of value n with size() <= budget: the
/// numeral first, then a sum split, a successor form and product forms. At least
/// three are produced for every n when budget >= 5.
std::vector<TermPtr> term_variants(Value n, std::size_t budget);

/// Replaces every maximal closed subterm by the numeral of its value. Two
/// formulas differ only by equal-valued closed terms iff their collapsed forms
/// coincide.
FormulaPtr collapse_closed_terms(const FormulaPtr& f, const ArithLimits& limits = {});

}  // namespace cdwb
