// measure_values.hpp -- the set of masses a measure gives to clopen sets:
// enumeration to a depth, the subtraction-closure test, and searches for
// clopen sets realizing a prescribed mass inside a prescribed region
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/measure.hpp"
#include "cantor/rational.hpp"

namespace cantor {

// All masses of clopen sets whose antichain words have length <= depth
// (equivalently: sums over subsets of the depth-`depth` cylinders),
// ascending. The overload restricted to `ambient` sums only the depth
// cylinders contained in it.
std::vector<Rational> clopen_values(const CylinderMeasure& m, std::size_t depth);
std::vector<Rational> clopen_values(const CylinderMeasure& m, const ClopenSet& ambient,
                                    std::size_t depth);

// Is the depth-`depth` value set closed under differences? That is, for
// values s <= t, is t - s again a value? The first failure (s, t scanned
// ascending) is reported with gap = t - s.
struct GroupLikeCheck {
  bool holds = true;
  std::size_t depth = 0;
  Rational s, t, gap;
};
GroupLikeCheck group_like_check(const CylinderMeasure& m, std::size_t depth);

// Same closure test over an explicit value set (depth reported as 0). The
// largest element is taken as the total; 0 must be present, nothing may be
// negative. Closure under differences is scale-invariant, so the witnesses
// are reported in the input's own units.
GroupLikeCheck group_like_check(const std::vector<Rational>& values);

// A clopen subset of `within` of mass exactly `target`, with antichain
// words no longer than `budget`; nullopt when no such set exists in that
// search space. Deterministic: candidate cylinders are tried largest mass
// first (ties lexicographic), each included, split, or excluded, in that
// order. budget = 0 picks within.max_word_length() + table depth + 16.
std::optional<ClopenSet> find_clopen_subset(const CylinderMeasure& m, const ClopenSet& within,
                                            const Rational& target, std::size_t budget = 0);

// Hunts for a mass t and a cylinder B with mass(B) >= t such that no clopen
// subset of B realizes t: values scanned ascending over depth `value_depth`,
// B over cylinders of length <= `set_depth` (whole space first). On failure
// `witness` is a mass-t clopen set drawn from the whole space, showing t is
// genuinely a value.
struct GoodnessScan {
  bool good = true;
  std::size_t value_depth = 0, set_depth = 0;
  Rational t;
  ClopenSet region;   // the B with no mass-t subset
  ClopenSet witness;  // a mass-t set in the ambient space
};
GoodnessScan goodness_scan(const CylinderMeasure& m, std::size_t value_depth,
                           std::size_t set_depth, std::size_t budget = 0);

}  // namespace cantor
