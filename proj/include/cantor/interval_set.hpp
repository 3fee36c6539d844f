// interval_set.hpp -- finite unions of closed rational intervals, normalized
// up to null sets: overlapping or touching intervals merge, degenerate ones
// vanish, so structural equality is equality almost everywhere
#pragma once

#include <utility>
#include <vector>

#include "cantor/rational.hpp"

namespace cantor {

class IntervalSet {
 public:
  using Interval = std::pair<Rational, Rational>;

  IntervalSet() = default;  // empty

  // Any list of [lo, hi] with lo <= hi; normalizes.
  static IntervalSet make(std::vector<Interval> intervals);
  static IntervalSet segment(const Rational& lo, const Rational& hi);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  Rational length() const;

  bool operator==(const IntervalSet&) const = default;

 private:
  std::vector<Interval> intervals_;
};

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet interval_intersection(const IntervalSet& a, const IntervalSet& b);
IntervalSet interval_difference(const IntervalSet& a, const IntervalSet& b);
IntervalSet interval_sym_diff(const IntervalSet& a, const IntervalSet& b);

}  // namespace cantor
