#include "cantor/interval_set.hpp"

#include <algorithm>

#include "cantor/errors.hpp"

namespace cantor {

IntervalSet IntervalSet::make(std::vector<Interval> intervals) {
  for (const auto& [lo, hi] : intervals)
    if (lo > hi) throw InvalidInput("interval endpoints out of order");
  std::sort(intervals.begin(), intervals.end());
  IntervalSet r;
  for (auto& iv : intervals) {
    if (iv.first == iv.second) continue;
    if (!r.intervals_.empty() && iv.first <= r.intervals_.back().second) {
      if (iv.second > r.intervals_.back().second)
        r.intervals_.back().second = std::move(iv.second);
    } else {
      r.intervals_.push_back(std::move(iv));
    }
  }
  return r;
}

IntervalSet IntervalSet::segment(const Rational& lo, const Rational& hi) {
  return make({{lo, hi}});
}

Rational IntervalSet::length() const {
  Rational len = 0;
  for (const auto& [lo, hi] : intervals_) len += hi - lo;
  return len;
}

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<IntervalSet::Interval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return IntervalSet::make(std::move(all));
}

IntervalSet interval_intersection(const IntervalSet& a, const IntervalSet& b) {
  std::vector<IntervalSet::Interval> out;
  std::size_t i = 0, j = 0;
  while (i < a.intervals().size() && j < b.intervals().size()) {
    const auto& [alo, ahi] = a.intervals()[i];
    const auto& [blo, bhi] = b.intervals()[j];
    Rational lo = std::max(alo, blo);
    Rational hi = std::min(ahi, bhi);
    if (lo < hi) out.emplace_back(lo, hi);
    (ahi < bhi ? i : j) += 1;
  }
  return IntervalSet::make(std::move(out));
}

IntervalSet interval_difference(const IntervalSet& a, const IntervalSet& b) {
  std::vector<IntervalSet::Interval> out;
  std::size_t j = 0;
  for (const auto& [alo, ahi] : a.intervals()) {
    Rational cursor = alo;
    while (j < b.intervals().size() && b.intervals()[j].second <= cursor) ++j;
    std::size_t k = j;
    while (k < b.intervals().size() && b.intervals()[k].first < ahi) {
      const auto& [blo, bhi] = b.intervals()[k];
      if (blo > cursor) out.emplace_back(cursor, blo);
      if (bhi >= ahi) {
        cursor = ahi;
        break;
      }
      cursor = bhi;
      ++k;
    }
    if (cursor < ahi) out.emplace_back(cursor, ahi);
  }
  return IntervalSet::make(std::move(out));
}

IntervalSet interval_sym_diff(const IntervalSet& a, const IntervalSet& b) {
  return interval_union(interval_difference(a, b), interval_difference(b, a));
}

}  // namespace cantor
