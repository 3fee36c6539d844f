// measure_algebra.hpp -- the algebra of clopen sets modulo mass: its
// symmetric-difference metric, interval models built level by level, and
// matched refinement towers transporting the algebra across a map
#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/interval_set.hpp"
#include "cantor/measure.hpp"
#include "cantor/rational.hpp"
#include "cantor/transducer.hpp"

namespace cantor {

// Mass of the symmetric difference: the pseudometric in which two clopen
// sets are close when they differ by little mass.
Rational boolean_distance(const CylinderMeasure& m, const ClopenSet& a, const ClopenSet& b);

// Cylinders in breadth-first order: [0], [1], [00], [01], [10], [11], ...
std::vector<ClopenSet> cylinder_generators(std::size_t count);

// Level n of the tower partitions the space by the first n generators, then
// keeps splitting (first oversized cell in order; a multi-word cell sheds its
// first cylinder, a single cylinder splits in half) until every cell has
// mass at most 1/n. Cells are matched with adjacent subintervals of [0, 1]
// in cell order, nested inside the parent cell's interval, each of length
// exactly the cell's mass.
struct TowerLevel {
  ClopenPartition partition;
  std::vector<std::pair<Rational, Rational>> spans;  // parallel to partition.cells()
};
struct CaratheodoryTower {
  CylinderMeasure measure;
  std::vector<ClopenSet> generators;
  std::vector<TowerLevel> levels;  // levels[k]: level k+1, refined by generators 0..k
};
// Requires a normalized measure (total 1) and at least one level. Empty
// `generators` picks cylinder_generators(levels); a supplied list must cover
// every requested level.
CaratheodoryTower caratheodory_tower(const CylinderMeasure& m, std::size_t levels,
                                     std::vector<ClopenSet> generators = {});

// The interval picture of a clopen set that is a union of cells of the given
// level (1-based); WitnessedFailure (with a straddling cell's first word)
// when it is not such a union. interval_realize uses the deepest level.
IntervalSet realize_at_level(const CaratheodoryTower& t, std::size_t level, const ClopenSet& a);
IntervalSet interval_realize(const CaratheodoryTower& t, const ClopenSet& a);

// How differently two towers over the same generator sequence place their
// generators: max over shared levels n of length(sym_diff of the two interval
// pictures of generator n at level n) / n.
Rational tower_distance(const CaratheodoryTower& s, const CaratheodoryTower& t);

// Partition of the preimage of p's ambient by the preimages of its cells;
// WitnessedFailure (naming the cell's first word) if some cell's preimage is
// empty.
ClopenPartition algebra_pullback(const TransducerMap& f, const ClopenPartition& p);

// A tower of matched (domain cell, range cell, interval) triples where the
// domain cell's mu-mass, the range cell's nu-mass, and the interval's length
// all agree, and children occupy adjacent subintervals of their parent's
// interval. Level 0 partitions the range side by the given generator sets
// and the domain side by their exact preimages under f; each further level
// splits a range cell canonically (first cylinder out of a multi-word cell,
// halves of a single cylinder) and carves a matching-mass domain piece out
// of the matched cell, the second child taking the remainder. Both measures
// must be normalized and f must push mu to nu through the generators' depth
// (WitnessedFailure otherwise); `found` is false when some carve exceeds the
// word budget, with the levels built so far retained.
struct MatchedCell {
  ClopenSet domain;
  ClopenSet range;
  std::pair<Rational, Rational> span;

  bool operator==(const MatchedCell&) const = default;
};
struct MatchedLevel {
  std::vector<MatchedCell> cells;
};
struct MatchedTower {
  bool found = false;
  CylinderMeasure mu, nu;
  std::vector<MatchedLevel> levels;  // levels[k]: 2^k children per level-0 cell
  std::size_t budget = 0;
  std::string note;
};
MatchedTower approx_algebra_iso(const TransducerMap& f, const CylinderMeasure& mu,
                                const CylinderMeasure& nu,
                                const std::vector<ClopenSet>& generators,
                                std::size_t extra_levels, std::size_t budget = 0);

// Transport of a clopen set through the matched level: the union of domain
// cells whose range cells meet b, plus the nu-mass of the overhang (what
// those range cells cover beyond b).
struct TowerEvaluation {
  ClopenSet image;
  Rational error_bound;
};
TowerEvaluation evaluate_matched_tower(const MatchedTower& t, const ClopenSet& b,
                                       std::size_t level);

}  // namespace cantor
