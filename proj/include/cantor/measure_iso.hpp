// measure_iso.hpp -- mass-preserving matchings between clopen regions, an
// approximate measure-respecting conjugacy builder, and a two-to-one folding
// map assembled from two such matchings
#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "cantor/clopen.hpp"
#include "cantor/measure.hpp"
#include "cantor/transducer.hpp"

namespace cantor {

// A prefix exchange from `a` onto `b` whose every rule u -> v satisfies
// mu([u]) = nu([v]) with identical conditional branch behavior past u and v,
// so the exchange carries mu restricted to `a` exactly onto nu restricted to
// `b`. Requires mu(a) = nu(b) and a, b nonempty (InvalidInput otherwise).
// Rule words are capped at `budget` per side (0 picks a default from the
// region depths); when no matching fits the cap the failure is reported, not
// papered over.
struct MeasureIso {
  bool found = false;
  PrefixExchange exchange;  // meaningful only when found
  std::size_t budget = 0;
  std::string note;
};
MeasureIso measure_clopen_iso(const CylinderMeasure& mu, const CylinderMeasure& nu,
                              const ClopenSet& a, const ClopenSet& b, std::size_t budget = 0);

// A homeomorphism within 2^-depth of f that carries mu onto nu exactly:
// each depth-`depth` output cylinder's preimage is matched onto the cylinder
// by measure_clopen_iso. Requires f to push mu to nu through depth `depth`
// (WitnessedFailure naming the offending word otherwise); the matching step
// reports failure through `found` like measure_clopen_iso.
struct ApproxMeasureHomeo {
  bool found = false;
  PrefixExchange exchange;
  SupDistance distance;
  std::size_t budget = 0;
  std::string note;
};
ApproxMeasureHomeo approx_measure_homeo(const TransducerMap& f, const CylinderMeasure& mu,
                                        const CylinderMeasure& nu, std::size_t depth,
                                        std::size_t budget = 0);

// A two-to-one map pushing mu forward to itself: the space is split into a
// half-mass clopen piece and its complement, and each piece is matched onto
// the whole space by a mass-doubling iso; the union of the two rule sets
// forms the machine. Throws BudgetExhausted when no clopen set of half the
// total mass exists within the search budget.
struct HalfFold {
  TransducerMap machine;
  ClopenSet half;  // the piece matched first
};
HalfFold half_fold(const CylinderMeasure& mu, std::size_t budget = 0);

}  // namespace cantor
