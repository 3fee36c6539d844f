// homeo.hpp -- canonical cylinder matchings between clopen sets, and
// homeomorphism approximations of surjective machine maps
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/transducer.hpp"

namespace cantor {

// Refines the two antichains to a common word count: the shorter list
// repeatedly splits its first shortest word w into w0, w1. Both results
// stay sorted, pairwise incomparable, and denote the original sets.
std::pair<std::vector<Word>, std::vector<Word>> balance_antichains(const ClopenSet& a,
                                                                   const ClopenSet& b);

// The exchange pairing the balanced antichains of a and b in order: a
// homeomorphism from a onto b, canonical in that equal inputs always yield
// the same rule list. Nonempty sets only.
PrefixExchange canonical_clopen_homeo(const ClopenSet& a, const ClopenSet& b);

// A self-homeomorphism within 2^-depth of f, built cell by cell: the
// preimage of each depth-`depth` cylinder is matched canonically onto that
// cylinder. Throws WitnessedFailure (witness: the missed cylinder's word)
// when some preimage is empty, i.e. f is not surjective. `distance` is
// sup_distance(exchange, f) resolved one bit past `depth`, so it either
// pins the distance exactly or certifies it is below 2^-(depth+1).
struct ApproxHomeo {
  PrefixExchange exchange;
  SupDistance distance;
};
ApproxHomeo approx_homeo(const TransducerMap& f, std::size_t depth);

}  // namespace cantor
