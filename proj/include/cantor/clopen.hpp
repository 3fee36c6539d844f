// clopen.hpp -- clopen subsets of the binary sequence space in canonical form
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cantor/rational.hpp"

namespace cantor {

// A word is a finite string over {'0','1'}; its leftmost character is
// coordinate 1 of a binary sequence. [w] denotes the cylinder of all
// sequences extending w.
using Word = std::string;

bool is_valid_word(const Word& w);
void require_word(const Word& w);  // throws InvalidInput
bool is_prefix(const Word& u, const Word& v);
std::size_t lcp_length(const Word& u, const Word& v);
Word flip_bits(const Word& w);

// A finite union of cylinders, held as its unique canonical antichain:
// prefix-free, sibling-merged (u0 and u1 never both present), sorted
// lexicographically -- which places shorter prefixes first. The empty list
// denotes the empty set; the single empty word denotes the whole space.
class ClopenSet {
 public:
  ClopenSet() = default;  // empty set

  static ClopenSet canonical(const std::vector<Word>& words);
  static ClopenSet whole();
  static ClopenSet cylinder(const Word& w);

  const std::vector<Word>& antichain() const { return antichain_; }
  bool empty() const { return antichain_.empty(); }
  bool is_whole() const;
  std::size_t max_word_length() const;

  // Membership of the eventually-constant point stem pad pad pad ...
  bool contains_eventual(const Word& stem, char pad = '0') const;

  bool operator==(const ClopenSet&) const = default;

 private:
  std::vector<Word> antichain_;
};

ClopenSet set_union(const ClopenSet& a, const ClopenSet& b);
ClopenSet set_intersection(const ClopenSet& a, const ClopenSet& b);
ClopenSet set_complement(const ClopenSet& a);
ClopenSet set_difference(const ClopenSet& a, const ClopenSet& b);
ClopenSet boolean_sum(const ClopenSet& a, const ClopenSet& b);
bool is_subset(const ClopenSet& a, const ClopenSet& b);
bool is_disjoint(const ClopenSet& a, const ClopenSet& b);

enum class BoolOp { Union, Intersection, Complement, BooleanSum };
// Complement ignores `b`.
ClopenSet boolean_op(BoolOp op, const ClopenSet& a, const ClopenSet& b = {});

// Diameter in the metric d(x, y) = 2^-(length of the longest common
// prefix): 2^-|w| for one cylinder, driven by the shallowest split point for
// a union. The empty set has diameter 0.
Rational diameter(const ClopenSet& a);

// A finite partition of a clopen ambient into nonempty, pairwise disjoint
// clopen cells covering it. Cells are kept sorted by their first antichain
// word. An empty ambient has no cells.
class ClopenPartition {
 public:
  static ClopenPartition make(ClopenSet ambient, std::vector<ClopenSet> cells);
  static ClopenPartition trivial(ClopenSet ambient);

  const ClopenSet& ambient() const { return ambient_; }
  const std::vector<ClopenSet>& cells() const { return cells_; }

  bool operator==(const ClopenPartition&) const = default;

 private:
  ClopenSet ambient_;
  std::vector<ClopenSet> cells_;
};

// Coarsest partition refining both arguments; throws InvalidInput when the
// ambients differ.
ClopenPartition common_refinement(const ClopenPartition& p, const ClopenPartition& q);

// Largest cell diameter (0 for a partition of the empty set).
Rational mesh(const ClopenPartition& p);

}  // namespace cantor
