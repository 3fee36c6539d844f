// measure.hpp -- finitely presented Borel measures on the binary sequence
// space: every cylinder gets an exact rational mass, computed from a finite
// automaton of conditional branch weights
#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/rational.hpp"
#include "cantor/transducer.hpp"

namespace cantor {

// mass([w]) = total * product of branch weights along w, starting from the
// root node. Branch weights are strictly between 0 and 1 and sum to 1 per
// node, so the measure has full support and no atoms; total > 0 is the mass
// of the whole space.
class CylinderMeasure {
 public:
  enum class Kind { Bernoulli, Markov, Table };

  // P(next bit = 0) = p at every position.
  static CylinderMeasure bernoulli(const Rational& p, const Rational& total = 1);
  // First bit by `initial`, later bits conditioned on their predecessor.
  static CylinderMeasure markov(const std::array<Rational, 2>& initial,
                                const std::array<std::array<Rational, 2>, 2>& rows,
                                const Rational& total = 1);
  // Arbitrary positive masses on the depth-`depth` cylinders (all 2^depth of
  // them, lex order), extended past that depth by a bernoulli(tail_p) tail.
  // The total is the sum of the masses.
  static CylinderMeasure table(std::size_t depth, const std::vector<Rational>& weights,
                               const Rational& tail_p);

  Kind kind() const { return kind_; }
  const Rational& total() const { return total_; }

  std::size_t node_count() const { return nodes_.size(); }
  int root() const { return root_; }
  const Rational& node_weight(int node, int bit) const { return nodes_[node].weight[bit]; }
  int node_next(int node, int bit) const { return nodes_[node].next[bit]; }
  // Node governing the bit after `w`.
  int node_at(const Word& w) const;

  Rational cylinder_mass(const Word& w) const;
  // Construction parameters, as needed to reproduce the measure: p / tail
  // probability, markov data, table masses (scaled along with the measure).
  const Rational& param_p() const { return param_p_; }
  const std::array<Rational, 2>& param_initial() const { return param_initial_; }
  const std::array<std::array<Rational, 2>, 2>& param_rows() const { return param_rows_; }
  std::size_t param_depth() const { return param_depth_; }
  const std::vector<Rational>& param_weights() const { return param_weights_; }

 private:
  friend CylinderMeasure scale(const CylinderMeasure& m, const Rational& factor);

  struct Node {
    std::array<Rational, 2> weight;
    std::array<int, 2> next{-1, -1};
  };
  Kind kind_ = Kind::Bernoulli;
  std::vector<Node> nodes_;
  int root_ = 0;
  Rational total_ = 1;

  Rational param_p_;
  std::array<Rational, 2> param_initial_;
  std::array<std::array<Rational, 2>, 2> param_rows_;
  std::size_t param_depth_ = 0;
  std::vector<Rational> param_weights_;
};

// Sum of the cylinder masses over the canonical antichain.
Rational clopen_mass(const CylinderMeasure& m, const ClopenSet& a);

// Same measure, total multiplied by factor > 0.
CylinderMeasure scale(const CylinderMeasure& m, const Rational& factor);

// Largest mass among the depth-n cylinders, by dynamic programming over
// nodes (no enumeration of the 2^n words).
Rational max_mass_at_depth(const CylinderMeasure& m, std::size_t n);

// Least depth n whose largest cylinder mass drops below eps, reported with
// delta = 2^-n: any cylinder of diameter <= delta has mass < eps.
struct MassResolution {
  std::size_t depth = 0;
  Rational delta;
};
MassResolution delta_for_epsilon(const CylinderMeasure& m, const Rational& eps);

// Do the two nodes induce identical conditional measures on the subtree in
// front of them? Decided by searching the reachable node pairs for a weight
// mismatch.
bool conditionally_equivalent(const CylinderMeasure& a, int node_a,
                              const CylinderMeasure& b, int node_b);

// Equal total mass and equivalent roots: the measures agree on every
// cylinder.
bool same_measure(const CylinderMeasure& a, const CylinderMeasure& b);

// Does f push mu forward to nu, as far as cylinders of depth <= `depth` can
// tell? Words are scanned by length then lexicographically, the empty word
// included; the first w with mu(f^-1[w]) != nu([w]) yields Violated with
// both masses.
struct PreservationCheck {
  bool preserved = false;
  std::size_t depth = 0;  // checked depth when preserved
  Word word;              // offending word otherwise
  Rational lhs, rhs;      // mass of the preimage vs direct mass
};
PreservationCheck check_preserves(const TransducerMap& f, const CylinderMeasure& mu,
                                  const CylinderMeasure& nu, std::size_t depth);

}  // namespace cantor
