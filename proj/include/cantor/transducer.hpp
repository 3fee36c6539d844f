// transducer.hpp -- letter-to-word transducers as continuous self-maps of
// the binary sequence space, plus prefix exchanges (clopen rearrangements)
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/rational.hpp"

namespace cantor {

// Finite-state machine reading one input bit at a time and emitting a
// (possibly empty) output word per step. Construction enforces: every
// (state, bit) pair has an arrow, every state is reachable (unreachable ones
// are pruned), and no reachable cycle is silent -- so infinite inputs yield
// infinite outputs and the machine denotes a continuous total map.
class TransducerMap {
 public:
  struct Arrow {
    Word emit;
    int next = -1;
  };

  static TransducerMap make(std::vector<std::string> state_names, int initial,
                            std::vector<std::array<Arrow, 2>> arrows);

  // The tent-like fold: 0x maps to x, 1x maps to the bitwise complement of x.
  static TransducerMap fold_map();
  static TransducerMap identity_map();
  static TransducerMap first_bit_flip_map();
  // Ignores its input and emits `bit` forever (not surjective).
  static TransducerMap constant_map(char bit);
  // Machine realizing rules (u -> v): inputs u z map to v z. The rule
  // sources must partition the whole space; outputs are unconstrained.
  static TransducerMap from_rules(const std::vector<std::pair<Word, Word>>& rules);

  std::size_t state_count() const { return arrows_.size(); }
  int initial() const { return initial_; }
  const Arrow& arrow(int state, int bit) const { return arrows_[state][bit]; }
  const std::string& state_name(int state) const { return state_names_[state]; }
  const std::vector<std::string>& state_names() const { return state_names_; }

  // Output emitted while consuming `input` from the initial state.
  Word evaluate(const Word& input) const;
  struct Run {
    int state;
    Word output;
  };
  Run run(const Word& input) const;

  std::size_t max_emit_length() const;

 private:
  std::vector<std::string> state_names_;
  int initial_ = 0;
  std::vector<std::array<Arrow, 2>> arrows_;
};

// A finite matching of source cylinders onto target cylinders: rules
// (u -> v) act by u z -> v z. Rule sources are pairwise incomparable, as are
// targets, so the exchange is a homeomorphism from the union of its sources
// onto the union of its targets. Rules are kept sorted by source word.
class PrefixExchange {
 public:
  static PrefixExchange make(std::vector<std::pair<Word, Word>> rules);

  const std::vector<std::pair<Word, Word>>& rules() const { return rules_; }
  const ClopenSet& source() const { return source_; }
  const ClopenSet& target() const { return target_; }
  PrefixExchange inverse() const;

  bool operator==(const PrefixExchange&) const = default;

 private:
  std::vector<std::pair<Word, Word>> rules_;
  ClopenSet source_, target_;
};

// Requires source and target to be the whole space.
TransducerMap from_prefix_exchange(const PrefixExchange& p);

// g after f: rules of the composite q(p(x)), defined when p's target equals
// q's source.
PrefixExchange compose(const PrefixExchange& p, const PrefixExchange& q);

// Exact preimage of a clopen set: a finite union of input cylinders.
ClopenSet preimage_clopen(const TransducerMap& f, const ClopenSet& a);

// h(x) = g(f(x)); f's emissions are fed through g eagerly, so the state
// space is the reachable part of the product.
TransducerMap compose(const TransducerMap& f, const TransducerMap& g);

// Supremum distance between two maps, resolved to `depth_bound` output bits.
// `exact` means some input cylinder (the witness) forces the outputs to
// first differ at position k+1 <= depth_bound, the sup is attained there,
// and value = 2^-k. Otherwise all outputs agree through depth_bound bits and
// value = 2^-depth_bound is only an upper bound.
struct SupDistance {
  bool exact = false;
  Rational value;
  std::optional<Word> witness;
  std::size_t depth_bound = 0;
};
SupDistance sup_distance(const TransducerMap& f, const TransducerMap& g,
                         std::size_t depth_bound);

// Decides whether the image meets every cylinder. `witness`, on the
// negative side, is a shortest (then lexicographically first) word whose
// cylinder the image misses entirely.
struct SurjectivityResult {
  bool surjective = true;
  Word witness;
};
SurjectivityResult surjectivity_decide(const TransducerMap& f);

// Injectivity by self-product simulation. Injective comes with separation
// moduli for n = 1..buffer_bound: entry (n, m) certifies that inputs
// differing somewhere in their first n bits have images differing in their
// first m bits (d(x,y) > 2^-n implies d(f(x),f(y)) > 2^-m). NotInjective
// comes with two eventually periodic inputs stem.loop^inf (distinct from
// the first divergence on) whose images coincide; the certifying loop
// revisits a product configuration with identical emitted output. Unknown
// is reported only when the pending-output buffer outgrows buffer_bound.
struct InjectivityResult {
  enum class Kind { Injective, NotInjective, Unknown };
  Kind kind = Kind::Unknown;
  struct Separation {
    std::size_t n;
    std::size_t m;
  };
  std::vector<Separation> separation;  // Injective only
  Word stem_a, loop_a, stem_b, loop_b;  // NotInjective only
  std::size_t buffer_bound = 0;
  std::string note;
};
InjectivityResult injectivity_certificate(const TransducerMap& f,
                                          std::size_t buffer_bound = 64);

}  // namespace cantor
