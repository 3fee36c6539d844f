// measure_iso.cpp -- mass-preserving matchings and the maps built from them
#include "cantor/measure_iso.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "cantor/errors.hpp"
#include "cantor/measure_values.hpp"

namespace cantor {

namespace {

constexpr std::size_t kMatchStepCap = 1ul << 16;
constexpr std::size_t kApproxDepthCap = 20;

// A pending piece of the matching: two regions of equal mass, each a list of
// pairwise incomparable words. Kept as plain word lists so a cylinder can be
// split without the halves being merged back together.
struct Piece {
  std::vector<Word> src, dst;
};

Rational words_mass(const CylinderMeasure& m, const std::vector<Word>& words) {
  Rational sum(0);
  for (const Word& w : words) sum += m.cylinder_mass(w);
  return sum;
}

// Index of the largest-mass word (ties to the lexicographically first).
std::size_t pick_heaviest(const CylinderMeasure& m, const std::vector<Word>& words) {
  std::size_t best = 0;
  Rational best_mass = m.cylinder_mass(words[0]);
  for (std::size_t i = 1; i < words.size(); ++i) {
    const Rational mass = m.cylinder_mass(words[i]);
    if (mass > best_mass || (mass == best_mass && words[i] < words[best])) {
      best = i;
      best_mass = mass;
    }
  }
  return best;
}

std::vector<Word> without(const std::vector<Word>& words, std::size_t index) {
  std::vector<Word> rest;
  rest.reserve(words.size() - 1);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i != index) rest.push_back(words[i]);
  }
  return rest;
}

}  // namespace

MeasureIso measure_clopen_iso(const CylinderMeasure& mu, const CylinderMeasure& nu,
                              const ClopenSet& a, const ClopenSet& b, std::size_t budget) {
  if (a.empty() || b.empty()) throw InvalidInput("matching regions must be nonempty");
  if (clopen_mass(mu, a) != clopen_mass(nu, b)) {
    throw InvalidInput("matching regions must carry equal mass");
  }
  if (budget == 0) {
    budget = std::max(a.max_word_length(), b.max_word_length()) +
             std::max(mu.param_depth(), nu.param_depth()) + 16;
  }

  MeasureIso result;
  result.budget = budget;

  std::deque<Piece> work;
  work.push_back(Piece{a.antichain(), b.antichain()});
  std::vector<std::pair<Word, Word>> rules;
  std::size_t steps = 0;

  while (!work.empty()) {
    if (++steps > kMatchStepCap) throw ResourceLimit("matching worklist step limit");
    Piece piece = std::move(work.front());
    work.pop_front();

    if (piece.src.size() == 1 && piece.dst.size() == 1) {
      const Word& u = piece.src.front();
      const Word& v = piece.dst.front();
      if (conditionally_equivalent(mu, mu.node_at(u), nu, nu.node_at(v))) {
        rules.emplace_back(u, v);
        continue;
      }
      if (u.size() >= budget) {
        result.note = "no matching within the word budget (conditional mismatch at " + u +
                      " -> " + v + ")";
        return result;
      }
      Piece split;
      split.src = {u + '0', u + '1'};
      split.dst = {v};
      work.push_back(std::move(split));
      continue;
    }

    // Several words on a side: peel off the heaviest cylinder and carve a
    // region of the same mass out of the other side.
    const bool carve_dst = piece.src.size() > 1;
    const CylinderMeasure& pick_measure = carve_dst ? mu : nu;
    const CylinderMeasure& carve_measure = carve_dst ? nu : mu;
    std::vector<Word>& pick_words = carve_dst ? piece.src : piece.dst;
    std::vector<Word>& carve_words = carve_dst ? piece.dst : piece.src;

    const std::size_t heavy = pick_heaviest(pick_measure, pick_words);
    const Word heavy_word = pick_words[heavy];
    const Rational heavy_mass = pick_measure.cylinder_mass(heavy_word);
    const ClopenSet carve_region = ClopenSet::canonical(carve_words);
    const std::optional<ClopenSet> carved =
        find_clopen_subset(carve_measure, carve_region, heavy_mass, budget);

    if (carved) {
      Piece matched, remainder;
      const ClopenSet rest = set_difference(carve_region, *carved);
      if (carve_dst) {
        matched.src = {heavy_word};
        matched.dst = carved->antichain();
        remainder.src = without(pick_words, heavy);
        remainder.dst = rest.antichain();
      } else {
        matched.src = carved->antichain();
        matched.dst = {heavy_word};
        remainder.src = rest.antichain();
        remainder.dst = without(pick_words, heavy);
      }
      work.push_back(std::move(matched));
      if (!remainder.src.empty()) work.push_back(std::move(remainder));
      continue;
    }

    if (heavy_word.size() >= budget) {
      result.note = "no matching within the word budget (cannot carve mass " +
                    rational_str(heavy_mass) + " for " + heavy_word + ")";
      return result;
    }
    pick_words[heavy] = heavy_word + '0';
    pick_words.insert(pick_words.begin() + static_cast<std::ptrdiff_t>(heavy) + 1,
                      heavy_word + '1');
    work.push_back(std::move(piece));
  }

  result.found = true;
  result.exchange = PrefixExchange::make(std::move(rules));
  return result;
}

ApproxMeasureHomeo approx_measure_homeo(const TransducerMap& f, const CylinderMeasure& mu,
                                        const CylinderMeasure& nu, std::size_t depth,
                                        std::size_t budget) {
  if (depth > kApproxDepthCap) throw ResourceLimit("approximation depth too large");
  const PreservationCheck check = check_preserves(f, mu, nu, depth);
  if (!check.preserved) {
    throw WitnessedFailure("map does not carry the one measure to the other at the checked depth",
                           check.word);
  }

  ApproxMeasureHomeo result;
  result.budget = budget;
  std::vector<std::pair<Word, Word>> rules;
  const std::size_t cells = std::size_t{1} << depth;
  for (std::size_t i = 0; i < cells; ++i) {
    Word w;
    for (std::size_t b = depth; b-- > 0;) w += ((i >> b) & 1u) ? '1' : '0';
    const ClopenSet cell = ClopenSet::cylinder(w);
    const ClopenSet pre = preimage_clopen(f, cell);
    const MeasureIso piece = measure_clopen_iso(mu, nu, pre, cell, budget);
    if (!piece.found) {
      result.note = "cell " + w + ": " + piece.note;
      return result;
    }
    for (const auto& rule : piece.exchange.rules()) rules.push_back(rule);
  }

  result.found = true;
  result.exchange = PrefixExchange::make(std::move(rules));
  result.distance = sup_distance(from_prefix_exchange(result.exchange), f, depth + 1);
  return result;
}

HalfFold half_fold(const CylinderMeasure& mu, std::size_t budget) {
  const Rational half(mu.total() / 2);
  const std::optional<ClopenSet> first = find_clopen_subset(mu, ClopenSet::whole(), half, budget);
  if (!first) {
    throw BudgetExhausted("no clopen set of half the total mass within the search budget");
  }
  const ClopenSet second = set_complement(*first);
  const CylinderMeasure doubled = scale(mu, 2);

  std::vector<std::pair<Word, Word>> rules;
  for (const ClopenSet* part : {&*first, &second}) {
    const MeasureIso iso = measure_clopen_iso(doubled, mu, *part, ClopenSet::whole(), budget);
    if (!iso.found) {
      throw BudgetExhausted("no mass-doubling matching onto the whole space: " + iso.note);
    }
    for (const auto& rule : iso.exchange.rules()) rules.push_back(rule);
  }

  HalfFold result{TransducerMap::from_rules(rules), *first};
  return result;
}

}  // namespace cantor
