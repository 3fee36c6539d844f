// Cylinder measures: masses checked against direct definitional formulas,
// plus the resolution, equivalence, and preservation operations.
#include <doctest.h>

#include <random>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/errors.hpp"
#include "cantor/measure.hpp"
#include "cantor/transducer.hpp"

using namespace cantor;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen(0x3ea52e11);
  return gen;
}

Word random_word(std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> bit(0, 1);
  Word w;
  std::size_t n = len(rng());
  for (std::size_t i = 0; i < n; ++i) w.push_back(static_cast<char>('0' + bit(rng())));
  return w;
}

Rational bernoulli_mass(const Rational& p, const Word& w) {
  Rational mass = 1;
  for (char c : w) mass *= c == '0' ? p : Rational(1) - p;
  return mass;
}

Rational markov_mass(const std::array<Rational, 2>& init,
                     const std::array<std::array<Rational, 2>, 2>& rows, const Word& w) {
  if (w.empty()) return 1;
  Rational mass = init[w[0] - '0'];
  for (std::size_t i = 1; i < w.size(); ++i) mass *= rows[w[i - 1] - '0'][w[i] - '0'];
  return mass;
}

Rational table_mass(std::size_t depth, const std::vector<Rational>& weights,
                    const Rational& tail_p, const Word& w) {
  if (w.size() >= depth) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < depth; ++i) idx = idx * 2 + (w[i] - '0');
    return weights[idx] * bernoulli_mass(tail_p, w.substr(depth));
  }
  // Sum the masses of all depth cylinders under w.
  std::size_t lo = 0;
  for (char c : w) lo = lo * 2 + (c - '0');
  std::size_t span = std::size_t{1} << (depth - w.size());
  Rational mass = 0;
  for (std::size_t i = lo * span; i < (lo + 1) * span; ++i) mass += weights[i];
  return mass;
}

Word word_of(std::size_t bits, std::size_t len) {
  Word w(len, '0');
  for (std::size_t i = 0; i < len; ++i)
    if (bits >> (len - 1 - i) & 1) w[i] = '1';
  return w;
}

const Rational kThird = Rational(1) / 3;

}  // namespace

TEST_CASE("bernoulli masses match the product formula") {
  auto m = CylinderMeasure::bernoulli(kThird);
  CHECK(m.total() == 1);
  CHECK(m.cylinder_mass("") == 1);
  CHECK(m.cylinder_mass("0") == kThird);
  CHECK(m.cylinder_mass("00") == Rational(1) / 9);
  CHECK(m.cylinder_mass("11") == Rational(4) / 9);
  for (int t = 0; t < 200; ++t) {
    Word w = random_word(12);
    CHECK(m.cylinder_mass(w) == bernoulli_mass(kThird, w));
  }
  CHECK_THROWS_AS(CylinderMeasure::bernoulli(Rational(0)), InvalidInput);
  CHECK_THROWS_AS(CylinderMeasure::bernoulli(Rational(1)), InvalidInput);
  CHECK_THROWS_AS(CylinderMeasure::bernoulli(Rational(3) / 2), InvalidInput);
  CHECK_THROWS_AS(CylinderMeasure::bernoulli(kThird, Rational(0)), InvalidInput);
}

TEST_CASE("markov masses match the chain formula") {
  std::array<Rational, 2> init{Rational(2) / 5, Rational(3) / 5};
  std::array<std::array<Rational, 2>, 2> rows{{{Rational(1) / 4, Rational(3) / 4},
                                               {Rational(2) / 3, kThird}}};
  auto m = CylinderMeasure::markov(init, rows);
  CHECK(m.cylinder_mass("0") == init[0]);
  CHECK(m.cylinder_mass("01") == init[0] * rows[0][1]);
  CHECK(m.cylinder_mass("010") == init[0] * rows[0][1] * rows[1][0]);
  for (int t = 0; t < 200; ++t) {
    Word w = random_word(12);
    CHECK(m.cylinder_mass(w) == markov_mass(init, rows, w));
  }
  CHECK_THROWS_AS(CylinderMeasure::markov({Rational(1) / 2, Rational(1) / 3}, rows),
                  InvalidInput);
  CHECK_THROWS_AS(
      CylinderMeasure::markov(init, {{{Rational(1), Rational(0)}, {kThird, Rational(2) / 3}}}),
      InvalidInput);
}

TEST_CASE("table masses match their entries and tail") {
  std::vector<Rational> weights{Rational(1) / 5, Rational(3) / 10, Rational(1) / 4,
                                Rational(1) / 4};
  auto m = CylinderMeasure::table(2, weights, Rational(1) / 2);
  CHECK(m.total() == 1);
  CHECK(m.cylinder_mass("00") == Rational(1) / 5);
  CHECK(m.cylinder_mass("0") == Rational(1) / 2);
  CHECK(m.cylinder_mass("1") == Rational(1) / 2);
  CHECK(m.cylinder_mass("001") == Rational(1) / 10);
  for (int t = 0; t < 200; ++t) {
    Word w = random_word(10);
    CHECK(m.cylinder_mass(w) == table_mass(2, weights, Rational(1) / 2, w));
  }

  // Unbalanced totals are allowed and reported.
  auto heavy = CylinderMeasure::table(1, {Rational(3), Rational(1)}, kThird);
  CHECK(heavy.total() == 4);
  CHECK(heavy.cylinder_mass("0") == 3);
  CHECK(heavy.cylinder_mass("01") == Rational(2));

  CHECK_THROWS_AS(CylinderMeasure::table(2, {Rational(1), Rational(1)}, kThird), InvalidInput);
  CHECK_THROWS_AS(CylinderMeasure::table(1, {Rational(0), Rational(1)}, kThird), InvalidInput);
}

TEST_CASE("masses are additive") {
  std::vector<CylinderMeasure> corpus{
      CylinderMeasure::bernoulli(Rational(1) / 2), CylinderMeasure::bernoulli(kThird),
      CylinderMeasure::markov({Rational(2) / 5, Rational(3) / 5},
                              {{{Rational(1) / 4, Rational(3) / 4},
                                {Rational(2) / 3, kThird}}}),
      CylinderMeasure::table(2,
                             {Rational(1) / 5, Rational(3) / 10, Rational(1) / 4,
                              Rational(1) / 4},
                             Rational(1) / 2)};
  for (const auto& m : corpus) {
    for (int t = 0; t < 100; ++t) {
      Word w = random_word(8);
      CHECK(m.cylinder_mass(w) == m.cylinder_mass(w + "0") + m.cylinder_mass(w + "1"));
      auto a = ClopenSet::canonical({random_word(6), random_word(6)});
      CHECK(clopen_mass(m, a) + clopen_mass(m, set_complement(a)) == m.total());
      auto b = ClopenSet::canonical({random_word(6)});
      CHECK(clopen_mass(m, set_union(a, b)) + clopen_mass(m, set_intersection(a, b)) ==
            clopen_mass(m, a) + clopen_mass(m, b));
    }
  }
}

TEST_CASE("scaling multiplies every mass") {
  auto m = CylinderMeasure::bernoulli(kThird);
  auto s = scale(m, Rational(3) / 2);
  CHECK(s.total() == Rational(3) / 2);
  for (int t = 0; t < 50; ++t) {
    Word w = random_word(8);
    CHECK(s.cylinder_mass(w) == m.cylinder_mass(w) * Rational(3) / 2);
  }
  auto tbl = CylinderMeasure::table(1, {kThird, Rational(2) / 3}, Rational(1) / 2);
  auto st = scale(tbl, 2);
  CHECK(st.param_weights() == std::vector<Rational>{Rational(2) / 3, Rational(4) / 3});
  CHECK(st.cylinder_mass("0") == Rational(2) / 3);
  CHECK_THROWS_AS(scale(m, Rational(0)), InvalidInput);
  CHECK_THROWS_AS(scale(m, Rational(-1)), InvalidInput);
}

TEST_CASE("largest depth mass by dynamic programming equals brute force") {
  std::vector<CylinderMeasure> corpus{
      CylinderMeasure::bernoulli(Rational(1) / 2), CylinderMeasure::bernoulli(Rational(1) / 5),
      CylinderMeasure::markov({Rational(2) / 5, Rational(3) / 5},
                              {{{Rational(1) / 4, Rational(3) / 4},
                                {Rational(2) / 3, kThird}}}),
      CylinderMeasure::table(2,
                             {Rational(7) / 10, Rational(1) / 10, Rational(1) / 10,
                              Rational(1) / 10},
                             Rational(1) / 2)};
  for (const auto& m : corpus)
    for (std::size_t n = 0; n <= 9; ++n) {
      Rational brute = 0;
      for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
        Rational mass = m.cylinder_mass(word_of(bits, n));
        if (mass > brute) brute = mass;
      }
      CHECK(max_mass_at_depth(m, n) == brute);
    }
}

TEST_CASE("resolution depth is the least depth under the threshold") {
  auto half = CylinderMeasure::bernoulli(Rational(1) / 2);
  auto r = delta_for_epsilon(half, Rational(1) / 2);
  CHECK(r.depth == 2);
  CHECK(r.delta == Rational(1) / 4);
  CHECK(delta_for_epsilon(half, Rational(2)).depth == 0);
  CHECK(delta_for_epsilon(half, Rational(2)).delta == 1);
  CHECK(delta_for_epsilon(half, Rational(1)).depth == 1);

  auto third = CylinderMeasure::bernoulli(kThird);
  CHECK(delta_for_epsilon(third, Rational(1) / 2).depth == 2);

  auto lop = CylinderMeasure::table(
      2, {Rational(7) / 10, Rational(1) / 10, Rational(1) / 10, Rational(1) / 10},
      Rational(1) / 2);
  CHECK(delta_for_epsilon(lop, Rational(1) / 5).depth == 4);

  CHECK_THROWS_AS(delta_for_epsilon(half, Rational(0)), InvalidInput);

  // Minimality against the dynamic programming bound.
  const std::vector<Rational> thresholds{Rational(1) / 3, Rational(1) / 7, Rational(1) / 64};
  for (const auto& m : {half, third, lop})
    for (const Rational& eps : thresholds) {
      auto res = delta_for_epsilon(m, eps);
      CHECK(max_mass_at_depth(m, res.depth) < eps);
      if (res.depth > 0) CHECK(max_mass_at_depth(m, res.depth - 1) >= eps);
    }
}

TEST_CASE("conditional equivalence of measure states") {
  auto half = CylinderMeasure::bernoulli(Rational(1) / 2);
  auto third = CylinderMeasure::bernoulli(kThird);
  CHECK(conditionally_equivalent(half, half.root(), half, half.root()));
  CHECK_FALSE(conditionally_equivalent(half, half.root(), third, third.root()));

  // A uniform table is the fair coin in disguise.
  auto uniform = CylinderMeasure::table(
      2, {Rational(1) / 4, Rational(1) / 4, Rational(1) / 4, Rational(1) / 4},
      Rational(1) / 2);
  CHECK(conditionally_equivalent(uniform, uniform.root(), half, half.root()));
  CHECK(same_measure(uniform, half));

  // A chain with equal rows forgets its memory.
  auto chain = CylinderMeasure::markov({kThird, Rational(2) / 3},
                                       {{{kThird, Rational(2) / 3}, {kThird, Rational(2) / 3}}});
  CHECK(same_measure(chain, third));

  // Same conditionals, different totals.
  CHECK_FALSE(same_measure(half, scale(half, 2)));
  CHECK(conditionally_equivalent(half, half.root(), scale(half, 2), half.root()));

  // Table states over different prefixes can disagree.
  auto lop = CylinderMeasure::table(
      2, {Rational(1) / 5, Rational(3) / 10, Rational(1) / 4, Rational(1) / 4},
      Rational(1) / 2);
  CHECK_FALSE(conditionally_equivalent(lop, lop.node_at("0"), lop, lop.node_at("1")));
  CHECK(conditionally_equivalent(lop, lop.node_at("00"), lop, lop.node_at("11")));
}

TEST_CASE("preservation checks push masses through the map") {
  auto fold = TransducerMap::fold_map();
  auto half = CylinderMeasure::bernoulli(Rational(1) / 2);
  auto third = CylinderMeasure::bernoulli(kThird);

  auto ok = check_preserves(fold, half, half, 12);
  CHECK(ok.preserved);
  CHECK(ok.depth == 12);

  auto bad = check_preserves(fold, third, third, 4);
  CHECK_FALSE(bad.preserved);
  CHECK(bad.word == "0");
  CHECK(bad.lhs == Rational(5) / 9);
  CHECK(bad.rhs == kThird);

  auto mixed = check_preserves(TransducerMap::identity_map(), third, half, 4);
  CHECK_FALSE(mixed.preserved);
  CHECK(mixed.word == "0");
  CHECK(mixed.lhs == kThird);
  CHECK(mixed.rhs == Rational(1) / 2);

  // Flipping the first bit sends p to 1-p at depth one but not beyond.
  auto flip = TransducerMap::first_bit_flip_map();
  auto two_thirds = CylinderMeasure::bernoulli(Rational(2) / 3);
  CHECK(check_preserves(flip, third, two_thirds, 1).preserved);
  auto deeper = check_preserves(flip, third, two_thirds, 2);
  CHECK_FALSE(deeper.preserved);
  CHECK(deeper.word == "00");
  CHECK(deeper.lhs == Rational(2) / 9);
  CHECK(deeper.rhs == Rational(4) / 9);

  // Totals are compared via the empty word.
  auto scaled = check_preserves(TransducerMap::identity_map(), half, scale(half, 2), 3);
  CHECK_FALSE(scaled.preserved);
  CHECK(scaled.word == "");
  CHECK(scaled.lhs == 1);
  CHECK(scaled.rhs == 2);

  CHECK(check_preserves(flip, half, half, 10).preserved);
}
