// acceptance.cpp -- end-to-end audit of the library against independent
// oracles: brute-force membership tables, forward evaluation, unrolled
// witness sequences, and re-verification of emitted certificates. Prints one
// verdict line per check and exits nonzero when any fails or overruns its
// time budget.
#include <algorithm>
#include <bitset>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cantor/cli.hpp"
#include "cantor/clopen.hpp"
#include "cantor/errors.hpp"
#include "cantor/homeo.hpp"
#include "cantor/interval_set.hpp"
#include "cantor/measure.hpp"
#include "cantor/measure_algebra.hpp"
#include "cantor/measure_iso.hpp"
#include "cantor/measure_values.hpp"
#include "cantor/rational.hpp"
#include "cantor/transducer.hpp"

namespace {

using namespace cantor;

// Collects failure descriptions; capped so a systematic breakage does not
// flood the report.
struct Audit {
  std::vector<std::string> failures;
  std::size_t dropped = 0;

  void require(bool ok, std::string what) {
    if (ok) return;
    if (failures.size() < 6) {
      failures.push_back(std::move(what));
    } else {
      ++dropped;
    }
  }
};

std::mt19937 rng_for(unsigned salt) { return std::mt19937(20260815u + salt); }

// Does some antichain word of s prefix w? Decides [w] subset-of s whenever w
// is at least as long as every antichain word.
bool word_in(const ClopenSet& s, const Word& w) {
  for (const Word& u : s.antichain()) {
    if (u.size() <= w.size() && w.compare(0, u.size(), u) == 0) return true;
  }
  return false;
}

// Random clopen set with antichain words no longer than cap: each node is
// included (1/6), excluded (1/6), or split (2/3), so typical sets mix a
// handful of words of assorted lengths; at the cap, a coin flip.
void random_clopen_words(std::mt19937& g, Word& w, std::size_t cap, std::vector<Word>& out) {
  const int roll = std::uniform_int_distribution<int>(0, 5)(g);
  if (w.size() == cap ? roll < 3 : roll == 0) {
    out.push_back(w);
    return;
  }
  if (w.size() == cap || roll == 1) return;
  for (char b : {'0', '1'}) {
    w.push_back(b);
    random_clopen_words(g, w, cap, out);
    w.pop_back();
  }
}

ClopenSet random_clopen(std::mt19937& g, std::size_t cap) {
  Word w;
  std::vector<Word> words;
  random_clopen_words(g, w, cap, words);
  return ClopenSet::canonical(words);
}

// Random complete antichain (the leaves of a random subdivision): always
// splits the root, then splits each node with probability 1/2 up to cap.
void random_complete_words(std::mt19937& g, Word& w, std::size_t cap, std::vector<Word>& out) {
  const bool split =
      w.size() < cap && (w.empty() || std::uniform_int_distribution<int>(0, 1)(g) == 0);
  if (!split) {
    out.push_back(w);
    return;
  }
  for (char b : {'0', '1'}) {
    w.push_back(b);
    random_complete_words(g, w, cap, out);
    w.pop_back();
  }
}

// Splits the first shortest word until the antichain has n leaves.
void grow_to(std::vector<Word>& words, std::size_t n) {
  while (words.size() < n) {
    const auto it = std::min_element(
        words.begin(), words.end(),
        [](const Word& a, const Word& b) { return a.size() < b.size(); });
    const Word w = *it;
    words.erase(it);
    words.push_back(w + '0');
    words.push_back(w + '1');
  }
}

PrefixExchange random_whole_exchange(std::mt19937& g, std::size_t cap) {
  Word w;
  std::vector<Word> src, dst;
  random_complete_words(g, w, cap, src);
  random_complete_words(g, w, cap, dst);
  grow_to(src, dst.size());
  grow_to(dst, src.size());
  std::shuffle(dst.begin(), dst.end(), g);
  std::vector<std::pair<Word, Word>> rules;
  rules.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) rules.emplace_back(src[i], dst[i]);
  return PrefixExchange::make(std::move(rules));
}

// The shared map corpus: the three named machines plus twenty composites of
// random whole-space exchanges. Every member is surjective.
std::vector<TransducerMap> map_corpus() {
  std::vector<TransducerMap> maps{TransducerMap::fold_map(), TransducerMap::identity_map(),
                                  TransducerMap::first_bit_flip_map()};
  std::mt19937 g = rng_for(100);
  for (int i = 0; i < 20; ++i) {
    const PrefixExchange p = random_whole_exchange(g, 3);
    const PrefixExchange q = random_whole_exchange(g, 3);
    maps.push_back(from_prefix_exchange(compose(p, q)));
  }
  return maps;
}

// --- check 1: boolean ops against the 256-word membership table ----------

void check_boolean_table(Audit& a) {
  std::vector<Word> leaves;
  leaves.reserve(256);
  for (int i = 0; i < 256; ++i) {
    Word w(8, '0');
    for (int j = 0; j < 8; ++j) {
      if (i & (1 << (7 - j))) w[j] = '1';
    }
    leaves.push_back(std::move(w));
  }
  const auto table = [&](const ClopenSet& s) {
    std::bitset<256> bits;
    for (int i = 0; i < 256; ++i) bits[i] = word_in(s, leaves[i]);
    return bits;
  };

  std::mt19937 g = rng_for(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const ClopenSet x = random_clopen(g, 8);
    const ClopenSet y = random_clopen(g, 8);
    const std::bitset<256> tx = table(x);
    const std::bitset<256> ty = table(y);
    const std::pair<BoolOp, std::bitset<256>> cases[] = {
        {BoolOp::Union, tx | ty},
        {BoolOp::Intersection, tx & ty},
        {BoolOp::BooleanSum, tx ^ ty},
        {BoolOp::Complement, ~tx},
    };
    for (const auto& [op, want] : cases) {
      const ClopenSet got = boolean_op(op, x, y);
      a.require(got.max_word_length() <= 8,
                "op result outgrew its inputs at trial " + std::to_string(trial));
      a.require(table(got) == want, "membership mismatch at trial " + std::to_string(trial));
    }
    const std::bitset<256> diff_want = tx & ~ty;
    a.require(table(set_difference(x, y)) == diff_want,
              "difference mismatch at trial " + std::to_string(trial));
  }
}

// --- check 2: preimages against forward evaluation ------------------------

void check_preimage_oracle(Audit& a) {
  const std::vector<TransducerMap> corpus = map_corpus();

  std::mt19937 g = rng_for(2);
  std::vector<ClopenSet> targets{ClopenSet::whole(), ClopenSet(), ClopenSet::cylinder("0"),
                                 ClopenSet::canonical({"00", "11"})};
  while (targets.size() < 9) targets.push_back(random_clopen(g, 4));

  std::vector<Word> inputs;
  inputs.reserve(4096);
  for (int i = 0; i < 4096; ++i) {
    Word w(12, '0');
    for (int j = 0; j < 12; ++j) {
      if (i & (1 << (11 - j))) w[j] = '1';
    }
    inputs.push_back(std::move(w));
  }

  for (std::size_t mi = 0; mi < corpus.size(); ++mi) {
    const TransducerMap& f = corpus[mi];
    std::vector<Word> outputs;
    outputs.reserve(inputs.size());
    for (const Word& w : inputs) outputs.push_back(f.evaluate(w));

    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
      const ClopenSet& t = targets[ti];
      const ClopenSet pre = preimage_clopen(f, t);
      const std::string where = " (map " + std::to_string(mi) + ", target " +
                                std::to_string(ti) + ")";
      a.require(pre.max_word_length() <= 12, "preimage deeper than 12" + where);
      for (std::size_t wi = 0; wi < inputs.size(); ++wi) {
        bool expected = false;
        if (!t.empty()) {
          if (outputs[wi].size() < t.max_word_length()) {
            a.require(false, "output too short to decide membership" + where);
            break;
          }
          expected = word_in(t, outputs[wi]);
        }
        if (word_in(pre, inputs[wi]) != expected) {
          a.require(false, "preimage disagrees at input " + inputs[wi] + where);
          break;
        }
      }
    }
  }
}

// --- check 3: invertible approximations of every corpus map ---------------

void check_dense_invertibles(Audit& a) {
  const std::vector<TransducerMap> corpus = map_corpus();
  for (std::size_t mi = 0; mi < corpus.size(); ++mi) {
    for (std::size_t n = 1; n <= 8; ++n) {
      const std::string where = " (map " + std::to_string(mi) + ", n " + std::to_string(n) + ")";
      const ApproxHomeo ah = approx_homeo(corpus[mi], n);
      a.require(ah.exchange.source().is_whole() && ah.exchange.target().is_whole(),
                "exchange is not a self-bijection" + where);
      const TransducerMap gm = from_prefix_exchange(ah.exchange);
      const SupDistance sd = sup_distance(gm, corpus[mi], n + 4);
      const Rational bound = pow2_inv(n);
      a.require(sd.value <= bound, "approximation farther than 2^-n" + where);
    }
  }

  const ApproxHomeo fold1 = approx_homeo(TransducerMap::fold_map(), 1);
  const std::vector<std::pair<Word, Word>> want{
      {"00", "00"}, {"01", "10"}, {"10", "11"}, {"11", "01"}};
  a.require(fold1.exchange.rules() == want, "pinned fold rules at n = 1 changed");
  const Rational half = parse_rational("1/2");
  a.require(fold1.distance.exact && fold1.distance.value == half,
            "pinned fold distance at n = 1 is not exactly 1/2");
}

// --- check 4: surjectivity / injectivity certificates ---------------------

// bit i of the sequence stem loop loop loop ...
char ep_bit(const Word& stem, const Word& loop, std::size_t i) {
  if (i < stem.size()) return stem[i];
  return loop[(i - stem.size()) % loop.size()];
}

// Decides equality of f's outputs on two eventually periodic inputs. The
// machine state at loop boundaries revisits within state_count() loops, so
// each output is eventually periodic with exactly computable transient and
// period; agreement through max transient + lcm of periods settles it.
bool images_agree(const TransducerMap& f, const Word& stem_a, const Word& loop_a,
                  const Word& stem_b, const Word& loop_b, std::string& why) {
  const auto feed = [&](int state, const Word& w) {
    std::size_t bits = 0;
    for (char c : w) {
      const TransducerMap::Arrow& ar = f.arrow(state, c - '0');
      bits += ar.emit.size();
      state = ar.next;
    }
    return std::pair<int, std::size_t>(state, bits);
  };
  struct Shape {
    std::size_t transient_bits, period_bits, transient_loops, period_loops;
  };
  const auto shape_of = [&](const Word& stem, const Word& loop, Shape& s) {
    auto [state, bits] = feed(f.initial(), stem);
    std::vector<int> seen_at(f.state_count(), -1);
    std::vector<std::size_t> bits_at(f.state_count(), 0);
    std::size_t loops = 0;
    while (seen_at[state] < 0) {
      seen_at[state] = static_cast<int>(loops);
      bits_at[state] = bits;
      const auto [next, emitted] = feed(state, loop);
      state = next;
      bits += emitted;
      ++loops;
    }
    s.transient_loops = static_cast<std::size_t>(seen_at[state]);
    s.period_loops = loops - s.transient_loops;
    s.transient_bits = bits_at[state];
    s.period_bits = bits - bits_at[state];
    return s.period_bits > 0;
  };
  Shape sa, sb;
  if (!shape_of(stem_a, loop_a, sa) || !shape_of(stem_b, loop_b, sb)) {
    why = "a witness loop emits nothing";
    return false;
  }
  const std::size_t need =
      std::max(sa.transient_bits, sb.transient_bits) + std::lcm(sa.period_bits, sb.period_bits);
  const auto output_prefix = [&](const Word& stem, const Word& loop, const Shape& s) {
    const std::size_t reps = s.transient_loops + s.period_loops * (need / s.period_bits + 2);
    Word in = stem;
    for (std::size_t r = 0; r < reps; ++r) in += loop;
    return f.evaluate(in);
  };
  const Word oa = output_prefix(stem_a, loop_a, sa);
  const Word ob = output_prefix(stem_b, loop_b, sb);
  if (oa.size() < need || ob.size() < need) {
    why = "outputs fell short of the agreement bound";
    return false;
  }
  if (oa.compare(0, need, ob, 0, need) != 0) {
    why = "outputs differ within the agreement bound";
    return false;
  }
  return true;
}

void check_certificates(Audit& a) {
  const TransducerMap fold = TransducerMap::fold_map();
  a.require(surjectivity_decide(fold).surjective, "the fold should cover every cylinder");

  const InjectivityResult inj = injectivity_certificate(fold);
  a.require(inj.kind == InjectivityResult::Kind::NotInjective,
            "the fold should merge two inputs");
  if (inj.kind == InjectivityResult::Kind::NotInjective) {
    a.require(!inj.loop_a.empty() && !inj.loop_b.empty(), "witness loops must be nonempty");
    if (!inj.loop_a.empty() && !inj.loop_b.empty()) {
      const std::size_t horizon = std::max(inj.stem_a.size(), inj.stem_b.size()) +
                                  std::lcm(inj.loop_a.size(), inj.loop_b.size());
      bool differ = false;
      for (std::size_t i = 0; i < horizon && !differ; ++i) {
        differ = ep_bit(inj.stem_a, inj.loop_a, i) != ep_bit(inj.stem_b, inj.loop_b, i);
      }
      a.require(differ, "witness inputs must be distinct sequences");
      std::string why;
      a.require(images_agree(fold, inj.stem_a, inj.loop_a, inj.stem_b, inj.loop_b, why),
                "witness images must coincide: " + why);
    }
  }

  const SurjectivityResult miss = surjectivity_decide(TransducerMap::constant_map('0'));
  a.require(!miss.surjective, "a constant emitter cannot be onto");
  a.require(miss.witness == "1", "missed cylinder should be [1], got [" + miss.witness + "]");
}

// --- check 5: mass preservation verdicts -----------------------------------

void check_preservation(Audit& a) {
  const TransducerMap fold = TransducerMap::fold_map();
  const CylinderMeasure fair = CylinderMeasure::bernoulli(parse_rational("1/2"));
  const CylinderMeasure third = CylinderMeasure::bernoulli(parse_rational("1/3"));

  const PreservationCheck ok = check_preserves(fold, fair, fair, 12);
  a.require(ok.preserved, "the fold should preserve the fair coin through depth 12");
  a.require(ok.depth == 12, "preserved verdict should record the checked depth");

  const PreservationCheck bad = check_preserves(fold, third, third, 1);
  a.require(!bad.preserved, "the fold should not preserve the third-biased coin");
  a.require(bad.word == "0", "first offending word should be 0, got " + bad.word);
  a.require(bad.lhs == parse_rational("5/9"), "preimage mass of [0] should be 5/9");
  a.require(bad.rhs == parse_rational("1/3"), "direct mass of [0] should be 1/3");
}

// --- check 6: the interval model of the third-biased coin ------------------

void check_interval_model(Audit& a) {
  const CylinderMeasure third = CylinderMeasure::bernoulli(parse_rational("1/3"));
  const CaratheodoryTower t = caratheodory_tower(third, 6);
  a.require(t.levels.size() == 6, "six levels were requested");

  const Rational zero(0), one(1);
  for (std::size_t li = 0; li < t.levels.size(); ++li) {
    const TowerLevel& lv = t.levels[li];
    const std::vector<ClopenSet>& cells = lv.partition.cells();
    const std::string where = " at level " + std::to_string(li);
    a.require(lv.spans.size() == cells.size(), "one span per cell" + where);
    if (lv.spans.size() != cells.size()) continue;

    const Rational bound = one / Rational(static_cast<unsigned long>(li + 1));
    Rational cursor(0);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const Rational mass = clopen_mass(third, cells[j]);
      const Rational width = lv.spans[j].second - lv.spans[j].first;
      a.require(width == mass, "span width must equal cell mass" + where);
      a.require(lv.spans[j].first == cursor, "spans must tile in cell order" + where);
      a.require(mass <= bound, "cell mass above the level's mesh bound" + where);
      cursor = lv.spans[j].second;
      const IntervalSet cell_pic = realize_at_level(t, li + 1, cells[j]);
      a.require(cell_pic == IntervalSet::segment(lv.spans[j].first, lv.spans[j].second),
                "a cell must realize to exactly its span" + where);
    }
    a.require(cursor == one, "spans must end at 1" + where);

    if (li > 0) {
      const TowerLevel& up = t.levels[li - 1];
      const std::vector<ClopenSet>& parents = up.partition.cells();
      std::vector<ClopenSet> covered(parents.size());
      for (std::size_t j = 0; j < cells.size(); ++j) {
        std::size_t pi = parents.size();
        for (std::size_t k = 0; k < parents.size(); ++k) {
          if (is_subset(cells[j], parents[k])) {
            pi = k;
            break;
          }
        }
        a.require(pi < parents.size(), "every cell must refine one parent" + where);
        if (pi == parents.size()) continue;
        covered[pi] = set_union(covered[pi], cells[j]);
        const bool nested = !(lv.spans[j].first < up.spans[pi].first) &&
                            !(up.spans[pi].second < lv.spans[j].second);
        a.require(nested, "child span must sit inside the parent span" + where);
      }
      for (std::size_t k = 0; k < parents.size(); ++k) {
        a.require(covered[k] == parents[k], "children must cover their parent" + where);
      }
    }
  }

  std::mt19937 g = rng_for(6);
  const auto random_union = [&](std::size_t li) {
    ClopenSet u;
    for (const ClopenSet& c : t.levels[li].partition.cells()) {
      if (std::uniform_int_distribution<int>(0, 1)(g) == 1) u = set_union(u, c);
    }
    return u;
  };
  std::uniform_int_distribution<std::size_t> pick_level(0, t.levels.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t li = pick_level(g);
    const ClopenSet u = random_union(li);
    const Rational len = realize_at_level(t, li + 1, u).length();
    const Rational mass = clopen_mass(third, u);
    a.require(len == mass, "union's interval length must equal its mass (trial " +
                               std::to_string(trial) + ")");
  }
  for (int trial = 0; trial < 200; ++trial) {
    const ClopenSet u = random_union(pick_level(g));
    const ClopenSet v = random_union(pick_level(g));
    const Rational lhs = boolean_distance(third, u, v);
    const Rational rhs = interval_sym_diff(interval_realize(t, u), interval_realize(t, v)).length();
    a.require(lhs == rhs, "symmetric-difference mass must equal interval length (trial " +
                              std::to_string(trial) + ")");
  }

  a.require(realize_at_level(t, 1, ClopenSet::cylinder("0")) ==
                IntervalSet::segment(zero, parse_rational("1/3")),
            "[0] must realize to [0, 1/3]");
  a.require(interval_realize(t, ClopenSet::cylinder("11")) ==
                IntervalSet::segment(parse_rational("5/9"), one),
            "[11] must realize to [5/9, 1]");
}

// --- check 7: matched towers over the fold ---------------------------------

void check_matched_towers(Audit& a) {
  const TransducerMap fold = TransducerMap::fold_map();
  const CylinderMeasure fair = CylinderMeasure::bernoulli(parse_rational("1/2"));
  const Rational zero(0);
  std::mt19937 g = rng_for(7);

  for (std::size_t n = 1; n <= 5; ++n) {
    const std::string where = " (n " + std::to_string(n) + ")";
    const std::vector<ClopenSet> gens = cylinder_generators(n);
    const MatchedTower tower = approx_algebra_iso(fold, fair, fair, gens, 3);
    a.require(tower.found, "matching should succeed under the fair coin" + where);
    if (!tower.found || tower.levels.empty()) continue;

    for (std::size_t i = 0; i < n; ++i) {
      const TowerEvaluation ev = evaluate_matched_tower(tower, gens[i], 0);
      a.require(ev.error_bound == zero, "generator transport must be errorless" + where);
      a.require(ev.image == preimage_clopen(fold, gens[i]),
                "transported generator must equal its exact preimage" + where);
    }

    for (const MatchedLevel& lv : tower.levels) {
      for (const MatchedCell& c : lv.cells) {
        const Rational dm = clopen_mass(fair, c.domain);
        const Rational rm = clopen_mass(fair, c.range);
        const Rational width = c.span.second - c.span.first;
        a.require(dm == rm && rm == width,
                  "cell masses and span width must agree" + where);
      }
    }

    const std::vector<MatchedCell>& deep = tower.levels.back().cells;
    for (std::size_t i = 0; i < deep.size(); ++i) {
      for (std::size_t j = i + 1; j < deep.size(); ++j) {
        const Rational lhs = boolean_distance(fair, deep[i].domain, deep[j].domain);
        const Rational rhs = boolean_distance(fair, deep[i].range, deep[j].range);
        a.require(lhs == rhs, "cell pair distances must match across the matching" + where);
      }
    }
    for (int trial = 0; trial < 40; ++trial) {
      ClopenSet du, dv, ru, rv;
      for (const MatchedCell& c : deep) {
        if (std::uniform_int_distribution<int>(0, 1)(g) == 1) {
          du = set_union(du, c.domain);
          ru = set_union(ru, c.range);
        }
        if (std::uniform_int_distribution<int>(0, 1)(g) == 1) {
          dv = set_union(dv, c.domain);
          rv = set_union(rv, c.range);
        }
      }
      const Rational lhs = boolean_distance(fair, du, dv);
      const Rational rhs = boolean_distance(fair, ru, rv);
      a.require(lhs == rhs, "union distances must match across the matching" + where);
    }
  }
}

// --- check 8: clopen value sets --------------------------------------------

void check_value_sets(Audit& a) {
  const CylinderMeasure fair = CylinderMeasure::bernoulli(parse_rational("1/2"));
  const CylinderMeasure third = CylinderMeasure::bernoulli(parse_rational("1/3"));

  std::vector<Rational> want_fair;
  for (int k = 0; k <= 4; ++k) {
    const Rational v = Rational(k) / Rational(4);
    want_fair.push_back(v);
  }
  a.require(clopen_values(fair, 2) == want_fair, "fair depth-2 values must be the quarters");

  std::vector<Rational> want_third;
  for (int k = 0; k <= 9; ++k) {
    const Rational v = Rational(k) / Rational(9);
    want_third.push_back(v);
  }
  a.require(clopen_values(third, 2) == want_third, "third-biased depth-2 values must be ninths");

  for (std::size_t d = 0; d <= 8; ++d) {
    a.require(group_like_check(fair, d).holds,
              "fair values must close under differences at depth " + std::to_string(d));
    a.require(group_like_check(third, d).holds,
              "third-biased values must close under differences at depth " + std::to_string(d));
  }

  const CylinderMeasure* measures[] = {&fair, &third};
  for (const CylinderMeasure* m : measures) {
    for (std::size_t d = 0; d <= 10; ++d) {
      const std::vector<Rational> vals = clopen_values(*m, d);
      const std::string where = " at depth " + std::to_string(d);
      a.require(!vals.empty() && vals.front() == Rational(0) && vals.back() == m->total(),
                "value set must run from 0 to the total" + where);
      const Rational cap = max_mass_at_depth(*m, d);
      for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        const Rational gap = vals[i + 1] - vals[i];
        if (!(gap <= cap)) {
          a.require(false, "gap above the largest cylinder mass" + where);
          break;
        }
      }
    }
  }
}

// --- check 9: mass-preserving invertible approximations --------------------

void check_measure_invertibles(Audit& a) {
  const TransducerMap fold = TransducerMap::fold_map();
  const CylinderMeasure fair = CylinderMeasure::bernoulli(parse_rational("1/2"));
  const CylinderMeasure third = CylinderMeasure::bernoulli(parse_rational("1/3"));

  for (std::size_t n = 1; n <= 8; ++n) {
    const std::string where = " (n " + std::to_string(n) + ")";
    const ApproxMeasureHomeo r = approx_measure_homeo(fold, fair, fair, n);
    a.require(r.found, "matching should succeed under the fair coin" + where);
    if (!r.found) continue;
    a.require(r.exchange.source().is_whole() && r.exchange.target().is_whole(),
              "exchange is not a self-bijection" + where);
    for (const auto& [u, v] : r.exchange.rules()) {
      const Rational mu = fair.cylinder_mass(u);
      const Rational mv = fair.cylinder_mass(v);
      a.require(mu == mv, "rule " + u + " -> " + v + " moves mass" + where);
    }
    const TransducerMap gm = from_prefix_exchange(r.exchange);
    a.require(check_preserves(gm, fair, fair, 12).preserved,
              "exchange machine must preserve the fair coin" + where);
    const SupDistance sd = sup_distance(gm, fold, n + 4);
    const Rational bound = pow2_inv(n);
    a.require(sd.value <= bound, "approximation farther than 2^-n" + where);
  }

  bool rejected = false;
  Word witness;
  try {
    approx_measure_homeo(fold, fair, third, 2);
  } catch (const WitnessedFailure& e) {
    rejected = true;
    witness = e.witness();
  }
  a.require(rejected, "the fold cannot carry the fair coin to the third-biased one");
  a.require(witness == "0", "cross-measure refusal should point at [0]");

  // A direct matching attempt stalls out too: no dyadic cylinder mass is a
  // triadic one, so every carve fails until the word budget is spent.
  const MeasureIso cross =
      measure_clopen_iso(fair, third, ClopenSet::whole(), ClopenSet::whole(), 8);
  a.require(!cross.found, "no cylinder matching can pair dyadic with triadic masses");
  a.require(!cross.note.empty(), "the failed matching should explain itself");
}

// --- check 10: demo certificates re-verify from their bytes ----------------

void check_demo_roundtrip(Audit& a) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const fs::path fold_path = dir / "cantor-acceptance-fold.json";
  const fs::path fair_path = dir / "cantor-acceptance-fair.json";
  const fs::path cert_path = dir / "cantor-acceptance-cert.json";
  {
    std::ofstream out(fold_path);
    out << transducer_to_json(TransducerMap::fold_map()).dump() << '\n';
    std::ofstream mout(fair_path);
    mout << measure_to_json(CylinderMeasure::bernoulli(parse_rational("1/2"))).dump() << '\n';
  }

  const auto run = [&](std::vector<std::string> args, std::string& out_text) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    out_text = out.str();
    if (code != 0) out_text += err.str();
    return code;
  };

  const std::vector<std::vector<std::string>> demos = {
      {"demo-generic", "--map", fold_path.string(), "--mode", "topological", "--n-max", "6"},
      {"demo-generic", "--map", fold_path.string(), "--mode", "measure", "--n-max", "6", "--mu",
       fair_path.string()},
  };
  for (const std::vector<std::string>& args : demos) {
    const std::string mode = args[4];
    std::string emitted;
    const int code = run(args, emitted);
    a.require(code == 0, "demo (" + mode + ") exited " + std::to_string(code));
    if (code != 0) continue;

    Json cert;
    try {
      cert = Json::parse(emitted);
    } catch (const Json::exception&) {
      a.require(false, "demo (" + mode + ") did not print JSON");
      continue;
    }
    std::string detail;
    a.require(verify_certificate(cert, detail),
              "demo (" + mode + ") failed re-verification: " + detail);

    {
      std::ofstream out(cert_path);
      out << emitted;
    }
    std::string verdict;
    const int vcode = run({"verify", "--certificate", cert_path.string()}, verdict);
    a.require(vcode == 0, "verify (" + mode + ") exited " + std::to_string(vcode));
    a.require(verdict.find("\"status\":\"verified\"") != std::string::npos,
              "verify (" + mode + ") did not report success");

    const std::string again = run(args, emitted) == 0 ? emitted : "";
    a.require(again == emitted, "demo (" + mode + ") output is not reproducible");
  }

  std::error_code ignore;
  fs::remove(fold_path, ignore);
  fs::remove(fair_path, ignore);
  fs::remove(cert_path, ignore);
}

// --- the harness ------------------------------------------------------------

struct Check {
  const char* label;
  double limit_seconds;
  void (*run)(Audit&);
};

}  // namespace

int main() {
  const Check checks[] = {
      {"boolean ops on 1000 random clopen pairs match the depth-8 membership table", 5,
       check_boolean_table},
      {"exact preimages agree with forward evaluation at depth 12 across the map corpus", 10,
       check_preimage_oracle},
      {"invertible approximations stay within 2^-n of every corpus map, n = 1..8", 30,
       check_dense_invertibles},
      {"surjectivity and injectivity certificates for the fold and a constant emitter", 1,
       check_certificates},
      {"mass preservation verdicts for the fold under the fair and third-biased coins", 5,
       check_preservation},
      {"interval model of the third-biased coin: spans, nesting, mesh, isometry", 10,
       check_interval_model},
      {"matched towers over the fold transport generators to their exact preimages", 10,
       check_matched_towers},
      {"clopen value sets: pinned depth-2 sets, difference closure, gap bounds", 20,
       check_value_sets},
      {"mass-preserving invertible approximations of the fold, and the cross-measure refusal", 30,
       check_measure_invertibles},
      {"demo certificates re-verify from their serialized bytes alone", 60,
       check_demo_roundtrip},
  };

  std::setvbuf(stdout, nullptr, _IONBF, 0);
  int failed = 0;
  const int total = static_cast<int>(std::size(checks));
  for (int i = 0; i < total; ++i) {
    Audit audit;
    const auto start = std::chrono::steady_clock::now();
    try {
      checks[i].run(audit);
    } catch (const std::exception& e) {
      audit.require(false, std::string("unexpected exception: ") + e.what());
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    if (elapsed.count() > checks[i].limit_seconds) {
      audit.require(false, "exceeded the " + std::to_string(checks[i].limit_seconds) +
                               " s budget");
    }
    const bool ok = audit.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("[%2d/%d] %s  %6.2fs  %s\n", i + 1, total, ok ? "PASS" : "FAIL",
                elapsed.count(), checks[i].label);
    for (const std::string& f : audit.failures) std::printf("        - %s\n", f.c_str());
    if (audit.dropped > 0) std::printf("        - (%zu more)\n", audit.dropped);
  }
  std::printf("%d/%d passed\n", total - failed, total);
  return failed == 0 ? 0 : 1;
}
