// measure_values.cpp -- clopen value sets, difference closure, subset search
#include "cantor/measure_values.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

constexpr std::size_t kValueDepthCap = 18;        // cylinders enumerated: 2^depth
constexpr unsigned long kBitsetCap = 1ul << 22;   // subset-sum grid width
constexpr std::size_t kValueSetCap = 1ul << 20;   // fallback rational-set size
constexpr std::size_t kPairScanCap = 1ul << 11;   // fallback difference scan
constexpr std::size_t kSearchNodeCap = 1ul << 20;

// Masses of the depth-`depth` cylinders contained in ambient, in lex order
// of the words. Subtrees disjoint from ambient are skipped.
void collect_cell_masses(const CylinderMeasure& m, const ClopenSet& ambient, Word& w, int node,
                         const Rational& mass, std::size_t depth, std::vector<Rational>& out) {
  const ClopenSet cell = ClopenSet::cylinder(w);
  if (is_disjoint(cell, ambient)) return;
  if (w.size() == depth) {
    if (is_subset(cell, ambient)) out.push_back(mass);
    return;
  }
  for (int b = 0; b < 2; ++b) {
    w.push_back(static_cast<char>('0' + b));
    const Rational next(mass * m.node_weight(node, b));
    collect_cell_masses(m, ambient, w, m.node_next(node, b), next, depth, out);
    w.pop_back();
  }
}

Rational frac(const mpz_class& num, const mpz_class& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Largest g with a and b both in g * Z (for canonical positive rationals).
Rational rational_gcd(const Rational& a, const Rational& b) {
  mpz_class n, d;
  const mpz_class an = a.get_num(), bn = b.get_num();
  const mpz_class ad = a.get_den(), bd = b.get_den();
  mpz_gcd(n.get_mpz_t(), an.get_mpz_t(), bn.get_mpz_t());
  mpz_lcm(d.get_mpz_t(), ad.get_mpz_t(), bd.get_mpz_t());
  return frac(n, d);
}

bool is_integer_multiple(const Rational& value, const Rational& unit) {
  const Rational ratio(value / unit);
  return ratio.get_den() == 1;
}

// Subset sums of `masses`, as a bit per achievable numerator over the common
// denominator when that grid is small enough, always as a sorted list.
struct ValueSet {
  bool exact = false;
  std::vector<std::uint64_t> bits;  // achievable k, sums being k / den
  mpz_class den = 1;
  std::size_t width = 0;  // grid size: total numerator + 1
  std::vector<Rational> list;
};

bool bit_test(const std::vector<std::uint64_t>& bits, std::size_t k) {
  return (bits[k / 64] >> (k % 64)) & 1u;
}

// bits |= bits << k, in place.
void shift_or(std::vector<std::uint64_t>& bits, std::size_t k) {
  const std::size_t ws = k / 64, bs = k % 64;
  for (std::size_t i = bits.size(); i-- > ws;) {
    std::uint64_t v = bits[i - ws] << bs;
    if (bs != 0 && i - ws > 0) v |= bits[i - ws - 1] >> (64 - bs);
    bits[i] |= v;
  }
}

ValueSet value_set(const CylinderMeasure& m, const ClopenSet& ambient, std::size_t depth) {
  if (depth > kValueDepthCap) throw ResourceLimit("value enumeration depth too large");
  std::vector<Rational> masses;
  Word w;
  collect_cell_masses(m, ambient, w, m.root(), m.total(), depth, masses);

  ValueSet vs;
  mpz_class den = 1;
  for (const Rational& q : masses) {
    const mpz_class d = q.get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  mpz_class grid_total = 0;
  std::vector<unsigned long> items;
  items.reserve(masses.size());
  for (const Rational& q : masses) {
    const mpz_class n = q.get_num() * (den / q.get_den());
    grid_total += n;
    if (n.fits_ulong_p()) items.push_back(n.get_ui());
  }
  if (items.size() == masses.size() && grid_total.fits_ulong_p() &&
      grid_total.get_ui() < kBitsetCap) {
    vs.exact = true;
    vs.den = den;
    vs.width = grid_total.get_ui() + 1;
    vs.bits.assign((vs.width + 63) / 64, 0);
    vs.bits[0] = 1;
    for (unsigned long k : items) {
      if (k != 0) shift_or(vs.bits, k);
    }
    for (std::size_t k = 0; k < vs.width; ++k) {
      if (bit_test(vs.bits, k)) vs.list.push_back(frac(mpz_class(static_cast<long>(k)), den));
    }
    return vs;
  }

  // Grid too wide for a bitset: accumulate the sums as exact rationals.
  std::set<Rational> sums{Rational(0)};
  for (const Rational& q : masses) {
    std::vector<Rational> grown;
    grown.reserve(sums.size());
    for (const Rational& s : sums) grown.emplace_back(s + q);
    sums.insert(grown.begin(), grown.end());
    if (sums.size() > kValueSetCap) throw ResourceLimit("value set too large to enumerate");
  }
  vs.list.assign(sums.begin(), sums.end());
  return vs;
}

}  // namespace

std::vector<Rational> clopen_values(const CylinderMeasure& m, std::size_t depth) {
  return clopen_values(m, ClopenSet::whole(), depth);
}

std::vector<Rational> clopen_values(const CylinderMeasure& m, const ClopenSet& ambient,
                                    std::size_t depth) {
  return value_set(m, ambient, depth).list;
}

GroupLikeCheck group_like_check(const CylinderMeasure& m, std::size_t depth) {
  const ValueSet vs = value_set(m, ClopenSet::whole(), depth);
  GroupLikeCheck result;
  result.depth = depth;
  if (vs.exact) {
    const std::size_t nw = vs.bits.size();
    for (std::size_t s = 0; s < vs.width; ++s) {
      if (!bit_test(vs.bits, s)) continue;
      const std::size_t ws = s / 64, bs = s % 64;
      for (std::size_t i = 0; i + ws < nw; ++i) {
        std::uint64_t sh = vs.bits[i + ws] >> bs;
        if (bs != 0 && i + ws + 1 < nw) sh |= vs.bits[i + ws + 1] << (64 - bs);
        const std::uint64_t viol = sh & ~vs.bits[i];
        if (viol != 0) {
          const std::size_t gap = i * 64 + static_cast<std::size_t>(__builtin_ctzll(viol));
          result.holds = false;
          result.s = frac(mpz_class(static_cast<long>(s)), vs.den);
          result.t = frac(mpz_class(static_cast<long>(gap + s)), vs.den);
          result.gap = frac(mpz_class(static_cast<long>(gap)), vs.den);
          return result;
        }
      }
    }
    return result;
  }
  if (vs.list.size() > kPairScanCap) throw ResourceLimit("value set too large for pair scan");
  for (const Rational& s : vs.list) {
    for (const Rational& t : vs.list) {
      if (t < s) continue;
      const Rational gap(t - s);
      if (!std::binary_search(vs.list.begin(), vs.list.end(), gap)) {
        result.holds = false;
        result.s = s;
        result.t = t;
        result.gap = gap;
        return result;
      }
    }
  }
  return result;
}

GroupLikeCheck group_like_check(const std::vector<Rational>& values) {
  std::vector<Rational> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty() || sorted.front() != 0) {
    throw InvalidInput("value set must contain 0 and nothing negative");
  }
  if (sorted.size() > kPairScanCap) throw ResourceLimit("value set too large for pair scan");
  GroupLikeCheck result;
  for (const Rational& s : sorted) {
    for (const Rational& t : sorted) {
      if (t < s) continue;
      const Rational gap(t - s);
      if (!std::binary_search(sorted.begin(), sorted.end(), gap)) {
        result.holds = false;
        result.s = s;
        result.t = t;
        result.gap = gap;
        return result;
      }
    }
  }
  return result;
}

namespace {

struct Cand {
  Word w;
  int node = 0;
  Rational mass;
  Rational lattice;  // every clopen subset of [w] within budget has mass in lattice * Z
};

bool cand_before(const Cand& a, const Cand& b) {
  if (a.mass != b.mass) return a.mass > b.mass;
  return a.w < b.w;
}

struct SubsetSearch {
  const CylinderMeasure& m;
  std::size_t budget;
  // path_gcd[k][node]: gcd of the weight products over all length-k paths
  // from node, so a cylinder at node with `mass` has every depth-(k) refined
  // subset mass in (mass * path_gcd[k][node]) * Z.
  std::vector<std::vector<Rational>> path_gcd;
  std::size_t visited = 0;
  std::vector<Word> chosen;

  SubsetSearch(const CylinderMeasure& mm, std::size_t b) : m(mm), budget(b) {
    const std::size_t nodes = m.node_count();
    path_gcd.assign(budget + 1, std::vector<Rational>(nodes, Rational(1)));
    for (std::size_t k = 1; k <= budget; ++k) {
      for (std::size_t s = 0; s < nodes; ++s) {
        const int si = static_cast<int>(s);
        const Rational left(m.node_weight(si, 0) * path_gcd[k - 1][m.node_next(si, 0)]);
        const Rational right(m.node_weight(si, 1) * path_gcd[k - 1][m.node_next(si, 1)]);
        path_gcd[k][s] = rational_gcd(left, right);
      }
    }
  }

  Cand make_cand(Word w, int node, Rational mass) const {
    Rational lattice(mass * path_gcd[budget - w.size()][node]);
    return Cand{std::move(w), node, std::move(mass), std::move(lattice)};
  }

  bool search(std::vector<Cand> cands, const Rational& rem, const Rational& avail) {
    if (rem == 0) return true;
    if (cands.empty() || rem > avail) return false;
    if (++visited > kSearchNodeCap) throw ResourceLimit("subset search budget exhausted");

    // Everything the remaining candidates can sum to lies in lattice * Z.
    Rational lattice = cands.front().lattice;
    for (std::size_t i = 1; i < cands.size(); ++i) {
      lattice = rational_gcd(lattice, cands[i].lattice);
    }
    if (!is_integer_multiple(rem, lattice)) return false;

    const Cand c = cands.front();
    std::vector<Cand> rest(cands.begin() + 1, cands.end());

    if (c.mass <= rem) {
      chosen.push_back(c.w);
      const Rational next_rem(rem - c.mass), next_avail(avail - c.mass);
      if (search(rest, next_rem, next_avail)) return true;
      chosen.pop_back();
    }
    if (c.w.size() < budget) {
      std::vector<Cand> split = rest;
      for (int b = 0; b < 2; ++b) {
        const Rational child_mass(c.mass * m.node_weight(c.node, b));
        Cand child =
            make_cand(c.w + static_cast<char>('0' + b), m.node_next(c.node, b), child_mass);
        split.insert(std::upper_bound(split.begin(), split.end(), child, cand_before),
                     std::move(child));
      }
      if (search(std::move(split), rem, avail)) return true;
    }
    const Rational next_avail(avail - c.mass);
    return search(std::move(rest), rem, next_avail);
  }
};

}  // namespace

std::optional<ClopenSet> find_clopen_subset(const CylinderMeasure& m, const ClopenSet& within,
                                            const Rational& target, std::size_t budget) {
  if (target == 0) return ClopenSet();
  if (target < 0 || within.empty()) return std::nullopt;
  if (budget == 0) budget = within.max_word_length() + m.param_depth() + 16;
  if (budget < within.max_word_length()) {
    throw InvalidInput("subset search budget shorter than the region's words");
  }

  SubsetSearch s(m, budget);
  std::vector<Cand> cands;
  Rational avail(0);
  for (const Word& w : within.antichain()) {
    Rational mass = m.cylinder_mass(w);
    avail += mass;
    cands.push_back(s.make_cand(w, m.node_at(w), std::move(mass)));
  }
  std::sort(cands.begin(), cands.end(), cand_before);
  if (!s.search(std::move(cands), target, avail)) return std::nullopt;
  return ClopenSet::canonical(s.chosen);
}

GoodnessScan goodness_scan(const CylinderMeasure& m, std::size_t value_depth,
                           std::size_t set_depth, std::size_t budget) {
  const std::vector<Rational> values = clopen_values(m, value_depth);

  std::vector<ClopenSet> regions{ClopenSet::whole()};
  std::vector<Word> frontier{Word()};
  for (std::size_t len = 1; len <= set_depth; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (char b : {'0', '1'}) {
        next.push_back(w + b);
        regions.push_back(ClopenSet::cylinder(next.back()));
      }
    }
    frontier = std::move(next);
  }

  GoodnessScan result;
  result.value_depth = value_depth;
  result.set_depth = set_depth;
  const std::size_t witness_budget =
      budget == 0 ? value_depth + m.param_depth() + 16 : budget;
  for (const Rational& t : values) {
    for (const ClopenSet& region : regions) {
      const Rational mass = clopen_mass(m, region);
      if (t > mass) continue;
      if (find_clopen_subset(m, region, t, budget)) continue;
      result.good = false;
      result.t = t;
      result.region = region;
      if (auto witness = find_clopen_subset(m, ClopenSet::whole(), t, witness_budget)) {
        result.witness = *witness;
      }
      return result;
    }
  }
  return result;
}

}  // namespace cantor
