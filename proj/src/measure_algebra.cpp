// measure_algebra.cpp -- boolean metric, interval towers, matched towers
#include "cantor/measure_algebra.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "cantor/errors.hpp"
#include "cantor/measure_values.hpp"

namespace cantor {

namespace {

constexpr std::size_t kLevelCap = 256;
constexpr std::size_t kCellCap = 1ul << 16;

// The canonical two-way split of a nonempty clopen set: a multi-word set
// sheds its first cylinder, a single cylinder breaks in half. Pieces come
// back in first-word order.
std::pair<ClopenSet, ClopenSet> split_cell(const ClopenSet& cell) {
  const std::vector<Word>& words = cell.antichain();
  if (words.size() == 1) {
    return {ClopenSet::cylinder(words.front() + '0'), ClopenSet::cylinder(words.front() + '1')};
  }
  const std::vector<Word> rest(words.begin() + 1, words.end());
  return {ClopenSet::cylinder(words.front()), ClopenSet::canonical(rest)};
}

ClopenPartition two_cell_partition(const ClopenSet& inside) {
  const ClopenSet outside = set_complement(inside);
  if (inside.empty() || outside.empty()) return ClopenPartition::trivial(ClopenSet::whole());
  return ClopenPartition::make(ClopenSet::whole(), {inside, outside});
}

}  // namespace

Rational boolean_distance(const CylinderMeasure& m, const ClopenSet& a, const ClopenSet& b) {
  return clopen_mass(m, boolean_sum(a, b));
}

std::vector<ClopenSet> cylinder_generators(std::size_t count) {
  std::vector<ClopenSet> out;
  std::vector<Word> frontier{Word()};
  while (out.size() < count) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (char b : {'0', '1'}) {
        next.push_back(w + b);
        if (out.size() < count) out.push_back(ClopenSet::cylinder(next.back()));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

CaratheodoryTower caratheodory_tower(const CylinderMeasure& m, std::size_t levels,
                                     std::vector<ClopenSet> generators) {
  if (m.total() != 1) throw InvalidInput("tower construction needs a normalized measure");
  if (levels == 0) throw InvalidInput("tower needs at least one level");
  if (levels > kLevelCap) throw ResourceLimit("tower level count too large");
  if (generators.empty()) generators = cylinder_generators(levels);
  if (generators.size() < levels) {
    throw InvalidInput("generator sequence shorter than the requested level count");
  }

  CaratheodoryTower tower;
  tower.measure = m;
  tower.generators = generators;

  // Cells in construction order: refinement pieces and split halves replace
  // their parent in place, so children stay adjacent and cumulative spans
  // nest inside the parent's span.
  std::vector<ClopenSet> cells{ClopenSet::whole()};
  std::vector<Rational> masses{m.total()};

  for (std::size_t n = 1; n <= levels; ++n) {
    const ClopenSet& gen = generators[n - 1];
    std::vector<ClopenSet> refined;
    std::vector<Rational> rmass;
    for (const ClopenSet& cell : cells) {
      ClopenSet inside = set_intersection(cell, gen);
      ClopenSet outside = set_difference(cell, gen);
      if (inside.empty() || outside.empty()) {
        refined.push_back(cell);
        rmass.push_back(clopen_mass(m, cell));
        continue;
      }
      if (outside.antichain().front() < inside.antichain().front()) std::swap(inside, outside);
      rmass.push_back(clopen_mass(m, inside));
      rmass.push_back(clopen_mass(m, outside));
      refined.push_back(std::move(inside));
      refined.push_back(std::move(outside));
    }

    const Rational threshold(m.total() / Rational(static_cast<long>(n)));
    std::size_t i = 0;
    while (i < refined.size()) {
      if (rmass[i] <= threshold) {
        ++i;
        continue;
      }
      if (refined.size() >= kCellCap) throw ResourceLimit("tower level cell count too large");
      auto [left, right] = split_cell(refined[i]);
      const Rational left_mass = clopen_mass(m, left);
      const Rational right_mass(rmass[i] - left_mass);
      refined[i] = std::move(left);
      rmass[i] = left_mass;
      refined.insert(refined.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::move(right));
      rmass.insert(rmass.begin() + static_cast<std::ptrdiff_t>(i) + 1, right_mass);
    }

    std::vector<std::pair<Rational, Rational>> ordered_spans;
    Rational run(0);
    for (const Rational& mass : rmass) {
      Rational hi(run + mass);
      ordered_spans.emplace_back(run, hi);
      run = std::move(hi);
    }

    TowerLevel level;
    level.partition = ClopenPartition::make(ClopenSet::whole(), refined);
    for (const ClopenSet& cell : level.partition.cells()) {
      const auto it = std::find(refined.begin(), refined.end(), cell);
      level.spans.push_back(ordered_spans[static_cast<std::size_t>(it - refined.begin())]);
    }
    tower.levels.push_back(std::move(level));

    cells = std::move(refined);
    masses = std::move(rmass);
  }
  return tower;
}

IntervalSet realize_at_level(const CaratheodoryTower& t, std::size_t level, const ClopenSet& a) {
  if (level == 0 || level > t.levels.size()) {
    throw InvalidInput("tower has no such level");
  }
  const TowerLevel& tl = t.levels[level - 1];
  std::vector<IntervalSet::Interval> spans;
  const std::vector<ClopenSet>& cells = tl.partition.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (is_disjoint(cells[i], a)) continue;
    if (!is_subset(cells[i], a)) {
      throw WitnessedFailure("clopen set is not a union of the level's cells",
                             cells[i].antichain().front());
    }
    spans.push_back(tl.spans[i]);
  }
  return IntervalSet::make(std::move(spans));
}

IntervalSet interval_realize(const CaratheodoryTower& t, const ClopenSet& a) {
  if (t.levels.empty()) throw InvalidInput("tower has no levels");
  return realize_at_level(t, t.levels.size(), a);
}

Rational tower_distance(const CaratheodoryTower& s, const CaratheodoryTower& t) {
  const std::size_t shared = std::min(s.levels.size(), t.levels.size());
  if (shared == 0) throw InvalidInput("towers share no levels");
  for (std::size_t i = 0; i < shared; ++i) {
    if (!(s.generators[i] == t.generators[i])) {
      throw InvalidInput("towers disagree on the generator sequence");
    }
  }
  Rational best(0);
  for (std::size_t n = 1; n <= shared; ++n) {
    const ClopenSet& gen = s.generators[n - 1];
    const IntervalSet gap =
        interval_sym_diff(realize_at_level(s, n, gen), realize_at_level(t, n, gen));
    const Rational term(gap.length() / Rational(static_cast<long>(n)));
    if (term > best) best = term;
  }
  return best;
}

ClopenPartition algebra_pullback(const TransducerMap& f, const ClopenPartition& p) {
  std::vector<ClopenSet> cells;
  for (const ClopenSet& cell : p.cells()) {
    ClopenSet pre = preimage_clopen(f, cell);
    if (pre.empty()) {
      throw WitnessedFailure("cell preimage is empty", cell.antichain().front());
    }
    cells.push_back(std::move(pre));
  }
  return ClopenPartition::make(preimage_clopen(f, p.ambient()), std::move(cells));
}

MatchedTower approx_algebra_iso(const TransducerMap& f, const CylinderMeasure& mu,
                                const CylinderMeasure& nu,
                                const std::vector<ClopenSet>& generators,
                                std::size_t extra_levels, std::size_t budget) {
  if (mu.total() != 1 || nu.total() != 1) {
    throw InvalidInput("matched tower construction needs normalized measures");
  }
  std::size_t depth = 0;
  for (const ClopenSet& g : generators) depth = std::max(depth, g.max_word_length());

  const PreservationCheck check = check_preserves(f, mu, nu, depth);
  if (!check.preserved) {
    throw WitnessedFailure("map does not carry the one measure to the other at the generators' depth",
                           check.word);
  }

  ClopenPartition range = ClopenPartition::trivial(ClopenSet::whole());
  for (const ClopenSet& g : generators) range = common_refinement(range, two_cell_partition(g));

  MatchedTower tower;
  tower.mu = mu;
  tower.nu = nu;
  MatchedLevel base;
  std::size_t domain_depth = depth;
  Rational run(0);
  for (const ClopenSet& cell : range.cells()) {
    ClopenSet pre = preimage_clopen(f, cell);
    if (pre.empty()) {
      throw WitnessedFailure("cell preimage is empty", cell.antichain().front());
    }
    domain_depth = std::max(domain_depth, pre.max_word_length());
    Rational hi(run + clopen_mass(nu, cell));
    base.cells.push_back({std::move(pre), cell, {run, hi}});
    run = std::move(hi);
  }
  if (budget == 0) budget = domain_depth + extra_levels + mu.param_depth() + 16;
  tower.budget = budget;
  tower.levels.push_back(std::move(base));

  for (std::size_t l = 1; l <= extra_levels; ++l) {
    MatchedLevel next;
    for (const MatchedCell& parent : tower.levels.back().cells) {
      const auto [first, second] = split_cell(parent.range);
      const Rational first_mass = clopen_mass(nu, first);
      const std::optional<ClopenSet> carved =
          find_clopen_subset(mu, parent.domain, first_mass, budget);
      if (!carved) {
        tower.note = "level " + std::to_string(l) + ", range cell " +
                     parent.range.antichain().front() + ": no domain piece of mass " +
                     rational_str(first_mass) + " within budget";
        return tower;
      }
      ClopenSet remainder = set_difference(parent.domain, *carved);
      const Rational mid(parent.span.first + first_mass);
      next.cells.push_back({*carved, first, {parent.span.first, mid}});
      next.cells.push_back({std::move(remainder), second, {mid, parent.span.second}});
    }
    tower.levels.push_back(std::move(next));
  }
  tower.found = true;
  return tower;
}

TowerEvaluation evaluate_matched_tower(const MatchedTower& t, const ClopenSet& b,
                                       std::size_t level) {
  if (level >= t.levels.size()) throw InvalidInput("matched tower has no such level");
  TowerEvaluation result;
  result.error_bound = 0;
  std::vector<Word> words;
  for (const MatchedCell& cell : t.levels[level].cells) {
    if (is_disjoint(cell.range, b)) continue;
    for (const Word& w : cell.domain.antichain()) words.push_back(w);
    if (!is_subset(cell.range, b)) {
      result.error_bound += clopen_mass(t.nu, set_difference(cell.range, b));
    }
  }
  result.image = ClopenSet::canonical(words);
  return result;
}

}  // namespace cantor
