#include "cantor/measure.hpp"

#include <deque>
#include <map>
#include <set>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

void require_branch_weight(const Rational& w) {
  if (w <= 0 || w >= 1)
    throw InvalidInput("branch weights must lie strictly between 0 and 1");
}

void require_positive_total(const Rational& t) {
  if (t <= 0) throw InvalidInput("total mass must be positive");
}

}  // namespace

CylinderMeasure CylinderMeasure::bernoulli(const Rational& p, const Rational& total) {
  require_branch_weight(p);
  require_positive_total(total);
  CylinderMeasure m;
  m.kind_ = Kind::Bernoulli;
  m.nodes_.push_back({{p, Rational(1) - p}, {0, 0}});
  m.total_ = total;
  m.param_p_ = p;
  return m;
}

CylinderMeasure CylinderMeasure::markov(const std::array<Rational, 2>& initial,
                                        const std::array<std::array<Rational, 2>, 2>& rows,
                                        const Rational& total) {
  require_positive_total(total);
  require_branch_weight(initial[0]);
  if (initial[0] + initial[1] != 1)
    throw InvalidInput("initial distribution must sum to 1");
  for (const auto& row : rows) {
    require_branch_weight(row[0]);
    if (row[0] + row[1] != 1) throw InvalidInput("transition rows must sum to 1");
  }
  CylinderMeasure m;
  m.kind_ = Kind::Markov;
  m.nodes_.push_back({{initial[0], initial[1]}, {1, 2}});
  m.nodes_.push_back({{rows[0][0], rows[0][1]}, {1, 2}});
  m.nodes_.push_back({{rows[1][0], rows[1][1]}, {1, 2}});
  m.total_ = total;
  m.param_initial_ = initial;
  m.param_rows_ = rows;
  return m;
}

CylinderMeasure CylinderMeasure::table(std::size_t depth, const std::vector<Rational>& weights,
                                       const Rational& tail_p) {
  require_branch_weight(tail_p);
  if (depth > 24) throw ResourceLimit("table depth is capped at 24");
  if (weights.size() != (std::size_t{1} << depth))
    throw InvalidInput("table needs one mass per depth cylinder");
  for (const Rational& w : weights)
    if (w <= 0) throw InvalidInput("table masses must be positive");

  CylinderMeasure m;
  m.kind_ = Kind::Table;
  int tail = 0;
  m.nodes_.push_back({{tail_p, Rational(1) - tail_p}, {0, 0}});
  // Subtree sums bottom-up: level d holds the masses themselves.
  std::vector<std::vector<Rational>> sums(depth + 1);
  sums[depth] = weights;
  for (std::size_t d = depth; d > 0; --d) {
    sums[d - 1].resize(std::size_t{1} << (d - 1));
    for (std::size_t i = 0; i < sums[d - 1].size(); ++i)
      sums[d - 1][i] = sums[d][2 * i] + sums[d][2 * i + 1];
  }
  // Interior nodes top-down, one per word shorter than `depth`.
  std::vector<std::vector<int>> ids(depth);
  for (std::size_t d = 0; d < depth; ++d) {
    ids[d].resize(std::size_t{1} << d);
    for (std::size_t i = 0; i < ids[d].size(); ++i) {
      ids[d][i] = static_cast<int>(m.nodes_.size());
      m.nodes_.emplace_back();
    }
  }
  for (std::size_t d = 0; d < depth; ++d)
    for (std::size_t i = 0; i < ids[d].size(); ++i) {
      Node& node = m.nodes_[ids[d][i]];
      node.weight[0] = sums[d + 1][2 * i] / sums[d][i];
      node.weight[1] = sums[d + 1][2 * i + 1] / sums[d][i];
      for (int b = 0; b < 2; ++b)
        node.next[b] = d + 1 < depth ? ids[d + 1][2 * i + b] : tail;
    }
  m.root_ = depth == 0 ? tail : ids[0][0];
  m.total_ = sums[0][0];
  m.param_p_ = tail_p;
  m.param_depth_ = depth;
  m.param_weights_ = weights;
  return m;
}

int CylinderMeasure::node_at(const Word& w) const {
  require_word(w);
  int node = root_;
  for (char c : w) node = nodes_[node].next[c - '0'];
  return node;
}

Rational CylinderMeasure::cylinder_mass(const Word& w) const {
  require_word(w);
  Rational mass = total_;
  int node = root_;
  for (char c : w) {
    mass *= nodes_[node].weight[c - '0'];
    node = nodes_[node].next[c - '0'];
  }
  return mass;
}

Rational clopen_mass(const CylinderMeasure& m, const ClopenSet& a) {
  Rational mass = 0;
  for (const Word& w : a.antichain()) mass += m.cylinder_mass(w);
  return mass;
}

CylinderMeasure scale(const CylinderMeasure& m, const Rational& factor) {
  if (factor <= 0) throw InvalidInput("scale factor must be positive");
  CylinderMeasure r = m;
  r.total_ *= factor;
  if (r.kind_ == CylinderMeasure::Kind::Table)
    for (Rational& w : r.param_weights_) w *= factor;
  return r;
}

Rational max_mass_at_depth(const CylinderMeasure& m, std::size_t n) {
  std::vector<Rational> best(m.node_count(), 1);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rational> next(m.node_count());
    for (std::size_t s = 0; s < m.node_count(); ++s) {
      int si = static_cast<int>(s);
      Rational b0 = m.node_weight(si, 0) * best[m.node_next(si, 0)];
      Rational b1 = m.node_weight(si, 1) * best[m.node_next(si, 1)];
      next[s] = b0 >= b1 ? b0 : b1;
    }
    best = std::move(next);
  }
  return m.total() * best[m.root()];
}

MassResolution delta_for_epsilon(const CylinderMeasure& m, const Rational& eps) {
  if (eps <= 0) throw InvalidInput("mass threshold must be positive");
  std::vector<Rational> best(m.node_count(), 1);
  std::size_t n = 0;
  while (m.total() * best[m.root()] >= eps) {
    if (++n > 4096) throw BudgetExhausted("mass does not drop below the threshold by depth 4096");
    std::vector<Rational> next(m.node_count());
    for (std::size_t s = 0; s < m.node_count(); ++s) {
      int si = static_cast<int>(s);
      Rational b0 = m.node_weight(si, 0) * best[m.node_next(si, 0)];
      Rational b1 = m.node_weight(si, 1) * best[m.node_next(si, 1)];
      next[s] = b0 >= b1 ? b0 : b1;
    }
    best = std::move(next);
  }
  return {n, pow2_inv(n)};
}

bool conditionally_equivalent(const CylinderMeasure& a, int node_a,
                              const CylinderMeasure& b, int node_b) {
  std::set<std::pair<int, int>> seen;
  std::deque<std::pair<int, int>> work{{node_a, node_b}};
  while (!work.empty()) {
    auto [u, v] = work.front();
    work.pop_front();
    if (!seen.emplace(u, v).second) continue;
    if (a.node_weight(u, 0) != b.node_weight(v, 0)) return false;
    for (int bit = 0; bit < 2; ++bit) work.emplace_back(a.node_next(u, bit), b.node_next(v, bit));
  }
  return true;
}

bool same_measure(const CylinderMeasure& a, const CylinderMeasure& b) {
  return a.total() == b.total() && conditionally_equivalent(a, a.root(), b, b.root());
}

PreservationCheck check_preserves(const TransducerMap& f, const CylinderMeasure& mu,
                                  const CylinderMeasure& nu, std::size_t depth) {
  if (depth > 24) throw ResourceLimit("preservation check depth is capped at 24");
  for (std::size_t len = 0; len <= depth; ++len) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      Word w(len, '0');
      for (std::size_t i = 0; i < len; ++i)
        if (bits >> (len - 1 - i) & 1) w[i] = '1';
      Rational lhs = clopen_mass(mu, preimage_clopen(f, ClopenSet::cylinder(w)));
      Rational rhs = nu.cylinder_mass(w);
      if (lhs != rhs) {
        PreservationCheck r;
        r.preserved = false;
        r.word = w;
        r.lhs = lhs;
        r.rhs = rhs;
        return r;
      }
    }
  }
  PreservationCheck r;
  r.preserved = true;
  r.depth = depth;
  return r;
}

}  // namespace cantor
