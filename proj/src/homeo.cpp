#include "cantor/homeo.hpp"

#include "cantor/errors.hpp"

namespace cantor {

namespace {

// Replace the first shortest word w by w0, w1; a sorted incomparable list
// stays sorted and incomparable (extensions of w sit exactly where w did).
void split_first_shortest(std::vector<Word>& ws) {
  std::size_t at = 0;
  for (std::size_t i = 1; i < ws.size(); ++i)
    if (ws[i].size() < ws[at].size()) at = i;
  Word w = std::move(ws[at]);
  ws[at] = w + "0";
  ws.insert(ws.begin() + at + 1, w + "1");
}

}  // namespace

std::pair<std::vector<Word>, std::vector<Word>> balance_antichains(const ClopenSet& a,
                                                                   const ClopenSet& b) {
  if (a.empty() || b.empty())
    throw InvalidInput("cylinder matching needs nonempty sets on both sides");
  std::vector<Word> left = a.antichain();
  std::vector<Word> right = b.antichain();
  while (left.size() < right.size()) split_first_shortest(left);
  while (right.size() < left.size()) split_first_shortest(right);
  return {std::move(left), std::move(right)};
}

PrefixExchange canonical_clopen_homeo(const ClopenSet& a, const ClopenSet& b) {
  auto [left, right] = balance_antichains(a, b);
  std::vector<std::pair<Word, Word>> rules;
  rules.reserve(left.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    rules.emplace_back(std::move(left[i]), std::move(right[i]));
  return PrefixExchange::make(std::move(rules));
}

ApproxHomeo approx_homeo(const TransducerMap& f, std::size_t depth) {
  if (depth > 20) throw ResourceLimit("approximation depth is capped at 20");
  std::vector<std::pair<Word, Word>> rules;
  for (std::size_t bits = 0; bits < (std::size_t{1} << depth); ++bits) {
    Word w(depth, '0');
    for (std::size_t i = 0; i < depth; ++i)
      if (bits >> (depth - 1 - i) & 1) w[i] = '1';
    ClopenSet cell = ClopenSet::cylinder(w);
    ClopenSet pre = preimage_clopen(f, cell);
    if (pre.empty())
      throw WitnessedFailure("map misses a cylinder at the requested depth", w);
    PrefixExchange piece = canonical_clopen_homeo(pre, cell);
    for (const auto& rule : piece.rules()) rules.push_back(rule);
  }
  ApproxHomeo result;
  result.exchange = PrefixExchange::make(std::move(rules));
  result.distance = sup_distance(from_prefix_exchange(result.exchange), f, depth + 1);
  return result;
}

}  // namespace cantor
