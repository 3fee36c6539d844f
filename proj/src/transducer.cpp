#include "cantor/transducer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

constexpr std::size_t kExploreCap = std::size_t{1} << 22;

}  // namespace

TransducerMap TransducerMap::make(std::vector<std::string> state_names, int initial,
                                  std::vector<std::array<Arrow, 2>> arrows) {
  const int n = static_cast<int>(arrows.size());
  if (state_names.size() != arrows.size())
    throw InvalidInput("state name count does not match arrow table");
  if (n == 0) throw InvalidInput("transducer needs at least one state");
  if (initial < 0 || initial >= n) throw InvalidInput("initial state out of range");
  {
    std::set<std::string> seen(state_names.begin(), state_names.end());
    if (seen.size() != state_names.size()) throw InvalidInput("duplicate state names");
  }
  for (const auto& pair : arrows)
    for (const Arrow& a : pair) {
      if (a.next < 0 || a.next >= n)
        throw InvalidInput("arrow target out of range (transition table must be total)");
      require_word(a.emit);
    }

  // Reachability prune, keeping original state order.
  std::vector<char> reach(n, 0);
  std::deque<int> queue{initial};
  reach[initial] = 1;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int b = 0; b < 2; ++b) {
      int t = arrows[s][b].next;
      if (!reach[t]) {
        reach[t] = 1;
        queue.push_back(t);
      }
    }
  }
  std::vector<int> renumber(n, -1);
  TransducerMap m;
  for (int s = 0; s < n; ++s) {
    if (!reach[s]) continue;
    renumber[s] = static_cast<int>(m.arrows_.size());
    m.state_names_.push_back(std::move(state_names[s]));
    m.arrows_.push_back(std::move(arrows[s]));
  }
  for (auto& pair : m.arrows_)
    for (Arrow& a : pair) a.next = renumber[a.next];
  m.initial_ = renumber[initial];

  // A silent reachable cycle would starve the output on some input.
  const int kept = static_cast<int>(m.arrows_.size());
  std::vector<char> color(kept, 0);
  auto dfs = [&](auto&& self, int s) -> bool {
    color[s] = 1;
    for (int b = 0; b < 2; ++b) {
      const Arrow& a = m.arrows_[s][b];
      if (!a.emit.empty()) continue;
      if (color[a.next] == 1) return false;
      if (color[a.next] == 0 && !self(self, a.next)) return false;
    }
    color[s] = 2;
    return true;
  };
  for (int s = 0; s < kept; ++s)
    if (color[s] == 0 && !dfs(dfs, s))
      throw InvalidInput("transducer has a silent reachable cycle");
  return m;
}

TransducerMap TransducerMap::fold_map() {
  return make({"start", "copy", "flip"}, 0,
              {{{Arrow{"", 1}, Arrow{"", 2}}},
               {{Arrow{"0", 1}, Arrow{"1", 1}}},
               {{Arrow{"1", 2}, Arrow{"0", 2}}}});
}

TransducerMap TransducerMap::identity_map() {
  return make({"copy"}, 0, {{{Arrow{"0", 0}, Arrow{"1", 0}}}});
}

TransducerMap TransducerMap::first_bit_flip_map() {
  return make({"start", "copy"}, 0,
              {{{Arrow{"1", 1}, Arrow{"0", 1}}},
               {{Arrow{"0", 1}, Arrow{"1", 1}}}});
}

TransducerMap TransducerMap::constant_map(char bit) {
  if (bit != '0' && bit != '1') throw InvalidInput("constant map needs bit '0' or '1'");
  Word e(1, bit);
  return make({"emit"}, 0, {{{Arrow{e, 0}, Arrow{e, 0}}}});
}

TransducerMap TransducerMap::from_rules(const std::vector<std::pair<Word, Word>>& rules) {
  if (rules.empty()) throw InvalidInput("rule list is empty");
  std::vector<Word> sources;
  for (const auto& [u, v] : rules) {
    require_word(u);
    require_word(v);
    sources.push_back(u);
  }
  for (std::size_t i = 0; i < sources.size(); ++i)
    for (std::size_t j = i + 1; j < sources.size(); ++j)
      if (is_prefix(sources[i], sources[j]) || is_prefix(sources[j], sources[i]))
        throw InvalidInput("rule sources must be pairwise incomparable");
  if (!ClopenSet::canonical(sources).is_whole())
    throw InvalidInput("rule sources must partition the whole space");

  if (rules.size() == 1) {
    // Single rule from the empty word: inject the target prefix, then copy.
    const Word& v = rules[0].second;
    return make({"inject", "copy"}, 0,
                {{{Arrow{v + "0", 1}, Arrow{v + "1", 1}}},
                 {{Arrow{"0", 1}, Arrow{"1", 1}}}});
  }

  std::map<Word, Word> out;
  for (const auto& [u, v] : rules) out[u] = v;

  // States: one per proper prefix of a source word, plus the copy state.
  std::map<Word, int> node_of;
  for (const Word& u : sources)
    for (std::size_t len = 0; len < u.size(); ++len)
      node_of.emplace(u.substr(0, len), -1);
  std::vector<std::string> names;
  std::vector<std::array<Arrow, 2>> arrows;
  for (auto& [prefix, id] : node_of) {
    id = static_cast<int>(names.size());
    names.push_back("@" + prefix);
    arrows.emplace_back();
  }
  const int copy = static_cast<int>(names.size());
  names.push_back("copy");
  arrows.push_back({{Arrow{"0", copy}, Arrow{"1", copy}}});

  for (const auto& [prefix, id] : node_of) {
    for (int b = 0; b < 2; ++b) {
      Word next = prefix + static_cast<char>('0' + b);
      if (auto hit = out.find(next); hit != out.end())
        arrows[id][b] = Arrow{hit->second, copy};
      else
        arrows[id][b] = Arrow{"", node_of.at(next)};
    }
  }
  return make(std::move(names), node_of.at(Word{}), std::move(arrows));
}

Word TransducerMap::evaluate(const Word& input) const { return run(input).output; }

TransducerMap::Run TransducerMap::run(const Word& input) const {
  require_word(input);
  Run r{initial_, {}};
  for (char c : input) {
    const Arrow& a = arrows_[r.state][c - '0'];
    r.output += a.emit;
    r.state = a.next;
  }
  return r;
}

std::size_t TransducerMap::max_emit_length() const {
  std::size_t n = 0;
  for (const auto& pair : arrows_)
    for (const Arrow& a : pair) n = std::max(n, a.emit.size());
  return n;
}

PrefixExchange PrefixExchange::make(std::vector<std::pair<Word, Word>> rules) {
  if (rules.empty()) throw InvalidInput("prefix exchange needs at least one rule");
  std::vector<Word> sources, targets;
  for (const auto& [u, v] : rules) {
    require_word(u);
    require_word(v);
    sources.push_back(u);
    targets.push_back(v);
  }
  auto check_incomparable = [](const std::vector<Word>& ws, const char* side) {
    for (std::size_t i = 0; i < ws.size(); ++i)
      for (std::size_t j = i + 1; j < ws.size(); ++j)
        if (is_prefix(ws[i], ws[j]) || is_prefix(ws[j], ws[i]))
          throw InvalidInput(std::string("prefix exchange ") + side +
                             " words must be pairwise incomparable");
  };
  check_incomparable(sources, "source");
  check_incomparable(targets, "target");
  std::sort(rules.begin(), rules.end());
  PrefixExchange p;
  p.rules_ = std::move(rules);
  p.source_ = ClopenSet::canonical(sources);
  p.target_ = ClopenSet::canonical(targets);
  return p;
}

PrefixExchange PrefixExchange::inverse() const {
  std::vector<std::pair<Word, Word>> flipped;
  for (const auto& [u, v] : rules_) flipped.emplace_back(v, u);
  return make(std::move(flipped));
}

TransducerMap from_prefix_exchange(const PrefixExchange& p) {
  if (!p.source().is_whole() || !p.target().is_whole())
    throw InvalidInput("prefix exchange must cover the whole space on both sides");
  return TransducerMap::from_rules(p.rules());
}

PrefixExchange compose(const PrefixExchange& p, const PrefixExchange& q) {
  if (!(p.target() == q.source()))
    throw InvalidInput("exchange composition requires matching target/source");
  std::vector<std::pair<Word, Word>> rules;
  for (const auto& [u, v] : p.rules())
    for (const auto& [v2, w] : q.rules()) {
      if (is_prefix(v, v2))
        rules.emplace_back(u + v2.substr(v.size()), w);
      else if (is_prefix(v2, v))
        rules.emplace_back(u, w + v.substr(v2.size()));
    }
  return PrefixExchange::make(std::move(rules));
}

namespace {

// Trie over the antichain of a clopen set, for streaming prefix queries.
// advance() returns kDead once the stream has left every cylinder, kCovered
// once it is trapped inside one, or else the interior node reached.
class MatchTrie {
 public:
  static constexpr int kDead = -2;
  static constexpr int kCovered = -1;

  explicit MatchTrie(const ClopenSet& a) : nodes_(1) {
    for (const Word& w : a.antichain()) {
      int cur = 0;
      for (char c : w) {
        int b = c - '0';
        if (nodes_[cur].child[b] < 0) {
          nodes_[cur].child[b] = static_cast<int>(nodes_.size());
          nodes_.emplace_back();
        }
        cur = nodes_[cur].child[b];
      }
      nodes_[cur].covered = true;
    }
  }

  int advance(int node, const Word& w) const {
    for (char c : w) {
      node = nodes_[node].child[c - '0'];
      if (node < 0) return kDead;
      if (nodes_[node].covered) return kCovered;
    }
    return node;
  }

 private:
  struct Node {
    int child[2] = {-1, -1};
    bool covered = false;
  };
  std::vector<Node> nodes_;
};

}  // namespace

ClopenSet preimage_clopen(const TransducerMap& f, const ClopenSet& a) {
  if (a.empty()) return {};
  if (a.is_whole()) return ClopenSet::whole();
  MatchTrie trie(a);
  std::vector<Word> found;
  std::size_t budget = kExploreCap;
  Word input;
  auto rec = [&](auto&& self, int state, int tnode) -> void {
    if (budget-- == 0)
      throw ResourceLimit("preimage exploration exceeded the node cap");
    for (int b = 0; b < 2; ++b) {
      const auto& arrow = f.arrow(state, b);
      int next = trie.advance(tnode, arrow.emit);
      input.push_back(static_cast<char>('0' + b));
      if (next == MatchTrie::kCovered)
        found.push_back(input);
      else if (next != MatchTrie::kDead)
        self(self, arrow.next, next);
      input.pop_back();
    }
  };
  rec(rec, f.initial(), 0);
  return ClopenSet::canonical(found);
}

TransducerMap compose(const TransducerMap& f, const TransducerMap& g) {
  std::map<std::pair<int, int>, int> id_of;
  std::vector<std::pair<int, int>> order;
  std::deque<std::pair<int, int>> queue;
  auto intern = [&](std::pair<int, int> pair) {
    auto [it, fresh] = id_of.emplace(pair, static_cast<int>(order.size()));
    if (fresh) {
      order.push_back(pair);
      queue.push_back(pair);
    }
    return it->second;
  };
  intern({f.initial(), g.initial()});
  std::vector<std::array<TransducerMap::Arrow, 2>> arrows;
  while (!queue.empty()) {
    auto [sf, sg] = queue.front();
    queue.pop_front();
    std::array<TransducerMap::Arrow, 2> row;
    for (int b = 0; b < 2; ++b) {
      const auto& af = f.arrow(sf, b);
      Word out;
      int cur = sg;
      for (char c : af.emit) {
        const auto& ag = g.arrow(cur, c - '0');
        out += ag.emit;
        cur = ag.next;
      }
      row[b] = TransducerMap::Arrow{out, intern({af.next, cur})};
    }
    arrows.push_back(std::move(row));
  }
  std::vector<std::string> names;
  names.reserve(order.size());
  std::set<std::string> used;
  for (const auto& [sf, sg] : order) {
    std::string name = f.state_name(sf) + "|" + g.state_name(sg);
    while (!used.insert(name).second) name += "'";
    names.push_back(std::move(name));
  }
  return TransducerMap::make(std::move(names), 0, std::move(arrows));
}

SupDistance sup_distance(const TransducerMap& f, const TransducerMap& g,
                         std::size_t depth_bound) {
  SupDistance result;
  result.depth_bound = depth_bound;
  result.value = pow2_inv(depth_bound);
  if (depth_bound == 0) return result;

  struct Entry {
    int sf, sg, owner;  // owner: 0 = streams level, 1 = f ahead, 2 = g ahead
    Word pending;
    std::size_t matched;
    Word input;
  };
  std::map<std::tuple<int, int, int, Word>, std::size_t> best_matched;
  std::deque<Entry> queue;
  queue.push_back({f.initial(), g.initial(), 0, {}, 0, {}});
  best_matched[{f.initial(), g.initial(), 0, {}}] = 0;

  // (first differing position, witness length, witness), minimized.
  std::optional<std::tuple<std::size_t, std::size_t, Word>> best;
  std::size_t budget = kExploreCap;

  while (!queue.empty()) {
    Entry e = std::move(queue.front());
    queue.pop_front();
    if (budget-- == 0) throw ResourceLimit("distance exploration exceeded the node cap");
    for (int b = 0; b < 2; ++b) {
      const auto& af = f.arrow(e.sf, b);
      const auto& ag = g.arrow(e.sg, b);
      Word pf = (e.owner == 1 ? e.pending : Word{}) + af.emit;
      Word pg = (e.owner == 2 ? e.pending : Word{}) + ag.emit;
      Word input = e.input;
      input.push_back(static_cast<char>('0' + b));

      std::size_t overlap = std::min(pf.size(), pg.size());
      std::size_t agree = 0;
      while (agree < overlap && pf[agree] == pg[agree]) ++agree;
      if (agree < overlap) {
        // First difference is pinned at this position for every extension.
        std::size_t k = e.matched + agree + 1;
        if (k <= depth_bound) {
          std::tuple<std::size_t, std::size_t, Word> cand{k, input.size(), input};
          if (!best || cand < *best) best = cand;
        }
        continue;
      }

      std::size_t matched = e.matched + overlap;
      if (matched >= depth_bound) continue;  // agrees through the bound
      int owner = 0;
      Word pending;
      if (pf.size() > overlap) {
        owner = 1;
        pending = pf.substr(overlap);
      } else if (pg.size() > overlap) {
        owner = 2;
        pending = pg.substr(overlap);
      }
      // Bits beyond the bound can never be compared inside it.
      if (matched + pending.size() > depth_bound) pending.resize(depth_bound - matched);
      auto key = std::make_tuple(af.next, ag.next, owner, pending);
      if (auto it = best_matched.find(key); it != best_matched.end() && it->second <= matched)
        continue;
      best_matched[key] = matched;
      queue.push_back({af.next, ag.next, owner, std::move(pending), matched, std::move(input)});
    }
  }

  if (best) {
    result.exact = true;
    result.value = pow2_inv(std::get<0>(*best) - 1);
    result.witness = std::get<2>(*best);
  }
  return result;
}

SurjectivityResult surjectivity_decide(const TransducerMap& f) {
  // Emission graph: machine states plus one chain node per surplus output
  // bit; labels 0/1 consume an output bit, label 2 is silent.
  struct Edge {
    int to, label;
  };
  std::vector<std::vector<Edge>> adj(f.state_count());
  auto new_node = [&]() {
    adj.emplace_back();
    return static_cast<int>(adj.size() - 1);
  };
  for (std::size_t s = 0; s < f.state_count(); ++s)
    for (int b = 0; b < 2; ++b) {
      const auto& a = f.arrow(static_cast<int>(s), b);
      if (a.emit.empty()) {
        adj[s].push_back({a.next, 2});
        continue;
      }
      int cur = static_cast<int>(s);
      for (std::size_t i = 0; i < a.emit.size(); ++i) {
        int nxt = i + 1 == a.emit.size() ? a.next : new_node();
        adj[cur].push_back({nxt, a.emit[i] - '0'});
        cur = nxt;
      }
    }

  auto closure = [&](std::vector<int> set) {
    std::set<int> seen(set.begin(), set.end());
    std::deque<int> work(set.begin(), set.end());
    while (!work.empty()) {
      int v = work.front();
      work.pop_front();
      for (const Edge& e : adj[v])
        if (e.label == 2 && seen.insert(e.to).second) work.push_back(e.to);
    }
    return std::vector<int>(seen.begin(), seen.end());
  };

  std::map<std::vector<int>, int> subset_id;
  std::vector<std::vector<int>> subsets;
  std::vector<std::pair<int, int>> parent;  // (subset id, bit)
  std::deque<int> queue;
  subsets.push_back(closure({f.initial()}));
  subset_id[subsets[0]] = 0;
  parent.emplace_back(-1, -1);
  queue.push_back(0);

  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    for (int b = 0; b < 2; ++b) {
      std::set<int> moved;
      for (int v : subsets[id])
        for (const Edge& e : adj[v])
          if (e.label == b) moved.insert(e.to);
      std::vector<int> next = closure({moved.begin(), moved.end()});
      if (next.empty()) {
        // Shortest, then lexicographically first, missed cylinder.
        Word witness(1, static_cast<char>('0' + b));
        for (int cur = id; parent[cur].first >= 0; cur = parent[cur].first)
          witness.push_back(static_cast<char>('0' + parent[cur].second));
        std::reverse(witness.begin(), witness.end());
        return {false, witness};
      }
      if (subset_id.emplace(next, static_cast<int>(subsets.size())).second) {
        subsets.push_back(next);
        parent.emplace_back(id, b);
        queue.push_back(static_cast<int>(subsets.size()) - 1);
      }
    }
  }
  return {true, {}};
}

namespace {

// Self-product configuration: two runs of the same machine whose outputs
// must stay equal. `pending` is the surplus already emitted by the `owner`
// side (owner 0 means the streams are level).
struct PairConfig {
  int s1, s2, owner;
  Word pending;
  auto operator<=>(const PairConfig&) const = default;
};

struct PairEdge {
  enum class Kind { Conflict, Step, Overflow } kind = Kind::Conflict;
  std::size_t gain = 0;  // output bits matched along this edge
  PairConfig next;       // Step only
  int side = 0;          // which run consumed the input bit
};

PairEdge pair_step(const TransducerMap& f, const PairConfig& c, int bit,
                   std::size_t buffer_bound) {
  PairEdge edge;
  edge.side = c.owner == 1 ? 2 : 1;  // feed the side that is behind; tie -> 1
  int state = edge.side == 1 ? c.s1 : c.s2;
  const auto& a = f.arrow(state, bit);
  const Word& e = a.emit;
  std::size_t overlap = std::min(e.size(), c.pending.size());
  std::size_t agree = 0;
  while (agree < overlap && e[agree] == c.pending[agree]) ++agree;
  if (agree < overlap) {
    edge.kind = PairEdge::Kind::Conflict;
    edge.gain = agree;
    return edge;
  }
  PairConfig n = c;
  (edge.side == 1 ? n.s1 : n.s2) = a.next;
  edge.gain = overlap;
  if (e.size() > c.pending.size()) {
    n.owner = edge.side;
    n.pending = e.substr(overlap);
  } else if (e.size() < c.pending.size()) {
    n.pending = c.pending.substr(overlap);
  } else {
    n.owner = 0;
    n.pending.clear();
  }
  if (n.pending.size() > buffer_bound) {
    edge.kind = PairEdge::Kind::Overflow;
    return edge;
  }
  edge.kind = PairEdge::Kind::Step;
  edge.next = std::move(n);
  return edge;
}

// Divergence at `state`: one run takes bit 0, the other bit 1. Either the
// two emissions already force a difference after `agree` shared bits, or we
// get the follow-up configuration (agree = the overlap consumed).
struct Divergence {
  bool conflict = false;
  std::size_t agree = 0;
  PairConfig config{};
  bool overflow = false;
};

Divergence diverge(const TransducerMap& f, int state, std::size_t buffer_bound) {
  const auto& a0 = f.arrow(state, 0);
  const auto& a1 = f.arrow(state, 1);
  std::size_t overlap = std::min(a0.emit.size(), a1.emit.size());
  std::size_t agree = 0;
  while (agree < overlap && a0.emit[agree] == a1.emit[agree]) ++agree;
  if (agree < overlap) return {true, agree, {}, false};
  Divergence d;
  d.agree = overlap;
  d.config = {a0.next, a1.next, 0, {}};
  if (a0.emit.size() > overlap) {
    d.config.owner = 1;
    d.config.pending = a0.emit.substr(overlap);
  } else if (a1.emit.size() > overlap) {
    d.config.owner = 2;
    d.config.pending = a1.emit.substr(overlap);
  }
  if (d.config.pending.size() > buffer_bound) d.overflow = true;
  return d;
}

}  // namespace

InjectivityResult injectivity_certificate(const TransducerMap& f,
                                          std::size_t buffer_bound) {
  InjectivityResult result;
  result.buffer_bound = buffer_bound;

  // Shortest (then lexicographically first) input word reaching each state.
  std::vector<Word> reach_word(f.state_count());
  std::vector<char> reached(f.state_count(), 0);
  std::deque<int> bfs{f.initial()};
  reached[f.initial()] = 1;
  while (!bfs.empty()) {
    int s = bfs.front();
    bfs.pop_front();
    for (int b = 0; b < 2; ++b) {
      int t = f.arrow(s, b).next;
      if (!reached[t]) {
        reached[t] = 1;
        reach_word[t] = reach_word[s] + static_cast<char>('0' + b);
        bfs.push_back(t);
      }
    }
  }

  bool overflow = false;

  // Cycle search over the conflict-free configuration graph: a reachable
  // cycle can be pumped into two diverged inputs with equal images, while
  // acyclicity means every divergence eventually forces an output difference.
  std::map<PairConfig, int> color;  // 1 on stack, 2 done
  struct Frame {
    PairConfig config;
    int bit = 0;      // next bit to try
    int in_side = 0;  // side fed by the edge entering this config
    char in_bit = '0';
  };

  for (std::size_t s = 0; s < f.state_count(); ++s) {
    Divergence d = diverge(f, static_cast<int>(s), buffer_bound);
    if (d.conflict) continue;
    if (d.overflow) {
      overflow = true;
      continue;
    }
    if (auto it = color.find(d.config); it != color.end()) continue;

    std::vector<Frame> stack;
    stack.push_back({d.config, 0, 0, '0'});
    color[d.config] = 1;
    while (!stack.empty()) {
      if (color.size() > kExploreCap)
        throw ResourceLimit("injectivity search exceeded the configuration cap");
      Frame& top = stack.back();
      if (top.bit == 2) {
        color[top.config] = 2;
        stack.pop_back();
        continue;
      }
      int bit = top.bit++;
      PairEdge edge = pair_step(f, top.config, bit, buffer_bound);
      if (edge.kind == PairEdge::Kind::Conflict) continue;
      if (edge.kind == PairEdge::Kind::Overflow) {
        overflow = true;
        continue;
      }
      auto [it, fresh] = color.emplace(edge.next, 0);
      if (!fresh && it->second == 1) {
        // Back edge: split the stack path into pre-loop and loop segments.
        std::size_t entry = 0;
        while (!(stack[entry].config == edge.next)) ++entry;
        Word pre1, pre2, loop1, loop2;
        for (std::size_t i = 1; i < stack.size(); ++i) {
          Word& w = stack[i].in_side == 1 ? (i <= entry ? pre1 : loop1)
                                          : (i <= entry ? pre2 : loop2);
          w += stack[i].in_bit;
        }
        (edge.side == 1 ? loop1 : loop2) += static_cast<char>('0' + bit);
        const Word& u = reach_word[s];
        result.kind = InjectivityResult::Kind::NotInjective;
        result.stem_a = u + "0" + pre1;
        result.stem_b = u + "1" + pre2;
        result.loop_a = loop1;
        result.loop_b = loop2;
        return result;
      }
      if (fresh || it->second == 0) {
        it->second = 1;
        stack.push_back({edge.next, 0, edge.side, static_cast<char>('0' + bit)});
      }
    }
  }

  if (overflow) {
    result.kind = InjectivityResult::Kind::Unknown;
    result.note = "pending-output buffer exceeded " + std::to_string(buffer_bound);
    return result;
  }

  // Acyclic: the agreement horizon of every configuration is finite.
  std::map<PairConfig, std::size_t> agree_memo;
  auto agree_from = [&](auto&& self, const PairConfig& c) -> std::size_t {
    if (auto it = agree_memo.find(c); it != agree_memo.end()) return it->second;
    std::size_t best = 0;
    for (int bit = 0; bit < 2; ++bit) {
      PairEdge edge = pair_step(f, c, bit, buffer_bound);
      if (edge.kind == PairEdge::Kind::Overflow) {
        overflow = true;
        continue;
      }
      std::size_t cand = edge.gain;
      if (edge.kind == PairEdge::Kind::Step) cand += self(self, edge.next);
      best = std::max(best, cand);
    }
    agree_memo[c] = best;
    return best;
  };

  // Per-state cost: worst first-difference offset (relative to the output
  // already written) once two runs split at that state.
  std::vector<std::size_t> state_cost(f.state_count(), 0);
  for (std::size_t s = 0; s < f.state_count(); ++s) {
    Divergence d = diverge(f, static_cast<int>(s), buffer_bound);
    if (d.overflow) {
      overflow = true;
      continue;
    }
    std::size_t c = d.agree + 1;
    if (!d.conflict) c += agree_from(agree_from, d.config);
    state_cost[s] = c;
  }

  if (overflow) {
    result.kind = InjectivityResult::Kind::Unknown;
    result.note = "pending-output buffer exceeded " + std::to_string(buffer_bound);
    return result;
  }

  // Inputs that differ within their first n bits share a stem of length at
  // most n-1, so the images first differ within
  //   max over stems u, |u| <= n-1, of |output(u)| + state_cost(state(u)),
  // computed layer by layer over exact stem lengths.
  result.kind = InjectivityResult::Kind::Injective;
  std::vector<long long> out_len(f.state_count(), -1);
  out_len[f.initial()] = 0;
  std::size_t worst = 0;
  for (std::size_t n = 1; n <= buffer_bound; ++n) {
    for (std::size_t s = 0; s < f.state_count(); ++s)
      if (out_len[s] >= 0)
        worst = std::max(worst, static_cast<std::size_t>(out_len[s]) + state_cost[s]);
    result.separation.push_back({n, worst});
    if (n == buffer_bound) break;
    std::vector<long long> next(f.state_count(), -1);
    for (std::size_t s = 0; s < f.state_count(); ++s) {
      if (out_len[s] < 0) continue;
      for (int b = 0; b < 2; ++b) {
        const auto& a = f.arrow(static_cast<int>(s), b);
        next[a.next] = std::max(next[a.next],
                                out_len[s] + static_cast<long long>(a.emit.size()));
      }
    }
    out_len = std::move(next);
  }
  return result;
}

}  // namespace cantor
