#include "cantor/clopen.hpp"

#include <algorithm>

#include "cantor/errors.hpp"

namespace cantor {

bool is_valid_word(const Word& w) {
  for (char c : w)
    if (c != '0' && c != '1') return false;
  return true;
}

void require_word(const Word& w) {
  if (!is_valid_word(w)) throw InvalidInput("word must be over {0,1}: '" + w + "'");
}

bool is_prefix(const Word& u, const Word& v) {
  return u.size() <= v.size() && std::equal(u.begin(), u.end(), v.begin());
}

std::size_t lcp_length(const Word& u, const Word& v) {
  std::size_t n = std::min(u.size(), v.size()), i = 0;
  while (i < n && u[i] == v[i]) ++i;
  return i;
}

Word flip_bits(const Word& w) {
  Word out = w;
  for (char& c : out) c = c == '0' ? '1' : '0';
  return out;
}

namespace {

// Cover trie: marked nodes are covered cylinders; a subtree is full when a
// mark sits at or above every leaf. The minimal antichain consists of the
// maximal full nodes.
class CoverTrie {
 public:
  CoverTrie() : nodes_(1) {}

  void insert(const Word& w) {
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

  std::vector<Word> minimal_antichain() {
    full_.assign(nodes_.size(), 0);
    fill(0);
    std::vector<Word> out;
    Word prefix;
    emit(0, prefix, out);
    return out;
  }

 private:
  struct Node {
    int child[2] = {-1, -1};
    bool covered = false;
  };

  bool fill(int node) {
    const Node& n = nodes_[node];
    bool f0 = n.child[0] >= 0 && fill(n.child[0]);
    bool f1 = n.child[1] >= 0 && fill(n.child[1]);
    full_[node] = n.covered || (f0 && f1);
    return full_[node];
  }

  void emit(int node, Word& prefix, std::vector<Word>& out) {
    if (full_[node]) {
      out.push_back(prefix);
      return;
    }
    const Node& n = nodes_[node];
    for (int b = 0; b < 2; ++b) {
      if (n.child[b] < 0) continue;
      prefix.push_back(static_cast<char>('0' + b));
      emit(n.child[b], prefix, out);
      prefix.pop_back();
    }
  }

  std::vector<Node> nodes_;
  std::vector<char> full_;
};

// Complement relative to the whole space, working on a sorted antichain.
// A region with no words is wholly outside the set; a word equal to the
// current prefix covers the region entirely.
void complement_rec(const std::vector<Word>& words, std::size_t lo, std::size_t hi,
                    std::size_t depth, Word& prefix, std::vector<Word>& out) {
  if (lo == hi) {
    out.push_back(prefix);
    return;
  }
  if (words[lo].size() == depth) return;
  std::size_t mid = lo;
  while (mid < hi && words[mid][depth] == '0') ++mid;
  for (int b = 0; b < 2; ++b) {
    prefix.push_back(static_cast<char>('0' + b));
    if (b == 0)
      complement_rec(words, lo, mid, depth + 1, prefix, out);
    else
      complement_rec(words, mid, hi, depth + 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

ClopenSet ClopenSet::canonical(const std::vector<Word>& words) {
  if (words.empty()) return {};
  CoverTrie trie;
  for (const Word& w : words) {
    require_word(w);
    trie.insert(w);
  }
  ClopenSet s;
  s.antichain_ = trie.minimal_antichain();
  return s;
}

ClopenSet ClopenSet::whole() { return canonical({Word{}}); }

ClopenSet ClopenSet::cylinder(const Word& w) { return canonical({w}); }

bool ClopenSet::is_whole() const {
  return antichain_.size() == 1 && antichain_[0].empty();
}

std::size_t ClopenSet::max_word_length() const {
  std::size_t n = 0;
  for (const Word& w : antichain_) n = std::max(n, w.size());
  return n;
}

bool ClopenSet::contains_eventual(const Word& stem, char pad) const {
  for (const Word& a : antichain_) {
    if (a.size() <= stem.size()) {
      if (is_prefix(a, stem)) return true;
    } else if (is_prefix(stem, a)) {
      bool ok = true;
      for (std::size_t i = stem.size(); i < a.size(); ++i)
        if (a[i] != pad) ok = false;
      if (ok) return true;
    }
  }
  return false;
}

ClopenSet set_union(const ClopenSet& a, const ClopenSet& b) {
  std::vector<Word> words = a.antichain();
  words.insert(words.end(), b.antichain().begin(), b.antichain().end());
  return ClopenSet::canonical(words);
}

ClopenSet set_intersection(const ClopenSet& a, const ClopenSet& b) {
  std::vector<Word> words;
  for (const Word& u : a.antichain())
    for (const Word& v : b.antichain()) {
      if (is_prefix(u, v))
        words.push_back(v);
      else if (is_prefix(v, u))
        words.push_back(u);
    }
  return ClopenSet::canonical(words);
}

ClopenSet set_complement(const ClopenSet& a) {
  if (a.empty()) return ClopenSet::whole();
  std::vector<Word> out;
  Word prefix;
  complement_rec(a.antichain(), 0, a.antichain().size(), 0, prefix, out);
  return ClopenSet::canonical(out);
}

ClopenSet set_difference(const ClopenSet& a, const ClopenSet& b) {
  return set_intersection(a, set_complement(b));
}

ClopenSet boolean_sum(const ClopenSet& a, const ClopenSet& b) {
  return set_union(set_difference(a, b), set_difference(b, a));
}

bool is_subset(const ClopenSet& a, const ClopenSet& b) {
  return set_intersection(a, b) == a;
}

bool is_disjoint(const ClopenSet& a, const ClopenSet& b) {
  for (const Word& u : a.antichain())
    for (const Word& v : b.antichain())
      if (is_prefix(u, v) || is_prefix(v, u)) return false;
  return true;
}

ClopenSet boolean_op(BoolOp op, const ClopenSet& a, const ClopenSet& b) {
  switch (op) {
    case BoolOp::Union: return set_union(a, b);
    case BoolOp::Intersection: return set_intersection(a, b);
    case BoolOp::Complement: return set_complement(a);
    case BoolOp::BooleanSum: return boolean_sum(a, b);
  }
  throw InvalidInput("unknown boolean operation");
}

Rational diameter(const ClopenSet& a) {
  const auto& words = a.antichain();
  if (words.empty()) return Rational(0);
  if (words.size() == 1) return pow2_inv(words[0].size());
  std::size_t shallowest = words[0].size();
  for (std::size_t i = 0; i + 1 < words.size(); ++i)
    shallowest = std::min(shallowest, lcp_length(words[i], words[i + 1]));
  return pow2_inv(shallowest);
}

ClopenPartition ClopenPartition::make(ClopenSet ambient, std::vector<ClopenSet> cells) {
  ClopenSet covered;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].empty()) throw InvalidInput("partition cell is empty");
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (!is_disjoint(cells[i], cells[j]))
        throw InvalidInput("partition cells overlap");
    covered = set_union(covered, cells[i]);
  }
  if (!(covered == ambient))
    throw InvalidInput("partition cells do not cover the ambient set");
  std::sort(cells.begin(), cells.end(), [](const ClopenSet& x, const ClopenSet& y) {
    return x.antichain().front() < y.antichain().front();
  });
  ClopenPartition p;
  p.ambient_ = std::move(ambient);
  p.cells_ = std::move(cells);
  return p;
}

ClopenPartition ClopenPartition::trivial(ClopenSet ambient) {
  std::vector<ClopenSet> cells;
  if (!ambient.empty()) cells.push_back(ambient);
  return make(std::move(ambient), std::move(cells));
}

ClopenPartition common_refinement(const ClopenPartition& p, const ClopenPartition& q) {
  if (!(p.ambient() == q.ambient()))
    throw InvalidInput("common refinement requires equal ambients");
  std::vector<ClopenSet> cells;
  for (const ClopenSet& a : p.cells())
    for (const ClopenSet& b : q.cells()) {
      ClopenSet cell = set_intersection(a, b);
      if (!cell.empty()) cells.push_back(std::move(cell));
    }
  return ClopenPartition::make(p.ambient(), std::move(cells));
}

Rational mesh(const ClopenPartition& p) {
  Rational m(0);
  for (const ClopenSet& cell : p.cells()) m = std::max(m, diameter(cell));
  return m;
}

}  // namespace cantor
