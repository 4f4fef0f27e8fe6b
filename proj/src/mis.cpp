#include "f2lab/mis.hpp"

#include "f2lab/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

namespace f2lab {

BitGraph::BitGraph(int vertices)
    : n_(vertices), words_((vertices + 63) / 64), adj_(static_cast<std::size_t>(n_) * words_, 0) {}

void BitGraph::add_edge(int a, int b) {
  if (a == b) return;
  row_mut(a)[b >> 6] |= std::uint64_t{1} << (b & 63);
  row_mut(b)[a >> 6] |= std::uint64_t{1} << (a & 63);
}

int BitGraph::degree(int v) const {
  int d = 0;
  for (int w = 0; w < words_; ++w) d += std::popcount(row(v)[w]);
  return d;
}

std::vector<std::vector<int>> BitGraph::components() const {
  std::vector<int> comp(static_cast<std::size_t>(n_), -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int s = 0; s < n_; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[static_cast<std::size_t>(s)] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (int w = 0; w < words_; ++w) {
        std::uint64_t bits = row(v)[w];
        while (bits) {
          const int u = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          if (comp[static_cast<std::size_t>(u)] < 0) {
            comp[static_cast<std::size_t>(u)] = id;
            stack.push_back(u);
          }
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

BitGraph BitGraph::induced(const std::vector<int>& vertices) const {
  BitGraph h(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (adjacent(vertices[i], vertices[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
  return h;
}

namespace {

using Set = std::vector<std::uint64_t>;

bool any(const Set& s) {
  for (auto w : s)
    if (w) return true;
  return false;
}

int first(const Set& s) {
  for (std::size_t w = 0; w < s.size(); ++w)
    if (s[w]) return static_cast<int>(w * 64) + std::countr_zero(s[w]);
  return -1;
}

void clear_bit(Set& s, int v) { s[static_cast<std::size_t>(v >> 6)] &= ~(std::uint64_t{1} << (v & 63)); }

class Searcher {
 public:
  Searcher(const BitGraph& g, const MisLimits& limits, std::uint64_t& nodes)
      : g_(g), w_(static_cast<std::size_t>(g.words())), limits_(limits), nodes_(nodes) {}

  bool exhausted() const { return exhausted_; }

  Set full() const {
    Set s(w_, 0);
    for (int v = 0; v < g_.size(); ++v) s[static_cast<std::size_t>(v >> 6)] |= std::uint64_t{1} << (v & 63);
    return s;
  }

  Set without_closed_neighbourhood(const Set& p, int v) const {
    Set out(p);
    const std::uint64_t* r = g_.row(v);
    for (std::size_t w = 0; w < w_; ++w) out[w] &= ~r[w];
    clear_bit(out, v);
    return out;
  }

  // Greedy partition of p into cliques; vertices listed class by class with
  // the running class count as their bound.
  void cover(const Set& p, std::vector<int>& order, std::vector<int>& bound) const {
    order.clear();
    bound.clear();
    Set q(p), r(w_);
    int k = 0;
    while (any(q)) {
      ++k;
      r = q;
      while (any(r)) {
        const int v = first(r);
        clear_bit(r, v);
        clear_bit(q, v);
        const std::uint64_t* row = g_.row(v);
        for (std::size_t w = 0; w < w_; ++w) r[w] &= row[w];
        order.push_back(v);
        bound.push_back(k);
      }
    }
  }

  int cover_size(const Set& p) const {
    Set q(p), r(w_);
    int k = 0;
    while (any(q)) {
      ++k;
      r = q;
      while (any(r)) {
        const int v = first(r);
        clear_bit(r, v);
        clear_bit(q, v);
        const std::uint64_t* row = g_.row(v);
        for (std::size_t w = 0; w < w_; ++w) r[w] &= row[w];
      }
    }
    return k;
  }

  bool tick() {
    if (++nodes_ > limits_.node_budget) exhausted_ = true;
    return !exhausted_;
  }

  void set_ceiling(std::size_t c) { ceiling_ = c; }

  void maximum(Set p, std::vector<int>& cur, std::vector<int>& best) {
    if (best.size() >= ceiling_ || !tick()) return;
    if (!any(p)) {
      if (cur.size() > best.size()) best = cur;
      return;
    }
    std::vector<int> order, bound;
    cover(p, order, bound);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (cur.size() + static_cast<std::size_t>(bound[i]) <= best.size()) return;
      const int v = order[i];
      cur.push_back(v);
      maximum(without_closed_neighbourhood(p, v), cur, best);
      cur.pop_back();
      clear_bit(p, v);
      if (exhausted_) return;
    }
  }

  bool lex(Set p, std::vector<int>& cur, std::size_t target) {
    if (cur.size() == target) return true;
    while (any(p)) {
      if (!tick()) return false;
      if (cur.size() + static_cast<std::size_t>(cover_size(p)) < target) return false;
      const int v = first(p);
      cur.push_back(v);
      if (lex(without_closed_neighbourhood(p, v), cur, target)) return true;
      cur.pop_back();
      if (exhausted_) return false;
      clear_bit(p, v);
    }
    return false;
  }

  void all(Set p, std::vector<int>& cur, std::size_t target, std::size_t cap, std::vector<std::vector<int>>& out) {
    if (cur.size() == target) {
      out.push_back(cur);
      return;
    }
    while (any(p)) {
      if (out.size() >= cap || !tick()) return;
      if (cur.size() + static_cast<std::size_t>(cover_size(p)) < target) return;
      const int v = first(p);
      cur.push_back(v);
      all(without_closed_neighbourhood(p, v), cur, target, cap, out);
      cur.pop_back();
      clear_bit(p, v);
    }
  }

 private:
  const BitGraph& g_;
  std::size_t w_;
  MisLimits limits_;
  std::uint64_t& nodes_;
  bool exhausted_ = false;
  std::size_t ceiling_ = SIZE_MAX;
};

// Minimum-degree greedy, used as the first incumbent.
std::vector<int> greedy(const BitGraph& g, const Set& start) {
  Set p(start);
  std::vector<int> out;
  while (any(p)) {
    int pick = -1, pick_deg = 0;
    for (std::size_t w = 0; w < p.size(); ++w) {
      std::uint64_t bits = p[w];
      while (bits) {
        const int v = static_cast<int>(w * 64) + std::countr_zero(bits);
        bits &= bits - 1;
        int d = 0;
        for (std::size_t u = 0; u < p.size(); ++u) d += std::popcount(g.row(v)[u] & p[u]);
        if (pick < 0 || d < pick_deg) {
          pick = v;
          pick_deg = d;
        }
      }
    }
    out.push_back(pick);
    const std::uint64_t* r = g.row(pick);
    for (std::size_t w = 0; w < p.size(); ++w) p[w] &= ~r[w];
    clear_bit(p, pick);
  }
  return out;
}

}  // namespace

bool is_independent(const BitGraph& g, const std::vector<int>& vertices) {
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (vertices[a] == vertices[b] || g.adjacent(vertices[a], vertices[b])) return false;
  return true;
}

MisResult maximum_independent_set(const BitGraph& g, const std::vector<int>& forced, const MisLimits& limits,
                                  const MisHints& hints) {
  MisResult res;
  Searcher s(g, limits, res.nodes);
  Set p = s.full();
  std::vector<int> cur;
  for (int v : forced) {
    if (!((p[static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1u))
      throw Error(Errc::InvalidArgument, "forced vertices are not independent");
    p = s.without_closed_neighbourhood(p, v);
    cur.push_back(v);
  }
  std::vector<int> best = cur;
  for (int v : greedy(g, p)) best.push_back(v);
  if (!hints.incumbent.empty()) {
    if (!is_independent(g, hints.incumbent) ||
        !std::all_of(forced.begin(), forced.end(), [&](int v) {
          return std::find(hints.incumbent.begin(), hints.incumbent.end(), v) != hints.incumbent.end();
        }))
      throw Error(Errc::InvalidArgument, "incumbent is not an independent superset of the forced vertices");
    if (hints.incumbent.size() > best.size()) best = hints.incumbent;
  }
  s.set_ceiling(hints.upper_bound);
  s.maximum(p, cur, best);
  res.exact = !s.exhausted();
  std::sort(best.begin(), best.end());
  res.best = std::move(best);
  return res;
}

std::optional<std::vector<int>> lex_least_independent_set(const BitGraph& g, int target, std::uint64_t& nodes,
                                                          const MisLimits& limits, bool& exhausted) {
  Searcher s(g, limits, nodes);
  std::vector<int> cur;
  const bool found = s.lex(s.full(), cur, static_cast<std::size_t>(target));
  exhausted = s.exhausted();
  if (!found) return std::nullopt;
  return cur;
}

std::vector<std::vector<int>> all_independent_sets(const BitGraph& g, int target, std::size_t cap, bool& complete,
                                                   std::uint64_t& nodes, const MisLimits& limits) {
  Searcher s(g, limits, nodes);
  std::vector<int> cur;
  std::vector<std::vector<int>> out;
  s.all(s.full(), cur, static_cast<std::size_t>(target), cap, out);
  // the cap can only be hit after the last recorded set if more exist
  complete = !s.exhausted() && out.size() < cap;
  if (!s.exhausted() && out.size() == cap) {
    std::vector<std::vector<int>> probe;
    std::uint64_t extra = 0;
    Searcher t(g, limits, extra);
    std::vector<int> c2;
    t.all(t.full(), c2, static_cast<std::size_t>(target), cap + 1, probe);
    complete = !t.exhausted() && probe.size() == cap;
  }
  return out;
}

}  // namespace f2lab

namespace f2lab {

namespace {

class SwapState {
 public:
  explicit SwapState(const BitGraph& g) : g_(g), in_(static_cast<std::size_t>(g.size()), 0), tight_(in_.size(), 0) {
    nbrs_.resize(in_.size());
    for (int v = 0; v < g.size(); ++v)
      for (int u = 0; u < g.size(); ++u)
        if (g.adjacent(v, u)) nbrs_[static_cast<std::size_t>(v)].push_back(u);
  }

  int size() const { return count_; }
  bool in(int v) const { return in_[static_cast<std::size_t>(v)] != 0; }

  void insert(int v) {
    in_[static_cast<std::size_t>(v)] = 1;
    ++count_;
    for (int u : nbrs_[static_cast<std::size_t>(v)]) ++tight_[static_cast<std::size_t>(u)];
  }
  void remove(int v) {
    in_[static_cast<std::size_t>(v)] = 0;
    --count_;
    for (int u : nbrs_[static_cast<std::size_t>(v)]) --tight_[static_cast<std::size_t>(u)];
  }
  // insert v, evicting its neighbours in the set
  void force(int v) {
    for (int u : nbrs_[static_cast<std::size_t>(v)])
      if (in(u)) remove(u);
    insert(v);
  }

  // free insertions and (1,2)-swaps until neither applies
  void improve(std::mt19937_64& rng) {
    const int n = g_.size();
    bool changed = true;
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    while (changed) {
      changed = false;
      std::shuffle(order.begin(), order.end(), rng);
      for (int v : order)
        if (!in(v) && tight_[static_cast<std::size_t>(v)] == 0) {
          insert(v);
          changed = true;
        }
      for (int x : order) {
        if (!in(x)) continue;
        std::vector<int> cand;
        for (int u : nbrs_[static_cast<std::size_t>(x)])
          if (tight_[static_cast<std::size_t>(u)] == 1) cand.push_back(u);
        bool swapped = false;
        for (std::size_t i = 0; i < cand.size() && !swapped; ++i)
          for (std::size_t j = i + 1; j < cand.size() && !swapped; ++j)
            if (!g_.adjacent(cand[i], cand[j])) {
              remove(x);
              insert(cand[i]);
              insert(cand[j]);
              swapped = true;
            }
        changed = changed || swapped;
      }
    }
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int v = 0; v < g_.size(); ++v)
      if (in(v)) out.push_back(v);
    return out;
  }

 private:
  const BitGraph& g_;
  std::vector<std::uint8_t> in_;
  std::vector<int> tight_;
  std::vector<std::vector<int>> nbrs_;
  int count_ = 0;
};

}  // namespace

std::vector<int> local_search_independent_set(const BitGraph& g, std::vector<int> start, std::uint64_t iterations,
                                              std::uint64_t seed, int target) {
  if (g.size() == 0) return {};
  std::mt19937_64 rng(seed);
  SwapState st(g);
  for (int v : start) st.force(v);
  st.improve(rng);
  std::vector<int> best = st.members();
  std::vector<int> current = best;
  std::uniform_int_distribution<int> pick(0, g.size() - 1);
  for (std::uint64_t it = 0; it < iterations && static_cast<int>(best.size()) < target; ++it) {
    int v = pick(rng);
    while (st.in(v)) v = pick(rng);
    st.force(v);
    st.improve(rng);
    if (st.size() > static_cast<int>(best.size())) best = st.members();
    if (st.size() >= static_cast<int>(current.size())) {
      current = st.members();
    } else if (rng() % 8 != 0) {
      // return to the last accepted solution
      for (int u : st.members()) st.remove(u);
      for (int u : current) st.insert(u);
    } else {
      current = st.members();
    }
  }
  return best;
}

}  // namespace f2lab
