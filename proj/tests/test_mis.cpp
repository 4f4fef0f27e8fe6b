#include <doctest.h>

#include "f2lab/mis.hpp"

#include <bit>
#include <random>

using namespace f2lab;

namespace {

BitGraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  BitGraph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) g.add_edge(a, b);
  return g;
}

bool independent_mask(const BitGraph& g, std::uint32_t mask) {
  for (int a = 0; a < g.size(); ++a)
    if ((mask >> a) & 1u)
      for (int b = a + 1; b < g.size(); ++b)
        if (((mask >> b) & 1u) && g.adjacent(a, b)) return false;
  return true;
}

std::vector<int> to_list(std::uint32_t mask) {
  std::vector<int> v;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) v.push_back(i);
  return v;
}

}  // namespace

TEST_CASE("maximum and lex-least independent sets against subset scan") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 13);
    const auto g = random_graph(n, 0.1 + 0.1 * (trial % 6), rng);
    int alpha = 0;
    std::vector<std::vector<int>> maxima;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      if (!independent_mask(g, m)) continue;
      const int c = std::popcount(m);
      if (c > alpha) {
        alpha = c;
        maxima.clear();
      }
      if (c == alpha) maxima.push_back(to_list(m));
    }
    std::sort(maxima.begin(), maxima.end());

    const auto r = maximum_independent_set(g);
    CHECK(r.exact);
    CHECK(static_cast<int>(r.best.size()) == alpha);
    CHECK(is_independent(g, r.best));

    std::uint64_t nodes = 0;
    bool exhausted = false;
    const auto lex = lex_least_independent_set(g, alpha, nodes, {}, exhausted);
    REQUIRE(lex.has_value());
    CHECK(*lex == maxima.front());
    CHECK_FALSE(lex_least_independent_set(g, alpha + 1, nodes, {}, exhausted).has_value());

    bool complete = false;
    const auto all = all_independent_sets(g, alpha, 1'000'000, complete, nodes, {});
    CHECK(complete);
    CHECK(all == maxima);

    const auto ls = local_search_independent_set(g, {}, 200, 7, alpha);
    CHECK(is_independent(g, ls));
    CHECK(static_cast<int>(ls.size()) <= alpha);
  }
}

TEST_CASE("hints and forced vertices") {
  std::mt19937_64 rng(32);
  const auto g = random_graph(40, 0.2, rng);
  const auto plain = maximum_independent_set(g);
  MisHints h;
  h.incumbent = plain.best;
  h.upper_bound = plain.best.size();
  const auto hinted = maximum_independent_set(g, {}, {}, h);
  CHECK(hinted.best == plain.best);
  CHECK(hinted.nodes <= 1);

  const auto forced = maximum_independent_set(g, {plain.best[0]});
  CHECK(forced.best.size() == plain.best.size());

  BitGraph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  CHECK_THROWS(maximum_independent_set(path, {0, 1}));
  MisHints bad;
  bad.incumbent = {0, 1};
  CHECK_THROWS(maximum_independent_set(path, {}, {}, bad));
  CHECK(path.components().size() == 1);

  MisLimits tiny{5};
  const auto big = random_graph(120, 0.05, rng);
  CHECK_FALSE(maximum_independent_set(big, {}, tiny).exact);
}
