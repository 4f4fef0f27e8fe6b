#include <doctest.h>

#include "f2lab/graphs.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

using namespace f2lab;

namespace {

Graph random_graph(const EdgeIndexSet& space, std::mt19937_64& rng) {
  Bits b;
  for (int p = 0; p < space.size(); ++p)
    if (rng() & 1u) b.set(static_cast<std::size_t>(p));
  return Graph(space, b);
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  std::vector<std::vector<int>> edges;
  for (const auto& k : g.edges()) {
    const int a = perm[static_cast<std::size_t>(k.lo - 1)], b = perm[static_cast<std::size_t>(k.hi - 1)];
    if (a == b)
      edges.push_back({a});
    else
      edges.push_back({a, b});
  }
  return Graph::from_edges(g.space(), edges);
}

}  // namespace

TEST_CASE("symmetric difference of small graphs") {
  const auto sp = EdgeIndexSet::pairs(4);
  const auto a = Graph::from_edges(sp, {{1, 2}, {2, 3}});
  const auto b = Graph::from_edges(sp, {{2, 3}, {3, 4}});
  const auto d = symmetric_difference(a, b);
  CHECK(d == Graph::from_edges(sp, {{1, 2}, {3, 4}}));
  CHECK(d.vertex_mask() == 0b1111);
  CHECK(symmetric_difference(a, a).is_empty());

  const auto sl = EdgeIndexSet::pairs_loops(3);
  const auto l = Graph::from_edges(sl, {{1}, {1, 2}});
  CHECK(l.has_loop());
  CHECK(l.edge_count() == 2);
  CHECK(l.vertex_mask() == 0b011);
  CHECK_THROWS_AS(symmetric_difference(a, l), Error);
  CHECK_THROWS_AS(Graph::from_edges(sp, {{1}}), Error);
}

TEST_CASE("group law over looped graphs on three vertices") {
  const auto sp = EdgeIndexSet::pairs_loops(3);
  std::vector<Graph> all;
  for (std::uint64_t w = 0; w < 64; ++w) all.emplace_back(sp, Bits::from_word(w));
  const auto zero = Graph::empty(sp);
  for (const auto& a : all) {
    CHECK(symmetric_difference(a, zero) == a);
    CHECK(symmetric_difference(a, a) == zero);
    for (const auto& b : all) {
      CHECK(symmetric_difference(a, b) == symmetric_difference(b, a));
      const auto& c = all[(a.bits().word(0) * 7 + b.bits().word(0)) % 64];
      CHECK(symmetric_difference(symmetric_difference(a, b), c) ==
            symmetric_difference(a, symmetric_difference(b, c)));
    }
  }
}

TEST_CASE("canonical form is invariant under relabelling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const auto sp = (rng() & 1u) ? EdgeIndexSet::pairs_loops(n) : EdgeIndexSet::pairs(n);
    const auto g = random_graph(sp, rng);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto h = relabel(g, perm);
    CHECK(canonical_form(g) == canonical_form(h));
    CHECK(are_isomorphic(g, h));
  }
}

TEST_CASE("canonical form separates exactly the isomorphism classes") {
  std::mt19937_64 rng(12);
  for (int n : {3, 4}) {
    for (auto sp : {EdgeIndexSet::pairs(n), EdgeIndexSet::pairs_loops(n)}) {
      if (sp.size() > 10) continue;
      for (int trial = 0; trial < 300; ++trial) {
        const std::uint64_t a = rng() % sp.point_count(), b = rng() % sp.point_count();
        const Graph ga(sp, Bits::from_word(a)), gb(sp, Bits::from_word(b));
        CHECK(are_isomorphic(ga, gb) == oracle::isomorphic(oracle::edges_of(sp, a), oracle::edges_of(sp, b)));
      }
    }
  }
  // isolated vertices are ignored
  const auto sp = EdgeIndexSet::pairs(5);
  CHECK(are_isomorphic(Graph::from_edges(sp, {{1, 2}}), Graph::from_edges(sp, {{4, 5}})));
  CHECK(canonical_form(Graph::empty(sp)).bytes == std::vector<std::uint8_t>{0});
  CHECK_THROWS_AS(canonical_form(Graph(EdgeIndexSet::pairs(11), Bits::prefix(55))), Error);
}

TEST_CASE("clique families agree with an explicit list of cliques") {
  const auto list = ForbiddenFamily::explicit_list({complete_graph(EdgeIndexSet::pairs(6), 2),
                                                    complete_graph(EdgeIndexSet::pairs(6), 3),
                                                    complete_graph(EdgeIndexSet::pairs(6), 4),
                                                    complete_graph(EdgeIndexSet::pairs(6), 5),
                                                    complete_graph(EdgeIndexSet::pairs(6), 6)});
  const auto cl = ForbiddenFamily::cliques();
  for (int n = 2; n <= 4; ++n) {
    const auto sp = EdgeIndexSet::pairs(n);
    for (std::uint64_t w = 0; w < sp.point_count(); ++w) {
      const Graph g(sp, Bits::from_word(w));
      const bool expect = oracle::is_clique(oracle::edges_of(sp, w), false);
      CHECK(is_isomorphic_to_member(g, cl) == expect);
      CHECK(is_isomorphic_to_member(g, list) == expect);
    }
  }
  std::mt19937_64 rng(13);
  for (int n : {5, 6}) {
    const auto sp = EdgeIndexSet::pairs(n);
    for (int trial = 0; trial < 400; ++trial) {
      // bias toward dense graphs so cliques show up
      Bits b;
      const int r = 2 + static_cast<int>(rng() % (n - 1));
      std::vector<int> vs(static_cast<std::size_t>(n));
      std::iota(vs.begin(), vs.end(), 1);
      std::shuffle(vs.begin(), vs.end(), rng);
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
          b.set(static_cast<std::size_t>(sp.position(std::min(vs[i], vs[j]), std::max(vs[i], vs[j]))));
      if (rng() % 3 == 0) b.flip(rng() % static_cast<std::size_t>(sp.size()));
      const Graph g(sp, b);
      const bool expect = oracle::is_clique(oracle::edges_of(sp, b.word(0)), false);
      CHECK(is_isomorphic_to_member(g, cl) == expect);
      CHECK(is_isomorphic_to_member(g, list) == expect);
    }
  }
}

TEST_CASE("looped cliques") {
  const auto cl = ForbiddenFamily::cliques_looped();
  for (int n = 1; n <= 3; ++n) {
    const auto sp = EdgeIndexSet::pairs_loops(n);
    for (std::uint64_t w = 0; w < sp.point_count(); ++w)
      CHECK(is_isomorphic_to_member(Graph(sp, Bits::from_word(w)), cl) ==
            oracle::is_clique(oracle::edges_of(sp, w), true));
  }
  CHECK(complete_looped_graph(EdgeIndexSet::pairs_loops(3), 2).edge_count() == 3);
}

TEST_CASE("forbidden differences match a scan of every point") {
  const auto p2 = ForbiddenFamily::explicit_list({path_graph(EdgeIndexSet::pairs(3), 2)});
  struct Case {
    EdgeIndexSet space;
    ForbiddenFamily fam;
    std::function<bool(std::uint64_t)> pred;
  };
  std::vector<Case> cases;
  for (int n = 2; n <= 5; ++n) {
    const auto sp = EdgeIndexSet::pairs(n);
    cases.push_back({sp, ForbiddenFamily::cliques(),
                     [sp](std::uint64_t z) { return oracle::is_clique(oracle::edges_of(sp, z), false); }});
    const auto path = oracle::edges_of(EdgeIndexSet::pairs(3), path_graph(EdgeIndexSet::pairs(3), 2).bits().word(0));
    cases.push_back({sp, p2, [sp, path](std::uint64_t z) { return oracle::isomorphic(oracle::edges_of(sp, z), path); }});
  }
  for (int n = 1; n <= 3; ++n) {
    const auto sp = EdgeIndexSet::pairs_loops(n);
    cases.push_back({sp, ForbiddenFamily::cliques_looped(),
                     [sp](std::uint64_t z) { return oracle::is_clique(oracle::edges_of(sp, z), true); }});
  }
  for (const auto& c : cases) {
    std::vector<std::uint64_t> expect;
    for (std::uint64_t z = 1; z < c.space.point_count(); ++z)
      if (c.pred(z)) expect.push_back(z);
    std::vector<std::uint64_t> got;
    for (const auto& b : forbidden_differences(c.space, c.fam)) got.push_back(b.word(0));
    CHECK(got == expect);
  }
  CHECK(forbidden_differences(EdgeIndexSet::pairs(5), p2).size() == 30);
}

TEST_CASE("explicit family validation") {
  CHECK_THROWS_AS(ForbiddenFamily::explicit_list({}), Error);
  CHECK_THROWS_AS(ForbiddenFamily::explicit_list({Graph::empty(EdgeIndexSet::pairs(3))}), Error);
  const auto p2 = ForbiddenFamily::explicit_list({path_graph(EdgeIndexSet::pairs(3), 2)});
  CHECK(p2.loopless_even());
  CHECK_FALSE(ForbiddenFamily::explicit_list({complete_graph(EdgeIndexSet::pairs(3), 3)}).loopless_even());
}
