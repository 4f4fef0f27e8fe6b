#include <doctest.h>

#include "f2lab/subspaces.hpp"
#include "oracles.hpp"

#include <numeric>
#include <random>
#include <set>

using namespace f2lab;

namespace {

// Literal Id_I + c: an index inside (I choose 2) reads x at the pulled-back pair.
std::uint64_t central_oracle(int n, const std::vector<int>& I, std::uint64_t c, std::uint64_t x) {
  const auto cod = EdgeIndexSet::pairs(n);
  const auto dom = EdgeIndexSet::pairs(static_cast<int>(I.size()));
  std::uint64_t z = 0;
  for (int p = 0; p < cod.size(); ++p) {
    const auto k = cod.key(p);
    const auto a = std::find(I.begin(), I.end(), k.lo), b = std::find(I.begin(), I.end(), k.hi);
    bool bit;
    if (a != I.end() && b != I.end())
      bit = (x >> dom.position(static_cast<int>(a - I.begin()) + 1, static_cast<int>(b - I.begin()) + 1)) & 1u;
    else
      bit = (c >> p) & 1u;
    if (bit) z |= std::uint64_t{1} << p;
  }
  return z;
}

// Literal c + sum_q y(q) b_q, with b_q(p) = 1 iff p lies in the union of the
// wildcards of q and meets each of them.
std::uint64_t hj_oracle(int n, const std::vector<std::vector<int>>& W, std::uint64_t c, std::uint64_t y) {
  const auto cod = EdgeIndexSet::pairs_loops(n);
  const auto dom = EdgeIndexSet::pairs_loops(static_cast<int>(W.size()));
  std::uint64_t z = c;
  for (int q = 0; q < dom.size(); ++q) {
    if (!((y >> q) & 1u)) continue;
    const auto kq = dom.key(q);
    std::set<int> uni(W[static_cast<std::size_t>(kq.lo - 1)].begin(), W[static_cast<std::size_t>(kq.lo - 1)].end());
    uni.insert(W[static_cast<std::size_t>(kq.hi - 1)].begin(), W[static_cast<std::size_t>(kq.hi - 1)].end());
    for (int p = 0; p < cod.size(); ++p) {
      const auto k = cod.key(p);
      if (!uni.count(k.lo) || !uni.count(k.hi)) continue;
      bool meets = true;
      for (int i : {kq.lo, kq.hi}) {
        const auto& w = W[static_cast<std::size_t>(i - 1)];
        if (std::find(w.begin(), w.end(), k.lo) == w.end() && std::find(w.begin(), w.end(), k.hi) == w.end())
          meets = false;
      }
      if (meets) z ^= std::uint64_t{1} << p;
    }
  }
  return z;
}

struct RandomHJ {
  std::vector<std::vector<int>> wild;
  std::uint64_t constant = 0;
};

RandomHJ random_hj(int n, int m, std::mt19937_64& rng, bool block = false) {
  // assign each vertex to a wildcard or to none, then order by minima
  RandomHJ r;
  while (true) {
    std::vector<std::vector<int>> w(static_cast<std::size_t>(m));
    if (block) {
      int v = 1 + static_cast<int>(rng() % 2);
      for (int i = 0; i < m && v <= n; ++i) {
        const int len = 1 + static_cast<int>(rng() % 2);
        for (int t = 0; t < len && v <= n; ++t) w[static_cast<std::size_t>(i)].push_back(v++);
      }
    } else {
      for (int v = 1; v <= n; ++v) {
        const auto slot = rng() % static_cast<std::uint64_t>(m + 1);
        if (slot < static_cast<std::uint64_t>(m)) w[slot].push_back(v);
      }
    }
    if (std::any_of(w.begin(), w.end(), [](const auto& s) { return s.empty(); })) continue;
    std::sort(w.begin(), w.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    r.wild = w;
    break;
  }
  const auto cod = EdgeIndexSet::pairs_loops(n);
  std::set<int> used;
  for (auto& s : r.wild) used.insert(s.begin(), s.end());
  for (int p = 0; p < cod.size(); ++p) {
    const auto k = cod.key(p);
    if (used.count(k.lo) && used.count(k.hi)) continue;
    if (rng() & 1u) r.constant |= std::uint64_t{1} << p;
  }
  return r;
}

}  // namespace

TEST_CASE("central embedding examples") {
  const auto p4 = EdgeIndexSet::pairs(4);
  const CentralEmbedding e(4, {1, 2, 4}, GraphPoint(p4, Graph::from_edges(p4, {{3, 4}}).bits()));
  const auto p3 = EdgeIndexSet::pairs(3);
  const auto x = GraphPoint(p3, Bits::from_word(std::uint64_t{1} << p3.position(1, 3)));
  CHECK(e.apply(x).bits == Graph::from_edges(p4, {{1, 4}, {3, 4}}).bits());
  CHECK(e.apply(GraphPoint(p3, Bits{})) == e.constant());

  const CentralEmbedding id(4, {1, 2, 3, 4}, GraphPoint(p4, Bits{}));
  for (std::uint64_t w = 0; w < 64; ++w) CHECK(id.apply_bits(Bits::from_word(w)).to_index() == w);

  CHECK_THROWS_AS(CentralEmbedding(4, {1, 2}, GraphPoint(p4, Graph::from_edges(p4, {{1, 2}}).bits())), Error);
  CHECK_THROWS_AS(CentralEmbedding(4, {2, 1}, GraphPoint(p4, Bits{})), Error);
  CHECK_THROWS_AS(CentralEmbedding(4, {1, 5}, GraphPoint(p4, Bits{})), Error);
  CHECK_THROWS_AS(e.apply(GraphPoint(p4, Bits{})), Error);
}

TEST_CASE("central embeddings match the definition") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    std::vector<int> I;
    for (int v = 1; v <= n; ++v)
      if (rng() % 3) I.push_back(v);
    if (I.size() < 2) continue;
    const auto cod = EdgeIndexSet::pairs(n);
    const auto probe = CentralEmbedding(n, I, GraphPoint(cod, Bits{}));
    const std::uint64_t c = (rng() % cod.point_count()) & ~probe.support_mask().to_index();
    const CentralEmbedding e(n, I, GraphPoint(cod, Bits::from_word(c)));
    std::set<std::uint64_t> image;
    for (std::uint64_t x = 0; x < e.domain().point_count(); ++x) {
      const auto z = e.apply_bits(Bits::from_word(x)).to_index();
      CHECK(z == central_oracle(n, I, c, x));
      CHECK(e.in_image(Bits::from_word(z)));
      image.insert(z);
    }
    CHECK(image.size() == e.domain().point_count());
  }
}

TEST_CASE("hj embedding examples") {
  const auto pl3 = EdgeIndexSet::pairs_loops(3);
  const HJEmbedding e(3, {{1, 2}, {3}}, GraphPoint(pl3, Bits{}));
  const auto pl2 = EdgeIndexSet::pairs_loops(2);
  const auto y = Graph::from_edges(pl2, {{1}, {1, 2}});
  const auto z = e.apply(GraphPoint(pl2, y.bits()));
  CHECK(z.bits == Graph::from_edges(pl3, {{1}, {2}, {1, 2}, {1, 3}, {2, 3}}).bits());
  CHECK(e.is_block());

  const auto id = HJEmbedding::identity(3);
  for (std::uint64_t w = 0; w < 64; ++w) CHECK(id.apply_bits(Bits::from_word(w)).to_index() == w);

  CHECK_FALSE(HJEmbedding(3, {{1, 3}, {2}}, GraphPoint(pl3, Bits{})).is_block());
  CHECK_THROWS_AS(HJEmbedding(3, {{2}, {1}}, GraphPoint(pl3, Bits{})), Error);
  CHECK_THROWS_AS(HJEmbedding(3, {{1, 2}, {2}}, GraphPoint(pl3, Bits{})), Error);
  CHECK_THROWS_AS(HJEmbedding(3, {{1}, {}}, GraphPoint(pl3, Bits{})), Error);
  CHECK_THROWS_AS(HJEmbedding(3, {{1}}, GraphPoint(pl3, Graph::from_edges(pl3, {{1}}).bits())), Error);
  CHECK_THROWS_AS(HJEmbedding(3, {{4}}, GraphPoint(pl3, Bits{})), Error);
}

TEST_CASE("hj embeddings: definition, injectivity, image and linearity") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % std::min(n, 3));
    const auto r = random_hj(n, m, rng, trial % 3 == 0);
    const auto cod = EdgeIndexSet::pairs_loops(n);
    const HJEmbedding e(n, r.wild, GraphPoint(cod, Bits::from_word(r.constant)));
    std::set<std::uint64_t> image;
    const std::uint64_t size = e.domain().point_count();
    for (std::uint64_t y = 0; y < size; ++y) {
      const auto z = e.apply_bits(Bits::from_word(y)).to_index();
      CHECK(z == hj_oracle(n, r.wild, r.constant, y));
      image.insert(z);
      const auto back = e.preimage(Bits::from_word(z));
      REQUIRE(back.has_value());
      CHECK(back->to_index() == y);
      for (std::uint64_t y2 = 0; y2 < size; y2 += 1 + rng() % 5) {
        const auto z2 = e.apply_bits(Bits::from_word(y2)).to_index();
        CHECK((z ^ z2) == e.linear(Bits::from_word(y ^ y2)).to_index());
        if ((y & y2) == y2) CHECK((z & z2) == z2);
      }
    }
    CHECK(image.size() == size);
    if (n <= 4 && m <= 2) {
      // image characterization over the whole codomain
      for (std::uint64_t z = 0; z < cod.point_count(); ++z) CHECK(e.in_image(Bits::from_word(z)) == (image.count(z) > 0));
    }
    // var sets pairwise disjoint
    Bits seen;
    for (const auto& v : e.var_sets()) {
      CHECK_FALSE(seen.intersects(v));
      seen |= v;
    }
  }
}

TEST_CASE("preimages of codes are codes") {
  std::mt19937_64 rng(43);
  const auto cl = ForbiddenFamily::cliques_looped();
  const auto p2 = ForbiddenFamily::explicit_list({path_graph(EdgeIndexSet::pairs(3), 2)});
  for (int trial = 0; trial < 100; ++trial) {
    const auto cod = EdgeIndexSet::pairs_loops(3);
    const auto diffs = difference_words(cod, cl);
    // random HJ-code by greedy insertion in random order
    std::vector<std::uint64_t> order(cod.point_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    CodeFamily g(cod);
    for (auto x : order) {
      g.insert(x);
      if (find_violation(g, diffs, CodeKind::HJCode)) g.erase(x);
    }
    const int m = 1 + static_cast<int>(rng() % 2);
    const auto r = random_hj(3, m, rng);
    const HJEmbedding e(3, r.wild, GraphPoint(cod, Bits::from_word(r.constant)));
    const auto pre = hj_preimage_family(e, g);
    CHECK(is_code(pre, cl, CodeKind::HJCode));
    CHECK(pre.density() == conditional_density(e, g));

    // central preimages of {P2}-codes
    const auto p4 = EdgeIndexSet::pairs(4);
    const auto pd = difference_words(p4, p2);
    CodeFamily h(p4);
    std::vector<std::uint64_t> order4(p4.point_count());
    std::iota(order4.begin(), order4.end(), 0);
    std::shuffle(order4.begin(), order4.end(), rng);
    for (auto x : order4) {
      h.insert(x);
      if (find_violation(h, pd, CodeKind::Code)) h.erase(x);
    }
    std::vector<int> A = {1, 2, 3, 4};
    A.erase(A.begin() + static_cast<long>(rng() % 4));
    const auto base = CentralEmbedding(4, A, GraphPoint(p4, Bits{}));
    const std::uint64_t c = (rng() % 64) & ~base.support_mask().to_index();
    const auto ce = central_partition_of_section(4, A, GraphPoint(p4, Bits::from_word(c)));
    const auto cp = central_preimage_family(ce, h);
    CHECK(is_code(cp, p2, CodeKind::Code));
    CHECK(cp.density() == conditional_density(ce, h));
  }
  const auto cod = EdgeIndexSet::pairs_loops(3);
  const HJEmbedding e(3, {{1}, {3}}, GraphPoint(cod, Graph::from_edges(cod, {{2}}).bits()));
  CHECK(hj_preimage_family(e, CodeFamily::full(cod)) == CodeFamily::full(e.domain()));
  const auto single = hj_preimage_family(e, CodeFamily::from_points(cod, {e.constant().bits.to_index()}));
  CHECK(single.members() == std::vector<std::uint64_t>{0});
}

TEST_CASE("central sections partition the space") {
  const auto p4 = EdgeIndexSet::pairs(4);
  const std::vector<int> A = {1, 2};
  const auto inside = CentralEmbedding(4, A, GraphPoint(p4, Bits{})).support_mask().to_index();
  std::vector<int> hits(64, 0);
  int count = 0;
  for (std::uint64_t x = 0; x < 64; ++x) {
    if (x & inside) continue;
    const auto e = central_partition_of_section(4, A, GraphPoint(p4, Bits::from_word(x)));
    ++count;
    for (std::uint64_t y = 0; y < 2; ++y) ++hits[e.apply_bits(Bits::from_word(y)).to_index()];
  }
  CHECK(count == 32);
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));

  const auto whole = central_partition_of_section(4, {1, 2, 3, 4}, GraphPoint(p4, Bits{}));
  CHECK(whole.domain().point_count() == 64);
  CHECK_THROWS_AS(central_partition_of_section(4, {1, 5}, GraphPoint(p4, Bits{})), Error);
  CHECK_THROWS_AS(central_partition_of_section(4, {1, 2}, GraphPoint(p4, Graph::from_edges(p4, {{1, 2}}).bits())),
                  Error);
}
