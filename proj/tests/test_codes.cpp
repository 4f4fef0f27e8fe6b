#include <doctest.h>

#include "f2lab/codes.hpp"
#include "f2lab/delsarte.hpp"
#include "oracles.hpp"

#include <random>

using namespace f2lab;

namespace {

ForbiddenFamily p2_family() { return ForbiddenFamily::explicit_list({path_graph(EdgeIndexSet::pairs(3), 2)}); }

CodeFamily random_code(const EdgeIndexSet& space, std::span<const std::uint64_t> diffs, CodeKind kind,
                       std::mt19937_64& rng) {
  // random greedy: visit points in random order, keep those that stay valid
  std::vector<std::uint64_t> order(space.point_count());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  CodeFamily f(space);
  for (auto x : order) {
    if (rng() % 4 == 0) continue;
    f.insert(x);
    if (find_violation(f, diffs, kind)) f.erase(x);
  }
  return f;
}

}  // namespace

TEST_CASE("code predicate examples") {
  // even-edge graphs avoid any single odd-edge graph
  const auto sp = EdgeIndexSet::pairs(4);
  const auto evens = CodeFamily::from_predicate(sp, [](std::uint64_t x) { return std::popcount(x) % 2 == 0; });
  for (int e : {1, 3}) {
    const auto w = ForbiddenFamily::explicit_list({path_graph(EdgeIndexSet::pairs(5), e)});
    CHECK(is_code(evens, w, CodeKind::Code));
  }
  CHECK(evens.density() == Dyadic(1, 1));

  for (auto kind : {CodeKind::Code, CodeKind::HJCode})
    CHECK(is_code(CodeFamily::from_points(sp, {13}), ForbiddenFamily::cliques(), kind));

  const auto sl = EdgeIndexSet::pairs_loops(2);
  const auto pair = CodeFamily::from_points(sl, {0, 1});
  const auto v = find_violation(pair, ForbiddenFamily::cliques_looped(), CodeKind::HJCode);
  REQUIRE(v.has_value());
  CHECK(v->smaller == 0);
  CHECK(v->larger == 1);
}

TEST_CASE("find_violation agrees with the literal predicate") {
  std::mt19937_64 rng(21);
  const auto p2 = p2_family();
  for (int trial = 0; trial < 200; ++trial) {
    const bool loops = trial % 2;
    const auto sp = loops ? EdgeIndexSet::pairs_loops(3) : EdgeIndexSet::pairs(4);
    const auto& fam = loops ? ForbiddenFamily::cliques_looped() : p2;
    const auto kind = (trial % 4 < 2) ? CodeKind::Code : CodeKind::HJCode;
    const auto diffs = difference_words(sp, fam);
    std::vector<std::uint64_t> members;
    for (std::uint64_t x = 0; x < sp.point_count(); ++x)
      if (rng() % 8 == 0) members.push_back(x);
    const auto f = CodeFamily::from_points(sp, members);
    const auto forbidden = [&](std::uint64_t z) { return std::binary_search(diffs.begin(), diffs.end(), z); };
    CHECK(is_code(f, fam, kind) == oracle::is_code_literal(members, kind == CodeKind::HJCode, forbidden));
  }
}

TEST_CASE("extremal densities match exhaustive enumeration") {
  struct Case {
    EdgeIndexSet space;
    ForbiddenFamily fam;
    CodeKind kind;
  };
  const std::vector<Case> cases = {
      {EdgeIndexSet::pairs(3), p2_family(), CodeKind::Code},
      {EdgeIndexSet::pairs(3), p2_family(), CodeKind::HJCode},
      {EdgeIndexSet::pairs(3), ForbiddenFamily::cliques(), CodeKind::Code},
      {EdgeIndexSet::pairs(3), ForbiddenFamily::cliques(), CodeKind::HJCode},
      {EdgeIndexSet::pairs_loops(1), ForbiddenFamily::cliques_looped(), CodeKind::HJCode},
      {EdgeIndexSet::pairs_loops(2), ForbiddenFamily::cliques_looped(), CodeKind::Code},
      {EdgeIndexSet::pairs_loops(2), ForbiddenFamily::cliques_looped(), CodeKind::HJCode},
      {EdgeIndexSet::generic(4), ForbiddenFamily::cliques(), CodeKind::Code},
  };
  for (const auto& c : cases) {
    std::vector<std::uint64_t> diffs;
    if (c.space.kind() == IndexKind::Generic)
      diffs = {1, 6, 9, 15};  // arbitrary difference set on F_2^4
    else
      diffs = difference_words(c.space, c.fam);
    const auto forbidden = [&](std::uint64_t z) { return std::binary_search(diffs.begin(), diffs.end(), z); };
    const std::size_t expect = oracle::max_code_size(c.space.size(), c.kind == CodeKind::HJCode, forbidden);
    const auto r = extremal_search(c.space, diffs, c.kind);
    CHECK(r.exact);
    CHECK(r.cardinality == expect);
    CHECK_FALSE(find_violation(r.witness, diffs, c.kind).has_value());
  }
  CHECK(extremal_search(EdgeIndexSet::pairs(3), p2_family(), CodeKind::Code).density == Dyadic(1, 2));
  CHECK(extremal_search(EdgeIndexSet::pairs_loops(1), ForbiddenFamily::cliques_looped(), CodeKind::HJCode).density ==
        Dyadic(1, 1));
  const auto k5 = ForbiddenFamily::explicit_list({complete_graph(EdgeIndexSet::pairs(5), 5)});
  CHECK(extremal_search(EdgeIndexSet::pairs(3), k5, CodeKind::Code).density == Dyadic(1, 0));
}

TEST_CASE("lex-least witness and witness enumeration") {
  const auto sp = EdgeIndexSet::pairs(3);
  SearchOptions o;
  o.all_witnesses = true;
  const auto r = extremal_search(sp, p2_family(), CodeKind::Code, o);
  CHECK(r.witness_lex_least);
  CHECK(r.witnesses_complete);
  // brute force every maximum code and take the least member list
  const auto diffs = difference_words(sp, p2_family());
  const auto forbidden = [&](std::uint64_t z) { return std::binary_search(diffs.begin(), diffs.end(), z); };
  std::vector<std::vector<std::uint64_t>> all;
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    if (std::popcount(mask) != 2) continue;
    std::vector<std::uint64_t> m;
    for (std::uint64_t x = 0; x < 8; ++x)
      if ((mask >> x) & 1u) m.push_back(x);
    if (oracle::is_code_literal(m, false, forbidden)) all.push_back(m);
  }
  std::sort(all.begin(), all.end());
  REQUIRE(r.witnesses.size() == all.size());
  CHECK(r.witness.members() == all.front());
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(r.witnesses[i].members() == all[i]);

  const auto r4 = extremal_search(EdgeIndexSet::pairs(4), p2_family(), CodeKind::Code, o);
  CHECK(r4.density == Dyadic(1, 2));
  CHECK(r4.witnesses.size() == 256);
  CHECK(r4.witnesses_complete);
  for (const auto& w : r4.witnesses) CHECK_FALSE(find_violation(w, diffs, CodeKind::Code).has_value());
}

TEST_CASE("monotonicity of extremal densities") {
  const auto t = monotonicity_table(p2_family(), CodeKind::Code, false, 3, 5);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0].density == Dyadic(1, 2));
  CHECK(t.rows[1].density == Dyadic(1, 2));
  CHECK(t.rows[2].density == Dyadic(3, 4));
  for (const auto& r : t.rows) CHECK(r.exact);
  CHECK(t.non_increasing);

  const auto tl = monotonicity_table(ForbiddenFamily::cliques_looped(), CodeKind::HJCode, true, 1, 3);
  CHECK(tl.rows[0].density == Dyadic(1, 1));
  for (const auto& r : tl.rows) CHECK(r.exact);
  CHECK(tl.non_increasing);

  const auto k5 = ForbiddenFamily::explicit_list({complete_graph(EdgeIndexSet::pairs(5), 5)});
  const auto tk = monotonicity_table(k5, CodeKind::Code, false, 3, 4);
  CHECK(tk.rows[0].density == Dyadic(1, 0));
  CHECK(tk.rows[1].density == Dyadic(1, 0));
}

TEST_CASE("linear-programming bound") {
  const auto p2 = p2_family();
  const int expect[] = {2, 16, 192};
  for (int n = 3; n <= 5; ++n) {
    const auto sp = EdgeIndexSet::pairs(n);
    const auto b = delsarte_bound(sp, difference_words(sp, p2));
    CHECK(b.value == Rational(expect[n - 3]));
  }
  // a bound never below the true optimum
  for (int n = 2; n <= 4; ++n) {
    const auto sp = EdgeIndexSet::pairs(n);
    const auto diffs = difference_words(sp, ForbiddenFamily::cliques());
    const auto r = extremal_search(sp, diffs, CodeKind::Code);
    CHECK(delsarte_bound(sp, diffs).bound >= r.cardinality);
  }
  // orbits partition the space and are closed under the permutations
  int count = 0;
  const auto sp = EdgeIndexSet::pairs(4);
  const auto orbit = point_orbits(sp, count);
  CHECK(count == 11);  // graphs on 4 vertices up to isomorphism
  CHECK_THROWS_AS(delsarte_bound(sp, std::vector<std::uint64_t>{1}), Error);
  // simplex sanity: max x + y, x + 2y <= 4, 3x + y <= 6
  const Rational v = simplex_maximize({{1, 2}, {3, 1}}, {4, 6}, {1, 1});
  CHECK(v == Rational(14, 5));
}

TEST_CASE("sections of codes") {
  std::mt19937_64 rng(22);
  const auto p2 = p2_family();
  for (int trial = 0; trial < 100; ++trial) {
    const bool loops = trial % 2;
    const auto sp = loops ? EdgeIndexSet::pairs_loops(3) : EdgeIndexSet::pairs(4);
    const auto& fam = loops ? ForbiddenFamily::cliques_looped() : p2;
    const auto kind = (trial % 4 < 2) ? CodeKind::Code : CodeKind::HJCode;
    const auto f = random_code(sp, difference_words(sp, fam), kind, rng);
    std::vector<std::pair<int, bool>> fixed;
    for (int p = 0; p < sp.size(); ++p)
      if (rng() % 3 == 0) fixed.emplace_back(p, rng() & 1u);
    const auto s = section_restrict(f, fixed);
    CHECK_FALSE(find_violation(s.family, section_differences(s, fam), kind).has_value());
  }

  const auto sp = EdgeIndexSet::pairs(4);
  const auto f = random_code(sp, difference_words(sp, p2), CodeKind::Code, rng);
  CHECK(section_restrict(f, {}).family.table() == f.table());
  const auto full = section_restrict(CodeFamily::full(sp), {{0, true}, {3, false}});
  CHECK(full.family.cardinality() == 16);

  // average of section densities over all assignments of vertex 4
  Rational avg = 0;
  for (std::uint64_t a = 0; a < 8; ++a) avg += vertex_section(f, a).family.density().to_rational();
  CHECK(avg / 8 == f.density().to_rational());
  CHECK_THROWS_AS(section_restrict(f, {{6, true}}), Error);

  const auto g = section_as_graph_family(vertex_section(f, 0));
  CHECK(g.space() == EdgeIndexSet::pairs(3));
  CHECK(is_code(g, p2, CodeKind::Code));
}

TEST_CASE("odd-edge forbidden graph admits the even-edge code") {
  const auto sp = EdgeIndexSet::pairs(4);
  for (int e : {1, 3}) {
    const auto w = ForbiddenFamily::explicit_list({path_graph(EdgeIndexSet::pairs(5), e)});
    const auto r = extremal_search(sp, w, CodeKind::Code);
    CHECK(r.density >= Dyadic(1, 1));
  }
}

TEST_CASE("loop padding transfer") {
  const auto sp = EdgeIndexSet::pairs(3);
  const auto f = CodeFamily::from_points(sp, {0, 3});
  const auto g = loop_padding_transfer(f);
  CHECK(g.space() == EdgeIndexSet::pairs_loops(3));
  CHECK(g.cardinality() == 2 * 3);  // three nonempty even vertex sets
  for (auto x : g.members()) {
    int loops = 0;
    for (int v = 1; v <= 3; ++v) loops += (x >> g.space().position(v, v)) & 1u;
    CHECK((loops == 2));
  }
  CHECK_THROWS_AS(loop_padding_transfer(g), Error);
}
