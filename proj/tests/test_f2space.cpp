#include <doctest.h>

#include "f2lab/f2space.hpp"
#include "f2lab/kernels.hpp"
#include "oracles.hpp"

#include <array>
#include <set>

using namespace f2lab;

TEST_CASE("index positions follow (min,max) lex order") {
  const auto pl2 = EdgeIndexSet::pairs_loops(2);
  CHECK(pl2.size() == 3);
  CHECK(pl2.position(1, 1) == 0);
  CHECK(pl2.position(1, 2) == 1);
  CHECK(pl2.position(2, 2) == 2);

  const auto p4 = EdgeIndexSet::pairs(4);
  CHECK(p4.position(1, 2) == 0);
  CHECK(p4.position(3, 4) == 5);
  CHECK(p4.position(4, 3) == 5);

  const std::array<int, 1> loop{2};
  CHECK_THROWS_AS(p4.position(loop), Error);
  try {
    p4.position(loop);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::LoopNotAllowed);
  }
  try {
    p4.position(1, 5);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::VertexOutOfRange);
  }
}

TEST_CASE("index enumeration is a bijection") {
  for (int n = 1; n <= 9; ++n) {
    for (auto space : {EdgeIndexSet::pairs(n), EdgeIndexSet::pairs_loops(n)}) {
      std::set<int> seen;
      IndexKey prev{0, 0};
      for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
          if (i == j && !space.has_loops()) continue;
          const int p = space.position(i, j);
          CHECK(seen.insert(p).second);
          const IndexKey k = space.key(p);
          CHECK(k.lo == i);
          CHECK(k.hi == j);
          CHECK(prev < k);
          prev = k;
        }
      CHECK(static_cast<int>(seen.size()) == space.size());
      if (!seen.empty()) CHECK(*seen.rbegin() == space.size() - 1);
    }
  }
  CHECK(EdgeIndexSet::pairs(5).size() == 10);
}

TEST_CASE("indices within a vertex set") {
  const auto s = EdgeIndexSet::pairs_loops(4);
  const Bits b = s.indices_within(0b0101);  // vertices 1, 3
  CHECK(b.count() == 3);
  CHECK(b.test(static_cast<std::size_t>(s.position(1, 1))));
  CHECK(b.test(static_cast<std::size_t>(s.position(1, 3))));
  CHECK(b.test(static_cast<std::size_t>(s.position(3, 3))));
}

TEST_CASE("spectrum of constants and Walsh functions") {
  const auto space = EdgeIndexSet::generic(5);
  const Spectrum one = walsh_transform(ValueTable::constant(space, 1.0));
  CHECK(std::abs(one[0] - 1.0) < 1e-12);
  for (std::uint64_t xi = 1; xi < one.size(); ++xi) CHECK(std::abs(one[xi]) < 1e-12);

  for (std::uint64_t xi = 0; xi < 32; ++xi) {
    const Spectrum s = walsh_transform(ValueTable::walsh_function(space, xi));
    for (std::uint64_t z = 0; z < 32; ++z) CHECK(std::abs(s[z] - (z == xi ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("Walsh product rule is exact") {
  for (int N = 0; N <= 4; ++N) {
    const auto space = EdgeIndexSet::generic(N);
    const std::uint64_t size = space.point_count();
    for (std::uint64_t a = 0; a < size; ++a)
      for (std::uint64_t b = 0; b < size; ++b) {
        const auto wa = ValueTable::walsh_function(space, a);
        const auto wb = ValueTable::walsh_function(space, b);
        const auto wab = ValueTable::walsh_function(space, a ^ b);
        for (std::uint64_t x = 0; x < size; ++x) CHECK(wa[x] * wb[x] == wab[x]);
      }
  }
}

TEST_CASE("transform matches the naive double loop") {
  std::mt19937_64 rng(11);
  for (int N = 0; N <= 8; ++N) {
    const auto space = EdgeIndexSet::generic(N);
    auto v = oracle::random_complex(rng, space.point_count());
    const Spectrum s = walsh_transform(ValueTable(space, v));
    const auto ref = oracle::walsh(v);
    CHECK(oracle::max_abs_diff(s.coefficients(), ref) < 1e-12);
    CHECK(std::abs(s[0] - ValueTable(space, v).mean()) < 1e-12);
  }
}

TEST_CASE("serial and parallel kernels agree") {
  std::mt19937_64 rng(12);
  for (int N : {4, 13}) {
    auto v = oracle::random_complex(rng, std::uint64_t{1} << N);
    auto a = v, b = v;
    kernels::serial::walsh_butterfly(a);
    kernels::parallel::walsh_butterfly(b);
    CHECK(oracle::max_abs_diff(a, b) == 0.0);
  }
  std::vector<std::int64_t> ints(1u << 13);
  for (auto& x : ints) x = static_cast<std::int64_t>(rng() % 7) - 3;
  auto ia = ints, ib = ints;
  kernels::serial::walsh_butterfly(ia);
  kernels::parallel::walsh_butterfly(ib);
  CHECK(ia == ib);

  auto f = oracle::random_complex(rng, 1u << 5);
  CHECK(kernels::serial::gowers_naive_average(f, 5, 2) == kernels::parallel::gowers_naive_average(f, 5, 2));
  CHECK(kernels::serial::gowers_recursive_power(f, 5, 3) == kernels::parallel::gowers_recursive_power(f, 5, 3));
}

TEST_CASE("norms of simple tables") {
  const auto space = EdgeIndexSet::generic(4);
  const auto c = ValueTable::constant(space, Complex(0.0, -3.0));
  for (double p : {1.0, 2.0, 4.0, double(INFINITY)}) CHECK(std::abs(lp_norm(c, p) - 3.0) < 1e-12);

  std::vector<Complex> delta(16, 0.0);
  delta[5] = 1.0;
  const ValueTable d(space, delta);
  CHECK(std::abs(lp_norm(d, 1) - 1.0 / 16) < 1e-15);
  CHECK(std::abs(ellp_norm(walsh_transform(d), INFINITY) - 1.0 / 16) < 1e-15);
  try {
    lp_norm(d, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnsupportedExponent);
  }
}

TEST_CASE("Gowers norms of constants and of the even-edge family") {
  const auto space = EdgeIndexSet::pairs(3);
  const auto one = ValueTable::constant(space, 1.0);
  for (int d = 1; d <= 3; ++d) {
    CHECK(std::abs(gowers_norm(one, d, GowersMethod::Naive) - 1.0) < 1e-12);
    CHECK(std::abs(gowers_norm(one, d, GowersMethod::Recursive) - 1.0) < 1e-12);
  }
  CHECK(std::abs(gowers_norm(one, 2, GowersMethod::Spectral) - 1.0) < 1e-12);

  std::vector<Complex> v(space.point_count());
  for (std::uint64_t x = 0; x < v.size(); ++x) v[x] = (std::popcount(x) % 2 == 0 ? 1.0 : 0.0) - 0.5;
  const ValueTable f(space, v);
  for (auto m : {GowersMethod::Naive, GowersMethod::Recursive, GowersMethod::Spectral}) {
    const double u2 = gowers_norm(f, 2, m);
    CHECK(u2 >= 0.5 - 1e-12);
    CHECK(std::abs(u2 - 0.5) < 1e-12);
  }
  CHECK(std::abs(oracle::gowers(v, 3, 2) - 0.5) < 1e-12);
}

TEST_CASE("Gowers methods agree with the literal definition") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const auto space = EdgeIndexSet::generic(5);
    auto v = oracle::random_complex(rng, 32);
    const ValueTable f(space, v);
    const double ref = oracle::gowers(v, 5, 3);
    CHECK(std::abs(gowers_norm(f, 3, GowersMethod::Recursive) - ref) < 1e-9);
    CHECK(std::abs(gowers_norm(f, 3, GowersMethod::Naive) - ref) < 1e-9);
    CHECK(std::abs(gowers_norm(f, 1, GowersMethod::Naive) - std::abs(f.mean())) < 1e-12);
    CHECK(std::abs(gowers_norm(f, 1, GowersMethod::Recursive) - std::abs(f.mean())) < 1e-12);
  }
  for (int N = 1; N <= 4; ++N) {
    auto v = oracle::random_real(rng, std::uint64_t{1} << N);
    const ValueTable f(EdgeIndexSet::generic(N), v);
    const double ref = oracle::gowers(v, N, 2);
    CHECK(std::abs(gowers_norm(f, 2, GowersMethod::Spectral) - ref) < 1e-9);
    CHECK(std::abs(gowers_norm(f, 2, GowersMethod::Recursive) - ref) < 1e-9);
  }
}

TEST_CASE("Gowers budget and order errors") {
  const auto f = ValueTable::constant(EdgeIndexSet::generic(10), 1.0);
  try {
    gowers_norm(f, 3, GowersMethod::Naive);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
  try {
    gowers_norm(f, 3, GowersMethod::Spectral);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnsupportedOrder);
  }
  try {
    gowers_norm(f, 1, GowersMethod::Spectral);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnsupportedOrder);
  }
  GowersLimits tight;
  tight.recursive_max_dim = 8;
  CHECK_FALSE(gowers_supported(10, 2, GowersMethod::Recursive, tight));
  CHECK(gowers_supported(10, 2, GowersMethod::Recursive));
}
