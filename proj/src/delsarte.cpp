#include "f2lab/delsarte.hpp"

#include "f2lab/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace f2lab {

std::vector<std::vector<int>> position_permutations(const EdgeIndexSet& space) {
  const int N = space.size();
  if (space.kind() == IndexKind::Generic) {
    std::vector<int> id(static_cast<std::size_t>(N));
    std::iota(id.begin(), id.end(), 0);
    return {id};
  }
  const int n = space.n();
  if (n > 8) throw Error(Errc::TooLarge, "vertex permutations of [" + std::to_string(n) + "]");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    std::vector<int> map(static_cast<std::size_t>(N));
    for (int p = 0; p < N; ++p) {
      const IndexKey k = space.key(p);
      const int a = perm[static_cast<std::size_t>(k.lo - 1)];
      const int b = perm[static_cast<std::size_t>(k.hi - 1)];
      map[static_cast<std::size_t>(p)] = space.position(std::min(a, b), std::max(a, b));
    }
    out.push_back(std::move(map));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

std::uint64_t apply(const std::vector<int>& map, std::uint64_t x) {
  std::uint64_t y = 0;
  while (x) {
    const int p = std::countr_zero(x);
    x &= x - 1;
    y |= std::uint64_t{1} << map[static_cast<std::size_t>(p)];
  }
  return y;
}

}  // namespace

std::vector<int> point_orbits(const EdgeIndexSet& space, int& orbit_count) {
  if (space.size() > 20) throw Error(Errc::TooLarge, "orbit table for N = " + std::to_string(space.size()));
  const auto perms = position_permutations(space);
  const std::uint64_t size = space.point_count();
  std::vector<int> orbit(size, -1);
  orbit_count = 0;
  for (std::uint64_t x = 0; x < size; ++x) {
    if (orbit[x] >= 0) continue;
    for (const auto& m : perms) orbit[apply(m, x)] = orbit_count;
    ++orbit_count;
  }
  return orbit;
}

Rational simplex_maximize(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                          const std::vector<Rational>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  const std::size_t cols = n + m + 1;  // variables, slacks, rhs
  std::vector<std::vector<Rational>> T(m + 1, std::vector<Rational>(cols, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) throw Error(Errc::InvalidArgument, "simplex needs b >= 0");
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][cols - 1] = b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) T[m][j] = -c[j];

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j)
      if (T[m][j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      const Rational ratio = T[i][cols - 1] / T[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw Error(Errc::InvalidArgument, "linear program is unbounded");
    const Rational piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      const Rational f = T[i][enter];
      for (std::size_t j = 0; j < cols; ++j)
        if (T[leave][j] != 0) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  return T[m][cols - 1];
}

LpBound delsarte_bound(const EdgeIndexSet& space, std::span<const std::uint64_t> diffs) {
  int count = 0;
  const auto orbit = point_orbits(space, count);
  const std::uint64_t size = space.point_count();
  std::vector<std::int64_t> orbit_size(static_cast<std::size_t>(count), 0);
  std::vector<std::uint64_t> rep(static_cast<std::size_t>(count), 0);
  for (std::uint64_t x = size; x-- > 0;) {
    ++orbit_size[static_cast<std::size_t>(orbit[x])];
    rep[static_cast<std::size_t>(orbit[x])] = x;
  }
  std::vector<std::int64_t> hit(static_cast<std::size_t>(count), 0);
  for (std::uint64_t z : diffs) ++hit[static_cast<std::size_t>(orbit[z])];
  std::vector<bool> forbidden(static_cast<std::size_t>(count), false);
  for (int o = 0; o < count; ++o) {
    if (hit[static_cast<std::size_t>(o)] == 0) continue;
    if (hit[static_cast<std::size_t>(o)] != orbit_size[static_cast<std::size_t>(o)])
      throw Error(Errc::InvalidArgument, "difference set is not invariant under vertex permutations");
    forbidden[static_cast<std::size_t>(o)] = true;
  }
  const int zero = orbit[0];

  std::vector<int> free;
  for (int o = 0; o < count; ++o)
    if (o != zero && !forbidden[static_cast<std::size_t>(o)]) free.push_back(o);
  std::vector<int> column(static_cast<std::size_t>(count), -1);
  for (std::size_t j = 0; j < free.size(); ++j) column[static_cast<std::size_t>(free[j])] = static_cast<int>(j);

  // character sums over each orbit, one row per character orbit
  std::vector<std::vector<std::int64_t>> K(static_cast<std::size_t>(count),
                                           std::vector<std::int64_t>(static_cast<std::size_t>(count), 0));
  for (int s = 0; s < count; ++s) {
    const std::uint64_t sv = rep[static_cast<std::size_t>(s)];
    auto& row = K[static_cast<std::size_t>(s)];
    for (std::uint64_t x = 0; x < size; ++x)
      row[static_cast<std::size_t>(orbit[x])] += (std::popcount(sv & x) & 1) ? -1 : 1;
  }

  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  for (int s = 0; s < count; ++s) {
    std::vector<Rational> r(free.size(), Rational(0));
    for (int o : free)
      r[static_cast<std::size_t>(column[static_cast<std::size_t>(o)])] =
          Rational(-K[static_cast<std::size_t>(s)][static_cast<std::size_t>(o)], orbit_size[static_cast<std::size_t>(o)]);
    A.push_back(std::move(r));
    b.emplace_back(1);  // the zero orbit contributes a(0) * chi(0) = 1
  }
  std::vector<Rational> c(free.size(), Rational(1));
  LpBound out;
  out.value = Rational(1) + simplex_maximize(A, b, c);
  out.bound = static_cast<std::uint64_t>(boost::multiprecision::numerator(out.value) /
                                         boost::multiprecision::denominator(out.value));
  out.variables = static_cast<int>(free.size());
  out.constraints = count;
  return out;
}

}  // namespace f2lab
