#pragma once

// Linear-programming upper bound on the independence number of a Cayley
// graph on F_2^N (the conflict graph of Code search). Feasible points are
// a(x) = |S n (S + x)| / |S| for an independent S; the program is reduced
// to orbits of the vertex-permutation group of the graph space and solved
// exactly over the rationals.

#include "f2lab/dyadic.hpp"
#include "f2lab/f2space.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace f2lab {

/// For every permutation of [n], the induced permutation of positions.
/// Generic spaces get the identity only.
std::vector<std::vector<int>> position_permutations(const EdgeIndexSet& space);

/// orbit[x] = index of the orbit of point x (orbits numbered by least member).
std::vector<int> point_orbits(const EdgeIndexSet& space, int& orbit_count);

struct LpBound {
  Rational value;            // optimum of the relaxation
  std::uint64_t bound = 0;   // floor(value)
  int variables = 0;
  int constraints = 0;
};

/// Requires diffs to be invariant under vertex permutations (true for every
/// difference set built from a ForbiddenFamily).
LpBound delsarte_bound(const EdgeIndexSet& space, std::span<const std::uint64_t> diffs);

/// max c.x subject to A x <= b, x >= 0, with b >= 0; exact simplex with
/// Bland's rule. Throws InvalidArgument when unbounded.
Rational simplex_maximize(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                          const std::vector<Rational>& c);

}  // namespace f2lab
