#pragma once

#include "f2lab/dyadic.hpp"
#include "f2lab/f2space.hpp"
#include "f2lab/subspaces.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace f2lab {

/// A nonempty set of index positions, sorted ascending.
using Monomial = std::vector<int>;

bool monomial_in(const Monomial& F, const Bits& x);

/// P(x) = alpha + sum_S lambda_S prod_{e in S} x(e) mod 1, with
/// lambda_S in 2^-(d-|S|+1) Z.
class NonclassicalPoly {
 public:
  NonclassicalPoly(EdgeIndexSet space, int degree_bound, DyadicTorus alpha = {},
                   std::map<Monomial, DyadicTorus> coeffs = {});

  const EdgeIndexSet& space() const { return space_; }
  int degree_bound() const { return d_; }
  const DyadicTorus& alpha() const { return alpha_; }
  const std::map<Monomial, DyadicTorus>& coeffs() const { return coeffs_; }

  DyadicTorus operator()(const Bits& x) const;
  /// Least d with all (d+1)-fold derivatives zero: max over nonzero
  /// lambda_S = j/2^a (j odd) of |S| + a - 1.
  int degree() const;
  std::vector<DyadicTorus> table() const;

 private:
  EdgeIndexSet space_;
  int d_;
  DyadicTorus alpha_;
  std::map<Monomial, DyadicTorus> coeffs_;
};

DyadicTorus eval_nonclassical(const NonclassicalPoly& P, const GraphPoint& x);
/// Delta_h P as a polynomial; its degree bound is its computed degree.
NonclassicalPoly derivative(const NonclassicalPoly& P, const GraphPoint& h);
std::vector<DyadicTorus> derivative(std::span<const DyadicTorus> table, std::uint64_t h);

/// Q(x) = alpha + sum_F lambda_F prod_{e in F} x(e) mod 2^k, 1 <= k <= 62.
class IntegerPoly {
 public:
  IntegerPoly(EdgeIndexSet space, int k, int degree_bound, std::uint64_t alpha = 0,
              std::map<Monomial, std::uint64_t> coeffs = {});

  const EdgeIndexSet& space() const { return space_; }
  int k() const { return k_; }
  std::uint64_t modulus_mask() const { return (std::uint64_t{1} << k_) - 1; }
  int degree_bound() const { return d_; }
  std::uint64_t alpha() const { return alpha_; }
  /// Nonzero coefficients only.
  const std::map<Monomial, std::uint64_t>& coeffs() const { return coeffs_; }
  std::uint64_t coefficient(const Monomial& F) const;

  std::uint64_t operator()(const Bits& x) const;
  /// Largest |F| with lambda_F != 0 mod 2^k (0 for constants).
  int degree() const;
  std::vector<std::uint64_t> table() const;

  friend bool operator==(const IntegerPoly&, const IntegerPoly&) = default;

 private:
  EdgeIndexSet space_;
  int k_;
  int d_;
  std::uint64_t alpha_;
  std::map<Monomial, std::uint64_t> coeffs_;
};

/// The multilinear representation of a table over Z_{2^k} (Moebius inversion).
IntegerPoly integer_poly_from_table(EdgeIndexSet space, int k, std::span<const std::uint64_t> values);

struct IntegerForm {
  IntegerPoly q;
  DyadicTorus alpha;
};

/// P = alpha + 2^-d Q mod 1, Q a d-integer polynomial (d = degree bound of P).
IntegerForm to_integer_poly(const NonclassicalPoly& P);

/// Q o e as a k-integer polynomial on the domain of e.
IntegerPoly restrict_to_hj(const IntegerPoly& Q, const HJEmbedding& e);

/// Type of a set of vertex sets: ell = |uF| and the pattern over [ell].
struct TypeSignature {
  int ell = 0;
  std::vector<std::vector<int>> pattern;  // sorted, 1-based
  friend bool operator==(const TypeSignature&, const TypeSignature&) = default;
  friend auto operator<=>(const TypeSignature&, const TypeSignature&) = default;
};

TypeSignature type_of(const std::vector<std::vector<int>>& F);
TypeSignature type_of(const EdgeIndexSet& space, const Monomial& F);
std::vector<std::vector<int>> vertex_sets(const EdgeIndexSet& space, const Monomial& F);

/// Coefficients of Q agree on monomials inside X of equal type.
bool is_canonical_in(const IntegerPoly& Q, const std::vector<int>& X);

enum class CanonicalStrategy { Exhaustive, Greedy };

/// First X in lex order of ([n] choose r) (exhaustive) or by vertex-wise
/// extension (greedy); nullopt when none is found within max_candidates.
std::optional<std::vector<int>> find_canonical_set(const IntegerPoly& Q, int r, CanonicalStrategy strategy,
                                                   std::uint64_t max_candidates = 10'000'000);

struct DistributedType {
  std::vector<std::vector<int>> dlp;  // I_i n uF
  std::vector<int> dsg;
  std::vector<std::vector<std::vector<int>>> dt;  // dt[i][j] = local indices of u^i in p_j
  friend bool operator==(const DistributedType&, const DistributedType&) = default;
  friend auto operator<=>(const DistributedType&, const DistributedType&) = default;
};

/// F is listed in increasing lexicographic order inside the call.
DistributedType distributed_type(std::vector<std::vector<int>> F, const std::vector<std::vector<int>>& wildcards);

/// The hitting set H_T: monomials of the codomain with |F| <= d, F not inside
/// const(e), F inside const(e) u var(e), whose var-hit set is T.
std::vector<Monomial> hitting_set(const HJEmbedding& e, const Monomial& T, int d);

/// |{F in H_T : dt(F) = tau}| for each tau; requires |T| = d. Keys have dlp cleared.
std::map<DistributedType, std::uint64_t> distributed_type_counts(const HJEmbedding& e, const Monomial& T, int d);

/// restrict_to_hj under the degree-lowering hypotheses, checked.
IntegerPoly degree_lowering_restrict(const IntegerPoly& Q, const std::vector<int>& X, const HJEmbedding& e);

std::uint64_t factorial(int n);

}  // namespace f2lab
