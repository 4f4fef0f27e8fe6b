#pragma once

#include "f2lab/codes.hpp"
#include "f2lab/dyadic.hpp"
#include "f2lab/graphs.hpp"
#include "f2lab/polynomials.hpp"
#include "f2lab/subspaces.hpp"

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace f2lab {

/// Exact integer Walsh sums W(xi) = sum_{x in G} (-1)^{|x n xi|}; the Fourier
/// coefficient of 1_G at xi is W(xi) / 2^N.
std::vector<std::int64_t> walsh_counts(const CodeFamily& fam);

struct FourierPeak {
  std::uint64_t xi = 0;  // least index attaining the peak, 0 when the spectrum vanishes off 0
  std::int64_t count = 0;  // W(xi)
  Dyadic linf;             // ||(1_G - P[G])^||_inf
};

FourierPeak fourier_peak(const CodeFamily& fam);

struct UniformityReport {
  Dyadic density;
  Dyadic linf_fourier;
  std::map<int, double> gowers;  // order -> ||1_G - P[G]||_{U_d}
};

/// Throws BudgetExceeded when an order is out of reach of every evaluator.
UniformityReport uniformity_report(const CodeFamily& fam, const std::vector<int>& orders);

enum class BoostCase { Disjoint, Contained };

struct MonochromaticSet {
  std::vector<int> A;
  BoostCase kind;
};

/// Lexicographically least m-set independent in G0 (Disjoint), else the least
/// m-clique (Contained); nullopt when neither exists. G0 lives on Pairs(n).
std::optional<MonochromaticSet> monochromatic_set(const GraphPoint& G0, int m);

struct BoostWitness {
  GraphPoint G0;
  Dyadic linf;
  int i0 = 0;
  Rational cond_even, cond_odd;  // P[G | E_0], P[G | E_1]
  Rational fourier_at_peak;      // signed coefficient at G0
  std::vector<int> A;
  BoostCase kind = BoostCase::Disjoint;
  GraphPoint x0;                 // vanishes on (A choose 2)
  CentralEmbedding subspace;
  CodeFamily boosted;            // on Pairs(m)
  Dyadic achieved_density;
  // Contained case only, members in Pairs(n) coordinates
  GraphPoint odd_set;
  int j0 = 0;
  std::vector<std::uint64_t> g0, g1;
};

enum class BoostMiss { ZeroSpectrum, NoMonochromaticSet };

struct BoostResult {
  std::optional<BoostWitness> witness;
  BoostMiss miss = BoostMiss::ZeroSpectrum;  // meaningful when witness is empty
  Dyadic linf;
};

/// The Fourier-boost construction on an H-code over Pairs(n). Throws NotACode
/// and ParityViolation on bad input.
BoostResult fourier_boost(const CodeFamily& fam, const ForbiddenFamily& forb, int m);

struct BoostAudit {
  bool code = true;       // boosted is an H-code
  bool gain = true;       // achieved >= P[G] + linf
  bool split = true;      // the two-halves identities
  bool parity = true;     // |G| = j0 + i mod 2 on G_i (Contained)
  bool disjoint = true;   // G_0 n G_1 empty (Contained)
  bool odd_sums = true;   // |x + y| odd for x in G_0, y in G_1 (Contained)
  bool ok() const { return code && gain && split && parity && disjoint && odd_sums; }
};

BoostAudit audit_boost(const CodeFamily& fam, const ForbiddenFamily& forb, const BoostWitness& w);

struct LevelSet {
  DyadicTorus value;       // z_i = exp(2 pi i value)
  std::uint64_t size = 0;  // |Gamma_i|
  std::uint64_t hits = 0;  // |G n Gamma_i|
  Dyadic mu;
  Rational lambda;
  bool plus = false;       // lambda >= P[G]
};

struct LevelSetDecomposition {
  std::vector<LevelSet> levels;  // ordered by value
  Dyadic density;
  std::complex<double> correlation;  // E[(1_G - P[G]) exp(2 pi i P)]
  int degree = 0;                    // of P
  std::optional<int> i0;             // set by select_level

  Dyadic mu_sum() const;
  /// sum (lambda_i - P[G]) mu_i, exactly zero.
  Rational balance() const;
};

LevelSetDecomposition level_set_decomposition(const CodeFamily& fam, const NonclassicalPoly& P);

/// When |correlation| >= delta: the index maximizing lambda_i - P[G] among
/// mu_i >= delta / 2^(d+2), least index on ties.
std::optional<int> select_level(LevelSetDecomposition& dec, double delta);

/// P[fam | image(e)] <= reference.
bool subspace_density_bound_check(const CodeFamily& fam, const HJEmbedding& e, const Rational& reference);

}  // namespace f2lab
