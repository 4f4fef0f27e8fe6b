#pragma once

#include "f2lab/bits.hpp"
#include "f2lab/error.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace f2lab {

using Complex = std::complex<double>;

enum class IndexKind : std::uint8_t { Pairs = 0, PairsLoops = 1, Generic = 2 };

/// A pair {lo, hi} of 1-based vertices; lo == hi denotes a singleton (loop).
struct IndexKey {
  int lo = 0;
  int hi = 0;
  bool is_loop() const { return lo == hi; }
  friend bool operator==(const IndexKey&, const IndexKey&) = default;
  friend auto operator<=>(const IndexKey&, const IndexKey&) = default;
};

/// Fixed bijection between an index family and bit positions. Indices are
/// keyed by (min p, max p) with singletons keyed (i, i); positions follow the
/// lexicographic order of keys. Generic(N) has keys (1,1) .. (N,N).
class EdgeIndexSet {
 public:
  constexpr EdgeIndexSet() = default;
  static EdgeIndexSet pairs(int n);
  static EdgeIndexSet pairs_loops(int n);
  static EdgeIndexSet generic(int count);

  IndexKind kind() const { return kind_; }
  int n() const { return n_; }
  int size() const { return size_; }
  bool has_loops() const { return kind_ == IndexKind::PairsLoops; }

  /// Number of points 2^N; requires N <= 40.
  std::uint64_t point_count() const;

  /// Position of the vertex set {i, j} (i == j for a singleton), 1-based.
  int position(int i, int j) const;
  int position(std::span<const int> p) const;
  IndexKey key(int pos) const;

  /// All indices contained in the given vertex mask (bit v-1 for vertex v).
  Bits indices_within(std::uint64_t vertex_mask) const;

  std::string describe() const;

  friend bool operator==(const EdgeIndexSet&, const EdgeIndexSet&) = default;

 private:
  constexpr EdgeIndexSet(IndexKind kind, int n, int size) : kind_(kind), n_(n), size_(size) {}
  IndexKind kind_ = IndexKind::Generic;
  int n_ = 0;
  int size_ = 0;
};

/// One element of F_2^I.
struct GraphPoint {
  EdgeIndexSet space;
  Bits bits;

  GraphPoint() = default;
  GraphPoint(EdgeIndexSet s, Bits b);
  static GraphPoint from_index(EdgeIndexSet s, std::uint64_t index);

  std::uint64_t index() const { return bits.to_index(); }
  friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
};

/// Dense function table over F_2^I; entry p holds f at the point whose bit
/// pattern is p.
class ValueTable {
 public:
  ValueTable() = default;
  ValueTable(EdgeIndexSet space, std::vector<Complex> values);
  static ValueTable constant(EdgeIndexSet space, Complex c);
  static ValueTable walsh_function(EdgeIndexSet space, std::uint64_t xi);

  const EdgeIndexSet& space() const { return space_; }
  std::span<const Complex> values() const { return values_; }
  std::uint64_t size() const { return values_.size(); }
  const Complex& operator[](std::uint64_t p) const { return values_[p]; }
  bool is_real() const;
  Complex mean() const;

 private:
  EdgeIndexSet space_;
  std::vector<Complex> values_;
};

/// Fourier coefficients; entry xi holds E_x[f(x) w_xi(x)].
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(EdgeIndexSet space, std::vector<Complex> coefficients);

  const EdgeIndexSet& space() const { return space_; }
  std::span<const Complex> coefficients() const { return coefficients_; }
  std::uint64_t size() const { return coefficients_.size(); }
  const Complex& operator[](std::uint64_t xi) const { return coefficients_[xi]; }

 private:
  EdgeIndexSet space_;
  std::vector<Complex> coefficients_;
};

int index_position(const EdgeIndexSet& space, std::span<const int> p);

Spectrum walsh_transform(const ValueTable& f);
ValueTable inverse_walsh_transform(const Spectrum& s);

enum class GowersMethod { Naive, Recursive, Spectral };

struct GowersLimits {
  int naive_log_work = 26;      // (d+1) * N
  int recursive_max_order = 4;  // d
  int recursive_max_dim = 14;   // N
  int recursive_log_work = 32;  // d * N
};

/// ||f||_{U_d}. d == 1 returns the seminorm |E f|.
double gowers_norm(const ValueTable& f, int d, GowersMethod method, const GowersLimits& limits = {});
bool gowers_supported(int dimension, int d, GowersMethod method, const GowersLimits& limits = {});

/// p in {1, 2, 4, inf}. L_p averages, l_p sums.
double lp_norm(const ValueTable& f, double p);
double ellp_norm(const Spectrum& s, double p);

}  // namespace f2lab
