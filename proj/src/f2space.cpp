#include "f2lab/f2space.hpp"

#include "f2lab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace f2lab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::LoopNotAllowed: return "LoopNotAllowed";
    case Errc::SpaceMismatch: return "SpaceMismatch";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::UnsupportedOrder: return "UnsupportedOrder";
    case Errc::UnsupportedExponent: return "UnsupportedExponent";
    case Errc::TooManyVertices: return "TooManyVertices";
    case Errc::PositionOutOfRange: return "PositionOutOfRange";
    case Errc::InvalidEmbedding: return "InvalidEmbedding";
    case Errc::MalformedCoefficient: return "MalformedCoefficient";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::OutsideWildcards: return "OutsideWildcards";
    case Errc::NotCanonical: return "NotCanonical";
    case Errc::WrongBlockSize: return "WrongBlockSize";
    case Errc::NotBlock: return "NotBlock";
    case Errc::DegreeNotLowered: return "DegreeNotLowered";
    case Errc::InsufficientRoom: return "InsufficientRoom";
    case Errc::CanonicalSetNotFound: return "CanonicalSetNotFound";
    case Errc::RecursionBudgetExceeded: return "RecursionBudgetExceeded";
    case Errc::NotACode: return "NotACode";
    case Errc::ParityViolation: return "ParityViolation";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
    case Errc::FormatError: return "FormatError";
  }
  return "Unknown";
}

namespace {

void check_capacity(int size) {
  if (size < 0 || static_cast<std::size_t>(size) > Bits::kCapacity)
    throw Error(Errc::TooLarge, "index family of size " + std::to_string(size) + " exceeds " +
                                    std::to_string(Bits::kCapacity) + " bits");
}

}  // namespace

EdgeIndexSet EdgeIndexSet::pairs(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "vertex count must be positive");
  const int size = n * (n - 1) / 2;
  check_capacity(size);
  return EdgeIndexSet(IndexKind::Pairs, n, size);
}

EdgeIndexSet EdgeIndexSet::pairs_loops(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "vertex count must be positive");
  const int size = n * (n + 1) / 2;
  check_capacity(size);
  return EdgeIndexSet(IndexKind::PairsLoops, n, size);
}

EdgeIndexSet EdgeIndexSet::generic(int count) {
  check_capacity(count);
  return EdgeIndexSet(IndexKind::Generic, 0, count);
}

std::uint64_t EdgeIndexSet::point_count() const {
  if (size_ > 40)
    throw Error(Errc::TooLarge, "2^" + std::to_string(size_) + " points cannot be tabulated");
  return std::uint64_t{1} << size_;
}

int EdgeIndexSet::position(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (kind_ == IndexKind::Generic) {
    if (i != j || i < 1 || i > size_)
      throw Error(Errc::VertexOutOfRange, "generic index " + std::to_string(i) + "," + std::to_string(j));
    return i - 1;
  }
  if (i < 1 || j > n_)
    throw Error(Errc::VertexOutOfRange,
                "{" + std::to_string(i) + "," + std::to_string(j) + "} not in [" + std::to_string(n_) + "]");
  if (kind_ == IndexKind::Pairs) {
    if (i == j) throw Error(Errc::LoopNotAllowed, "singleton {" + std::to_string(i) + "} in a loopless space");
    return (i - 1) * n_ - (i - 1) * i / 2 + (j - i - 1);
  }
  return (i - 1) * (n_ + 1) - (i - 1) * i / 2 + (j - i);
}

int EdgeIndexSet::position(std::span<const int> p) const {
  if (p.size() == 1) return position(p[0], p[0]);
  if (p.size() == 2) {
    if (p[0] == p[1]) throw Error(Errc::InvalidArgument, "repeated vertex in a pair");
    return position(p[0], p[1]);
  }
  throw Error(Errc::InvalidArgument, "an index has one or two vertices");
}

IndexKey EdgeIndexSet::key(int pos) const {
  if (pos < 0 || pos >= size_) throw Error(Errc::PositionOutOfRange, std::to_string(pos));
  if (kind_ == IndexKind::Generic) return {pos + 1, pos + 1};
  const int first_offset = kind_ == IndexKind::Pairs ? 1 : 0;
  int rest = pos;
  for (int i = 1; i <= n_; ++i) {
    const int row = n_ - i + 1 - first_offset;
    if (rest < row) return {i, i + first_offset + rest};
    rest -= row;
  }
  throw Error(Errc::PositionOutOfRange, std::to_string(pos));
}

Bits EdgeIndexSet::indices_within(std::uint64_t vertex_mask) const {
  Bits out;
  if (kind_ == IndexKind::Generic) return out;
  for (int i = 1; i <= n_; ++i) {
    if (!((vertex_mask >> (i - 1)) & 1u)) continue;
    if (kind_ == IndexKind::PairsLoops) out.set(static_cast<std::size_t>(position(i, i)));
    for (int j = i + 1; j <= n_; ++j)
      if ((vertex_mask >> (j - 1)) & 1u) out.set(static_cast<std::size_t>(position(i, j)));
  }
  return out;
}

std::string EdgeIndexSet::describe() const {
  switch (kind_) {
    case IndexKind::Pairs: return "Pairs(" + std::to_string(n_) + ")";
    case IndexKind::PairsLoops: return "PairsLoops(" + std::to_string(n_) + ")";
    case IndexKind::Generic: return "Generic(" + std::to_string(size_) + ")";
  }
  return "?";
}

int index_position(const EdgeIndexSet& space, std::span<const int> p) { return space.position(p); }

GraphPoint::GraphPoint(EdgeIndexSet s, Bits b) : space(s), bits(b) {
  if (b.bit_width() > static_cast<std::size_t>(s.size()))
    throw Error(Errc::PositionOutOfRange, "bit outside " + s.describe());
}

GraphPoint GraphPoint::from_index(EdgeIndexSet s, std::uint64_t index) {
  return GraphPoint(s, Bits::from_word(index));
}

ValueTable::ValueTable(EdgeIndexSet space, std::vector<Complex> values)
    : space_(space), values_(std::move(values)) {
  if (values_.size() != space_.point_count())
    throw Error(Errc::SpaceMismatch, "table length " + std::to_string(values_.size()) + " for " +
                                         space_.describe());
}

ValueTable ValueTable::constant(EdgeIndexSet space, Complex c) {
  return ValueTable(space, std::vector<Complex>(space.point_count(), c));
}

ValueTable ValueTable::walsh_function(EdgeIndexSet space, std::uint64_t xi) {
  std::vector<Complex> v(space.point_count());
  for (std::uint64_t x = 0; x < v.size(); ++x) v[x] = (std::popcount(x & xi) & 1) ? -1.0 : 1.0;
  return ValueTable(space, std::move(v));
}

bool ValueTable::is_real() const {
  return std::all_of(values_.begin(), values_.end(), [](const Complex& z) { return z.imag() == 0.0; });
}

Complex ValueTable::mean() const {
  Complex s = 0.0;
  for (const auto& v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

Spectrum::Spectrum(EdgeIndexSet space, std::vector<Complex> coefficients)
    : space_(space), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != space_.point_count())
    throw Error(Errc::SpaceMismatch, "spectrum length " + std::to_string(coefficients_.size()) + " for " +
                                         space_.describe());
}

Spectrum walsh_transform(const ValueTable& f) {
  std::vector<Complex> c(f.values().begin(), f.values().end());
  kernels::parallel::walsh_butterfly(c);
  const double scale = 1.0 / static_cast<double>(c.size());
  for (auto& v : c) v *= scale;
  return Spectrum(f.space(), std::move(c));
}

ValueTable inverse_walsh_transform(const Spectrum& s) {
  std::vector<Complex> c(s.coefficients().begin(), s.coefficients().end());
  kernels::parallel::walsh_butterfly(c);
  return ValueTable(s.space(), std::move(c));
}

bool gowers_supported(int dimension, int d, GowersMethod method, const GowersLimits& limits) {
  if (d < 1) return false;
  switch (method) {
    case GowersMethod::Naive: return (d + 1) * dimension <= limits.naive_log_work;
    case GowersMethod::Recursive:
      return d <= limits.recursive_max_order && dimension <= limits.recursive_max_dim &&
             d * dimension <= limits.recursive_log_work;
    case GowersMethod::Spectral: return d == 2 && dimension <= 30;
  }
  return false;
}

double gowers_norm(const ValueTable& f, int d, GowersMethod method, const GowersLimits& limits) {
  const int dim = f.space().size();
  if (d < 1) throw Error(Errc::UnsupportedOrder, "order must be at least 1");
  if (method == GowersMethod::Spectral && d != 2)
    throw Error(Errc::UnsupportedOrder, "spectral evaluation covers d = 2 only");
  if (!gowers_supported(dim, d, method, limits))
    throw Error(Errc::BudgetExceeded, "U_" + std::to_string(d) + " on N = " + std::to_string(dim));

  const double root = std::ldexp(1.0, -d);
  switch (method) {
    case GowersMethod::Naive: {
      const Complex avg = kernels::parallel::gowers_naive_average(f.values(), dim, d);
      // d = 1 gives E f * conj(E f) = |E f|^2
      return std::pow(std::abs(avg), root);
    }
    case GowersMethod::Recursive: {
      double power = 0.0;
      if (f.is_real()) {
        std::vector<double> re(f.size());
        for (std::uint64_t i = 0; i < f.size(); ++i) re[i] = f[i].real();
        power = kernels::parallel::gowers_recursive_power(std::span<const double>(re), dim, d);
      } else {
        power = kernels::parallel::gowers_recursive_power(f.values(), dim, d);
      }
      return std::pow(std::max(power, 0.0), root);
    }
    case GowersMethod::Spectral: return ellp_norm(walsh_transform(f), 4.0);
  }
  return 0.0;
}

namespace {

template <class F>
double generic_norm(std::uint64_t size, double p, bool average, F&& modulus) {
  if (std::isinf(p) && p > 0) {
    double m = 0.0;
    for (std::uint64_t i = 0; i < size; ++i) m = std::max(m, modulus(i));
    return m;
  }
  if (p != 1.0 && p != 2.0 && p != 4.0)
    throw Error(Errc::UnsupportedExponent, "p = " + std::to_string(p));
  double s = 0.0;
  for (std::uint64_t i = 0; i < size; ++i) s += std::pow(modulus(i), p);
  if (average) s /= static_cast<double>(size);
  return std::pow(s, 1.0 / p);
}

}  // namespace

double lp_norm(const ValueTable& f, double p) {
  return generic_norm(f.size(), p, true, [&](std::uint64_t i) { return std::abs(f[i]); });
}

double ellp_norm(const Spectrum& s, double p) {
  return generic_norm(s.size(), p, false, [&](std::uint64_t i) { return std::abs(s[i]); });
}

}  // namespace f2lab
