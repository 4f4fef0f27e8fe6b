#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <compare>
#include <cstdint>
#include <string>

namespace f2lab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact nonnegative-exponent dyadic rational num / 2^den_exp, kept reduced
/// (num odd, or num == 0 with den_exp == 0). Every density of a family of
/// graphs has this form.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt num, std::int64_t den_exp);  // NOLINT: reduces
  static Dyadic integer(BigInt v) { return Dyadic(std::move(v), 0); }
  /// 2^e for any integer e (negative e gives a fraction).
  static Dyadic power_of_two(std::int64_t e);

  const BigInt& num() const { return num_; }
  std::int64_t den_exp() const { return den_exp_; }

  Rational to_rational() const;
  double to_double() const;
  std::string to_string() const;  // "num/2^e" or "num"

  Dyadic pow(std::uint64_t e) const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void reduce();
  BigInt num_{0};
  std::int64_t den_exp_ = 0;
};

std::strong_ordering compare(const Rational& a, const Rational& b);
Rational abs(const Rational& r);
double to_double(const Rational& r);
/// Parses "0.25", "1/4", "3", "1e-3" exactly.
Rational parse_rational(const std::string& text);

/// Element j / 2^a of the torus R/Z, reduced: 0 <= j < 2^a, j odd unless j == 0.
class DyadicTorus {
 public:
  static constexpr int kMaxExponent = 62;

  constexpr DyadicTorus() = default;
  DyadicTorus(std::uint64_t numerator, int exponent);

  std::uint64_t numerator() const { return num_; }
  int exponent() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  /// exp(2 pi i value)
  std::complex<double> phase() const;
  double to_double() const;
  std::string to_string() const;

  DyadicTorus operator-() const;
  friend DyadicTorus operator+(const DyadicTorus& a, const DyadicTorus& b);
  friend DyadicTorus operator-(const DyadicTorus& a, const DyadicTorus& b) { return a + (-b); }
  DyadicTorus& operator+=(const DyadicTorus& o) { return *this = *this + o; }
  /// Multiplication by an integer, exact mod 1.
  DyadicTorus times(std::int64_t k) const;

  friend bool operator==(const DyadicTorus&, const DyadicTorus&) = default;
  /// Order by the representative in [0, 1).
  friend std::strong_ordering operator<=>(const DyadicTorus& a, const DyadicTorus& b);

 private:
  std::uint64_t num_ = 0;
  int exp_ = 0;
};

}  // namespace f2lab
