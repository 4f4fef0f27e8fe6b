#include "f2lab/dyadic.hpp"

#include "f2lab/error.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace f2lab {

namespace mp = boost::multiprecision;

Dyadic::Dyadic(BigInt num, std::int64_t den_exp) : num_(std::move(num)), den_exp_(den_exp) {
  reduce();
}

void Dyadic::reduce() {
  if (num_ == 0) {
    den_exp_ = 0;
    return;
  }
  if (den_exp_ < 0) {
    num_ <<= static_cast<unsigned>(-den_exp_);
    den_exp_ = 0;
    return;
  }
  const auto low = static_cast<std::int64_t>(mp::lsb(mp::abs(num_)));
  const auto shift = std::min(low, den_exp_);
  num_ >>= static_cast<unsigned>(shift);
  den_exp_ -= shift;
}

Dyadic Dyadic::power_of_two(std::int64_t e) {
  if (e >= 0) return Dyadic(BigInt(1) << static_cast<unsigned>(e), 0);
  return Dyadic(BigInt(1), -e);
}

Rational Dyadic::to_rational() const {
  return Rational(num_, BigInt(1) << static_cast<unsigned>(den_exp_));
}

double Dyadic::to_double() const {
  return std::ldexp(num_.convert_to<double>(), static_cast<int>(-den_exp_));
}

std::string Dyadic::to_string() const {
  if (den_exp_ == 0) return num_.str();
  return num_.str() + "/2^" + std::to_string(den_exp_);
}

Dyadic Dyadic::pow(std::uint64_t e) const {
  BigInt n = mp::pow(num_, static_cast<unsigned>(e));
  return Dyadic(std::move(n), den_exp_ * static_cast<std::int64_t>(e));
}

namespace {
std::pair<BigInt, BigInt> aligned(const Dyadic& a, const Dyadic& b, std::int64_t& e) {
  e = std::max(a.den_exp(), b.den_exp());
  return {a.num() << static_cast<unsigned>(e - a.den_exp()),
          b.num() << static_cast<unsigned>(e - b.den_exp())};
}
}  // namespace

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  std::int64_t e = 0;
  auto [x, y] = aligned(a, b, e);
  return Dyadic(x + y, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  std::int64_t e = 0;
  auto [x, y] = aligned(a, b, e);
  return Dyadic(x - y, e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.num() * b.num(), a.den_exp() + b.den_exp());
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  std::int64_t e = 0;
  auto [x, y] = aligned(a, b, e);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering compare(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational parse_rational(const std::string& text) {
  const auto fail = [&] { throw Error(Errc::InvalidArgument, "not a number: '" + text + "'"); };
  if (text.empty()) fail();
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) fail();
    return num / den;
  }
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
  BigInt digits = 0;
  std::int64_t scale = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      seen_digit = true;
      if (seen_dot) --scale;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      fail();
    }
  }
  if (!seen_digit) fail();
  if (i < text.size()) {
    const std::string exp_text = text.substr(i + 1);
    try {
      std::size_t used = 0;
      scale += std::stoll(exp_text, &used);
      if (used != exp_text.size()) fail();
    } catch (const std::logic_error&) {
      fail();
    }
  }
  Rational r(digits);
  if (scale > 0) r *= Rational(mp::pow(BigInt(10), static_cast<unsigned>(scale)));
  if (scale < 0) r /= Rational(mp::pow(BigInt(10), static_cast<unsigned>(-scale)));
  return neg ? Rational(-r) : r;
}

DyadicTorus::DyadicTorus(std::uint64_t numerator, int exponent) {
  if (exponent < 0 || exponent > kMaxExponent)
    throw Error(Errc::InvalidArgument, "torus exponent out of range: " + std::to_string(exponent));
  exp_ = exponent;
  num_ = exponent == 0 ? 0 : numerator & ((std::uint64_t{1} << exponent) - 1);
  while (exp_ > 0 && (num_ & 1u) == 0) {
    num_ >>= 1;
    --exp_;
  }
  if (num_ == 0) exp_ = 0;
}

std::complex<double> DyadicTorus::phase() const {
  return std::polar(1.0, 2.0 * std::numbers::pi * to_double());
}

double DyadicTorus::to_double() const { return std::ldexp(static_cast<double>(num_), -exp_); }

std::string DyadicTorus::to_string() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/2^" + std::to_string(exp_);
}

DyadicTorus DyadicTorus::operator-() const {
  if (exp_ == 0) return {};
  return DyadicTorus((std::uint64_t{1} << exp_) - num_, exp_);
}

DyadicTorus operator+(const DyadicTorus& a, const DyadicTorus& b) {
  const int e = std::max(a.exp_, b.exp_);
  return DyadicTorus((a.num_ << (e - a.exp_)) + (b.num_ << (e - b.exp_)), e);
}

DyadicTorus DyadicTorus::times(std::int64_t k) const {
  if (exp_ == 0) return {};
  const std::uint64_t mask = (std::uint64_t{1} << exp_) - 1;
  const auto km = static_cast<std::uint64_t>(k) & mask;  // two's complement keeps k mod 2^exp
  return DyadicTorus((num_ * km) & mask, exp_);
}

std::strong_ordering operator<=>(const DyadicTorus& a, const DyadicTorus& b) {
  const int e = std::max(a.exp_, b.exp_);
  return (a.num_ << (e - a.exp_)) <=> (b.num_ << (e - b.exp_));
}

}  // namespace f2lab
