#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace fptdet {

namespace detail {

inline unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    unsigned __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace detail

/// Reduced fraction with positive denominator. Components are kept in
/// 64 bits; construction and comparison run through 128-bit intermediates,
/// so cross products of inputs up to ~1e9 cannot overflow.
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit

  static Rational make(__int128 num, __int128 den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    unsigned __int128 a =
        num < 0 ? static_cast<unsigned __int128>(-num) : static_cast<unsigned __int128>(num);
    if (a != 0) {
      unsigned __int128 g = detail::gcd128(a, static_cast<unsigned __int128>(den));
      num /= static_cast<__int128>(g);
      den /= static_cast<__int128>(g);
    } else {
      den = 1;
    }
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (num < lo || num > hi || den > hi)
      throw std::overflow_error("Rational: value does not fit in 64 bits after reduction");
    Rational r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Exact rendering "num/den".
  std::string to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Display-only decimal, 6 significant digits.
  std::string decimal_string() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g",
                  static_cast<double>(num_) / static_cast<double>(den_));
    return buf;
  }

 private:
  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace fptdet
