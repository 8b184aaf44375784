#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "commprobe/errors.hpp"

namespace commprobe {

/// Exact non-negative fraction, always stored in lowest terms.
///
/// Every probability in the library is a Ratio; doubles only appear when a
/// report is rendered for humans.
class Ratio {
 public:
  using int_type = std::int64_t;

  constexpr Ratio() = default;
  Ratio(int_type num, int_type den) : num_(num), den_(den) {
    if (den_ == 0) throw Error("ratio with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ < 0) throw Error("negative ratio");
    normalize();
  }
  explicit Ratio(int_type n) : Ratio(n, 1) {}

  int_type num() const noexcept { return num_; }
  int_type den() const noexcept { return den_; }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "p/q" or a bare integer.
  static Ratio parse(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> int_type {
      if (s.empty()) throw ParseError("empty number in ratio '" + std::string(text) + "'");
      int_type v = 0;
      for (char c : s) {
        if (c < '0' || c > '9')
          throw ParseError("invalid ratio '" + std::string(text) + "'");
        v = v * 10 + (c - '0');
        if (v > (int_type{1} << 40)) throw ParseError("ratio component too large");
      }
      return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Ratio(parse_int(text), 1);
    int_type den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Ratio(parse_int(text.substr(0, slash)), den);
  }

  friend Ratio operator*(const Ratio& a, const Ratio& b) {
    // cross-reduce first so intermediate products stay small
    int_type g1 = std::gcd(a.num_, b.den_);
    int_type g2 = std::gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    return from_wide(n, d);
  }

  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }

  friend bool operator==(const Ratio& a, const Ratio& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.str(); }

 private:
  static Ratio from_wide(__int128 n, __int128 d) {
    __int128 a = n, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a != 0) {
      n /= a;
      d /= a;
    }
    constexpr __int128 limit = static_cast<__int128>(INT64_MAX);
    if (n > limit || d > limit) throw Error("ratio overflow");
    return Ratio(static_cast<int_type>(n), static_cast<int_type>(d));
  }

  void normalize() {
    int_type g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  int_type num_ = 0;
  int_type den_ = 1;
};

}  // namespace commprobe
