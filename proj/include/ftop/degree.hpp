#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "ftop/error.hpp"

namespace ftop {

/// An exact rational in [0, 1], always in lowest terms with a positive
/// denominator. Degrees are the carrier of the unit-interval lineale
/// (I, <=, min, 1, =>).
class Degree {
 public:
  constexpr Degree() = default;

  /// Throws InvalidDegree unless 0 <= num/den <= 1 and den != 0.
  static Degree ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorKind::InvalidDegree, "text=" + std::to_string(num) + "/0");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num < 0 || num > den)
      throw Error(ErrorKind::InvalidDegree,
                  "text=" + std::to_string(num) + "/" + std::to_string(den));
    Degree d;
    const std::int64_t g = std::gcd(num, den);
    d.num_ = g == 0 ? 0 : num / g;
    d.den_ = g == 0 ? 1 : den / g;
    return d;
  }

  static constexpr Degree zero() { return Degree{}; }
  static constexpr Degree one() {
    Degree d;
    d.num_ = 1;
    return d;
  }

  /// Accepts "0.25", "1", "0", ".5", "1.000" and "a/b". Decimals are
  /// converted exactly ("0.3" is 3/10).
  static Degree parse(std::string_view text) {
    const auto fail = [&] { return Error(ErrorKind::InvalidDegree, "text=" + std::string(text)); };
    if (text.empty()) throw fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      std::int64_t n = 0, d = 0;
      if (!parse_uint(text.substr(0, slash), n) || !parse_uint(text.substr(slash + 1), d) || d == 0)
        throw fail();
      if (n > d) throw fail();
      return ratio(n, d);
    }
    const auto dot = text.find('.');
    const std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (dot != std::string_view::npos && frac_part.empty() && int_part.empty()) throw fail();
    std::int64_t whole = 0;
    if (!int_part.empty() && !parse_uint(int_part, whole)) throw fail();
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.remove_suffix(1);
    if (frac_part.size() > 18) throw fail();
    std::int64_t frac = 0;
    if (!frac_part.empty() && !parse_uint(frac_part, frac)) throw fail();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    if (whole > 1 || (whole == 1 && frac != 0)) throw fail();
    return ratio(whole * scale + frac, scale);
  }

  constexpr std::int64_t numerator() const { return num_; }
  constexpr std::int64_t denominator() const { return den_; }

  /// 1 - d. Used for the "similar to 0" reading of a stream bit.
  Degree complement() const { return ratio(den_ - num_, den_); }

  /// Shortest exact decimal when the expansion terminates, "n/d" otherwise.
  std::string str() const {
    if (num_ == 0) return "0";
    if (num_ == den_) return "1";
    std::int64_t rest = den_;
    int twos = 0, fives = 0;
    while (rest % 2 == 0) rest /= 2, ++twos;
    while (rest % 5 == 0) rest /= 5, ++fives;
    const int digits = std::max(twos, fives);
    if (rest != 1 || digits > 18) return std::to_string(num_) + "/" + std::to_string(den_);
    std::int64_t pow10 = 1;
    for (int i = 0; i < digits; ++i) pow10 *= 10;
    std::string frac = std::to_string(num_ * (pow10 / den_));
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    return "0." + frac;
  }

  friend constexpr bool operator==(const Degree&, const Degree&) = default;
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    const auto lhs = static_cast<__int128>(a.num_) * b.den_;
    const auto rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  friend std::ostream& operator<<(std::ostream& os, const Degree& d) { return os << d.str(); }

 private:
  static bool parse_uint(std::string_view s, std::int64_t& out) {
    if (s.empty() || s.front() < '0' || s.front() > '9') return false;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end && out >= 0;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Lineale multiplication on I.
inline Degree meet(Degree a, Degree b) { return a <= b ? a : b; }
inline Degree join(Degree a, Degree b) { return a <= b ? b : a; }

/// Goedel residuum of min: the largest c with min(c, a) <= b.
inline Degree implies(Degree a, Degree b) { return a <= b ? Degree::one() : b; }

}  // namespace ftop

template <>
struct std::hash<ftop::Degree> {
  std::size_t operator()(const ftop::Degree& d) const noexcept {
    return std::hash<std::int64_t>{}(d.numerator()) * 31 + std::hash<std::int64_t>{}(d.denominator());
  }
};
