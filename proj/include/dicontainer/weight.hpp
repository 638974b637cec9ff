#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "dicontainer/error.hpp"

namespace dicontainer {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

// Parses "p", "p/q", "-p/q" or a plain decimal such as "0.125".
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw PreconditionError("malformed rational '" + std::string(text) + "'");
    std::size_t pos = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      pos = 1;
    }
    if (pos == s.size()) throw PreconditionError("malformed rational '" + std::string(text) + "'");
    std::int64_t v = 0;
    for (; pos < s.size(); ++pos) {
      if (s[pos] < '0' || s[pos] > '9' || v > (INT64_MAX - 9) / 10)
        throw PreconditionError("malformed rational '" + std::string(text) + "'");
      v = v * 10 + (s[pos] - '0');
    }
    return neg ? -v : v;
  };
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string_view::npos)
      throw PreconditionError("malformed decimal '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const auto whole_text = text.substr(0, dot);
    const bool neg = whole_text.starts_with("-");
    const std::int64_t whole = (whole_text.empty() || whole_text == "-") ? 0 : parse_int(whole_text);
    const std::int64_t part = parse_int(frac);
    if (whole > INT64_MAX / scale - 1 || -whole > INT64_MAX / scale - 1)
      throw PreconditionError("decimal out of range '" + std::string(text) + "'");
    const std::int64_t mag = (whole < 0 ? -whole : whole) * scale + part;
    return Rational(neg ? -mag : mag, scale);
  }
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

/// The edge-weight parameter a >= 1 of the weighted size a*f2 + f1.
///
/// Rational values are held exactly. Logarithms log2(k) with k not a power of
/// two are held as an enclosing interval [lo, hi] of relative width
/// `kRelativeWidth`; every comparison against such a weight either resolves
/// from the interval or reports itself as undecided.
class Weight {
 public:
  static constexpr double kRelativeWidth = 1e-12;

  explicit Weight(Rational exact)
      : text_(exact.denominator() == 1 ? std::to_string(exact.numerator()) : to_string(exact)), exact_(exact) {
    if (exact < 1) throw PreconditionError("weight a must be >= 1, got " + text_);
    lo_ = hi_ = boost::rational_cast<double>(exact);
  }

  /// Accepts "2", "5/2", "log2(3)" (also "log2_3").
  static Weight parse(std::string_view text) {
    std::string_view arg;
    if (text.starts_with("log2(") && text.ends_with(")")) {
      arg = text.substr(5, text.size() - 6);
    } else if (text.starts_with("log2_")) {
      arg = text.substr(5);
    } else {
      return Weight(parse_rational(text));
    }
    const Rational k = parse_rational(arg);
    if (k.denominator() != 1 || k.numerator() < 2)
      throw PreconditionError("log2 weight needs an integer argument >= 2, got '" + std::string(text) + "'");
    const std::int64_t v = k.numerator();
    if ((v & (v - 1)) == 0) {
      std::int64_t e = 0;
      while ((std::int64_t{1} << e) < v) ++e;
      return Weight(Rational(e));
    }
    Weight w;
    w.text_ = "log2(" + std::to_string(v) + ")";
    const double mid = std::log2(static_cast<double>(v));
    w.lo_ = mid * (1.0 - kRelativeWidth);
    w.hi_ = mid * (1.0 + kRelativeWidth);
    return w;
  }

  const std::string& text() const noexcept { return text_; }
  bool is_exact() const noexcept { return exact_.has_value(); }
  const std::optional<Rational>& exact() const noexcept { return exact_; }
  double approx() const noexcept { return 0.5 * (lo_ + hi_); }
  double lower() const noexcept { return lo_; }
  double upper() const noexcept { return hi_; }

  double evaluate(std::int64_t doubles, std::int64_t singles) const {
    return approx() * static_cast<double>(doubles) + static_cast<double>(singles);
  }

  std::optional<Rational> evaluate_exact(std::int64_t doubles, std::int64_t singles) const {
    if (!exact_) return std::nullopt;
    return *exact_ * doubles + singles;
  }

  /// Sign of a*x + y; unordered when the interval for a cannot decide it.
  std::partial_ordering sign_of(std::int64_t x, std::int64_t y) const {
    if (x == 0) return y <=> std::int64_t{0};
    if (exact_) {
      const Rational v = *exact_ * x + y;
      if (v > 0) return std::partial_ordering::greater;
      if (v < 0) return std::partial_ordering::less;
      return std::partial_ordering::equivalent;
    }
    double a = lo_ * static_cast<double>(x) + static_cast<double>(y);
    double b = hi_ * static_cast<double>(x) + static_cast<double>(y);
    if (a > b) std::swap(a, b);
    if (a > 0) return std::partial_ordering::greater;
    if (b < 0) return std::partial_ordering::less;
    return std::partial_ordering::unordered;
  }

  /// Compares a*d1 + s1 against a*d2 + s2.
  std::partial_ordering compare(std::int64_t d1, std::int64_t s1, std::int64_t d2, std::int64_t s2) const {
    return sign_of(d1 - d2, s1 - s2);
  }

  /// Decides num/den <= a/2, i.e. 2*num <= a*den.
  std::partial_ordering compare_half(std::int64_t num, std::int64_t den) const {
    // sign of a*den - 2*num
    return sign_of(den, -2 * num);
  }

 private:
  Weight() = default;

  std::string text_;
  std::optional<Rational> exact_;
  double lo_ = 0, hi_ = 0;
};

}  // namespace dicontainer
