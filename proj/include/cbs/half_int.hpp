#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cbs {

/// Exact half-integer angular momentum value, stored as twice its value.
///
/// Both magnitudes (j) and projections (m) use this type; projections may
/// be negative. Arithmetic that would overflow the underlying integer
/// throws std::overflow_error instead of wrapping.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int whole) : twice_(2LL * whole) {}

  static constexpr HalfInt from_twice(long long twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  /// Parses "3", "-2", "3/2", "1.5" or "1.0". Throws std::invalid_argument
  /// on anything else.
  static HalfInt parse(std::string_view text);

  constexpr long long twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * static_cast<double>(twice_); }

  /// Canonical rendering: integers as "3", half-integers as "3/2".
  std::string str() const;

  friend constexpr auto operator<=>(const HalfInt&, const HalfInt&) = default;

 private:
  long long twice_ = 0;
};

namespace detail {
inline long long checked_add(long long a, long long b) {
  long long r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("half-integer arithmetic overflow");
  return r;
}
inline long long checked_neg(long long a) {
  long long r = 0;
  if (__builtin_sub_overflow(0LL, a, &r))
    throw std::overflow_error("half-integer arithmetic overflow");
  return r;
}
}  // namespace detail

inline HalfInt operator+(HalfInt a, HalfInt b) {
  return HalfInt::from_twice(detail::checked_add(a.twice(), b.twice()));
}
inline HalfInt operator-(HalfInt a, HalfInt b) {
  return HalfInt::from_twice(
      detail::checked_add(a.twice(), detail::checked_neg(b.twice())));
}
inline HalfInt operator-(HalfInt a) {
  return HalfInt::from_twice(detail::checked_neg(a.twice()));
}

inline HalfInt abs(HalfInt a) { return a.twice() < 0 ? -a : a; }

/// True iff m is a valid projection of j: |m| <= j and j - m is an integer.
inline bool valid_projection(HalfInt j, HalfInt m) {
  return std::abs(m.twice()) <= j.twice() &&
         (j.twice() - m.twice()) % 2 == 0;
}

inline std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

inline HalfInt HalfInt::parse(std::string_view text) {
  const std::string s(text);
  const auto fail = [&] {
    throw std::invalid_argument("cannot parse half-integer '" + s + "'");
  };
  if (s.empty()) fail();

  auto parse_ll = [&](std::string_view v) -> long long {
    if (v.empty()) fail();
    size_t pos = 0;
    long long value = 0;
    try {
      value = std::stoll(std::string(v), &pos);
    } catch (const std::exception&) {
      fail();
    }
    if (pos != v.size()) fail();
    return value;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const long long num = parse_ll(std::string_view(s).substr(0, slash));
    const long long den = parse_ll(std::string_view(s).substr(slash + 1));
    if (den == 1) return HalfInt::from_twice(detail::checked_add(num, num));
    if (den == 2) return HalfInt::from_twice(num);
    fail();
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    const std::string_view frac = std::string_view(s).substr(dot + 1);
    const std::string_view whole = std::string_view(s).substr(0, dot);
    long long w = whole.empty() || whole == "-" ? 0 : parse_ll(whole);
    const bool negative = !whole.empty() && whole[0] == '-';
    long long t = detail::checked_add(w, w);
    if (frac == "5") {
      t = detail::checked_add(t, negative ? -1 : 1);
    } else if (frac != "0" && frac != "00") {
      fail();
    }
    return HalfInt::from_twice(t);
  }
  const long long v = parse_ll(s);
  return HalfInt::from_twice(detail::checked_add(v, v));
}

}  // namespace cbs
