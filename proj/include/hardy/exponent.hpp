#pragma once

#include <charconv>
#include <cmath>
#include <compare>
#include <string>
#include <string_view>
#include <system_error>

#include "hardy/error.hpp"

namespace hardy {

// An exponent p in (0, inf]. Infinity is a distinct state, not a float value.
class Exponent {
 public:
  static Exponent inf() noexcept { return Exponent(); }

  static Exponent finite(double p) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw error(errc::parameter, "exponent must be a positive finite number or inf");
    return Exponent(p);
  }

  // Accepts a decimal literal or the token `inf`.
  static Exponent parse(std::string_view text) {
    if (text == "inf" || text == "INF") return inf();
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty())
      throw error(errc::parameter, "cannot parse exponent '" + std::string(text) + "'");
    return finite(value);
  }

  bool is_inf() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  // Only meaningful for finite exponents.
  double value() const noexcept { return value_; }

  // 1/p, with 1/inf = 0.
  double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }

  std::string to_string() const {
    if (infinite_) return "inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value_);
    return std::string(buf, ptr);
  }

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  friend std::partial_ordering operator<=>(const Exponent& a, const Exponent& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

 private:
  Exponent() noexcept : infinite_(true), value_(0.0) {}
  explicit Exponent(double p) noexcept : infinite_(false), value_(p) {}

  bool infinite_;
  double value_;
};

}  // namespace hardy
