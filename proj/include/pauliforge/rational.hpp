#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pauliforge {

/// Reduced rational m/k with k > 0. Zero is stored as 0/1.
class RootExponent {
 public:
  constexpr RootExponent() = default;
  constexpr RootExponent(std::int64_t numerator, std::int64_t denominator = 1) {
    if (denominator == 0) throw std::invalid_argument("root exponent with zero denominator");
    if (denominator < 0) {
      numerator = -numerator;
      denominator = -denominator;
    }
    const std::int64_t g = std::gcd(numerator < 0 ? -numerator : numerator, denominator);
    num_ = g == 0 ? 0 : numerator / g;
    den_ = g == 0 ? 1 : denominator / g;
    if (num_ == 0) den_ = 1;
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  constexpr bool is_zero() const { return num_ == 0; }

  /// Representative in (-1, 1]. Pauli roots are periodic with period 2 in the exponent.
  constexpr RootExponent wrapped() const {
    const std::int64_t period = 2 * den_;
    std::int64_t m = num_ % period;
    if (m <= -den_) m += period;
    if (m > den_) m -= period;
    return {m, den_};
  }

  constexpr RootExponent operator-() const { return {-num_, den_}; }
  constexpr RootExponent operator+(const RootExponent& o) const {
    return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
  }
  constexpr RootExponent operator-(const RootExponent& o) const { return *this + (-o); }
  constexpr RootExponent halved() const { return {num_, den_ * 2}; }

  constexpr bool operator==(const RootExponent&) const = default;
  constexpr auto operator<=>(const RootExponent& o) const { return num_ * o.den_ <=> o.num_ * den_; }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace pauliforge
