#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "orderlab/error.hpp"

namespace orderlab {

using Int = boost::multiprecision::cpp_int;

/// Exact dyadic rational num / 2^exp, kept in lowest terms:
/// exp >= 0, and num is odd whenever exp > 0. Zero is (0, 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(Int num, std::int64_t exp = 0) : num_(std::move(num)), exp_(exp) { normalize(); }

  const Int& num() const { return num_; }
  std::int64_t exp() const { return exp_; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_.sign(); }

  /// this * 2^k for any integer k.
  Dyadic scaled(std::int64_t k) const {
    if (k >= 0) {
      if (k <= exp_) return Dyadic(num_, exp_ - k);
      return Dyadic(Int(num_ << static_cast<unsigned>(k - exp_)), 0);
    }
    return Dyadic(num_, exp_ - k);
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.exp_ >= b.exp_) return Dyadic(a.num_ + (b.num_ << static_cast<unsigned>(a.exp_ - b.exp_)), a.exp_);
    return Dyadic((a.num_ << static_cast<unsigned>(b.exp_ - a.exp_)) + b.num_, b.exp_);
  }
  friend Dyadic operator-(const Dyadic& a) { return Dyadic(Int(-a.num_), a.exp_); }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.num_ == b.num_ && a.exp_ == b.exp_; }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  /// "num" when integral, otherwise "num/2^exp".
  std::string to_string() const {
    if (exp_ == 0) return num_.str();
    return num_.str() + "/2^" + std::to_string(exp_);
  }

 private:
  void normalize() {
    if (exp_ < 0) {
      num_ <<= static_cast<unsigned>(-exp_);
      exp_ = 0;
    }
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    if (exp_ > 0) {
      const Int magnitude = abs(num_);
      const auto tz = static_cast<std::int64_t>(boost::multiprecision::lsb(magnitude));
      const auto shift = std::min(tz, exp_);
      num_ >>= static_cast<unsigned>(shift);
      exp_ -= shift;
    }
  }

  Int num_ = 0;
  std::int64_t exp_ = 0;
};

}  // namespace orderlab
