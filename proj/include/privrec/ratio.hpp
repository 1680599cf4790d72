#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>

#include "privrec/error.hpp"

namespace privrec {

// Non-negative exact fraction. Always stored in lowest terms; 0/0 is
// represented as 0/1 so empty populations compare equal to zero.
class Ratio {
 public:
  constexpr Ratio() = default;

  Ratio(std::int64_t num, std::int64_t den) {
    if (den < 0 || num < 0) throw InvalidInput("Ratio: negative component");
    if (den == 0) {
      if (num != 0) throw InvalidInput("Ratio: zero denominator");
      return;
    }
    const auto g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator<(const Ratio& a, const Ratio& b) { return a.num_ * b.den_ < b.num_ * a.den_; }
  friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }

  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    return Ratio(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.num_ << '/' << r.den_; }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace privrec
