// extdist.hpp -- exact nonnegative rational distances extended with +infinity.

#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pmod {

/// Extended nonnegative distance: a rational num/den in lowest terms, or +inf.
struct ExtDist {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool inf = false;

  ExtDist() = default;
  ExtDist(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (d <= 0 || n < 0) throw std::invalid_argument("ExtDist: needs nonnegative num, positive den");
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static ExtDist infinity() {
    ExtDist e;
    e.inf = true;
    return e;
  }
  static ExtDist zero() { return ExtDist(0); }

  bool is_zero() const { return !inf && num == 0; }

  friend bool operator==(const ExtDist& a, const ExtDist& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const ExtDist& a, const ExtDist& b) { return !(a == b); }
  friend bool operator<(const ExtDist& a, const ExtDist& b) {
    if (a.inf) return false;
    if (b.inf) return true;
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const ExtDist& a, const ExtDist& b) { return a < b || a == b; }
  friend bool operator>(const ExtDist& a, const ExtDist& b) { return b < a; }
  friend bool operator>=(const ExtDist& a, const ExtDist& b) { return b <= a; }

  friend ExtDist operator+(const ExtDist& a, const ExtDist& b) {
    if (a.inf || b.inf) return infinity();
    return ExtDist(a.num * b.den + b.num * a.den, a.den * b.den);
  }

  friend ExtDist max(const ExtDist& a, const ExtDist& b) { return a < b ? b : a; }
  friend ExtDist min(const ExtDist& a, const ExtDist& b) { return a < b ? a : b; }

  std::string str() const {
    if (inf) return "inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtDist& e) { return os << e.str(); }
};

}  // namespace pmod
