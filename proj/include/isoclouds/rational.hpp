#pragma once

#include <cstdint>
#include <numeric>

#include "isoclouds/errors.hpp"

namespace isoclouds {

// Exact rational over int64, always reduced with a positive denominator.
// Used for distribution weights and transport flows, where floating-point
// marginals would break the sum-to-one constraints. Denominators stay small
// (products of cloud sizes), so no overflow guard beyond the invariants.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    long long l = std::lcm(a.den, b.den);
    return Rational(a.num * (l / a.den) + b.num * (l / b.den), l);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    long long l = std::lcm(a.den, b.den);
    return Rational(a.num * (l / a.den) - b.num * (l / b.den), l);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    long long l = std::lcm(a.den, b.den);
    return a.num * (l / a.den) < b.num * (l / b.den);
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
};

}  // namespace isoclouds
