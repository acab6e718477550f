#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace rcs {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Backend traits. Exact tables compare with ==, floating tables with an
// absolute tolerance of 1e-12 (the cross-backend tolerance as well).
// ---------------------------------------------------------------------------
template <class S>
struct backend;

template <>
struct backend<Rat> {
  static constexpr bool exact = true;
  static bool close(const Rat& a, const Rat& b) { return a == b; }
  static double to_double(const Rat& x) { return x.template convert_to<double>(); }
  static Rat from_int(long long v) { return Rat(v); }
  static Rat from_big(const BigInt& v) { return Rat(v); }
};

template <>
struct backend<double> {
  static constexpr bool exact = false;
  static constexpr double tol = 1e-12;
  static bool close(double a, double b) { return std::fabs(a - b) <= tol; }
  static double to_double(double x) { return x; }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double from_big(const BigInt& v) { return v.template convert_to<double>(); }
};

template <class S>
double to_double(const S& x) {
  return backend<S>::to_double(x);
}

// ---------------------------------------------------------------------------
// Small combinatorial helpers over a generic scalar.
// ---------------------------------------------------------------------------
inline BigInt big_factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt big_binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

template <class S>
S binom(int n, int k) {
  if constexpr (backend<S>::exact) {
    return Rat(big_binom(n, k));
  } else {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  }
}

/// Rising factorial (z)_n = z(z+1)...(z+n-1), with (z)_0 = 1.
template <class S>
S rising(const S& z, int n) {
  S r = backend<S>::from_int(1);
  for (int i = 0; i < n; ++i) r *= z + backend<S>::from_int(i);
  return r;
}

// ---------------------------------------------------------------------------
// Parsing / formatting. Parameters written as "a/b" or as (finite) decimals
// parse to exact rationals; doubles print with 17 significant digits.
// ---------------------------------------------------------------------------
Rat parse_rational(const std::string& text);

std::string format_value(const Rat& x);
std::string format_value(double x);

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

}  // namespace rcs
