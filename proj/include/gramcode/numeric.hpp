#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gramcode/errors.hpp"

namespace gramcode {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Rationals always render as `num/den`, integers included (`3/1`).
inline std::string to_string(const Rational& v) {
  return boost::multiprecision::numerator(v).str() + "/" +
         boost::multiprecision::denominator(v).str();
}

inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ValidationError("not a rational number: '" + text + "'");
  }
}

inline BigInt lcm_of(const std::vector<std::int64_t>& values) {
  BigInt acc = 1;
  for (auto v : values) {
    BigInt b = v;
    acc = acc / boost::multiprecision::gcd(acc, b) * b;
  }
  return acc;
}

inline BigInt pow_big(std::int64_t base, unsigned exp) {
  return boost::multiprecision::pow(BigInt(base), exp);
}

// floor(a / b) and ceil(a / b) for b > 0.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a > 0)) ++q;
  return q;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// Extended Euclid: returns g = gcd(a, b) and x with a*x = g (mod b).
inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  std::int64_t x1 = 0, y1 = 0;
  std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

/// Residue class {x : x = residue (mod modulus)}; modulus 0 encodes the empty set.
struct Congruence {
  std::int64_t residue = 0;
  std::int64_t modulus = 1;

  bool empty() const { return modulus == 0; }
};

/// Solutions of a*x = b (mod m), m > 0.
inline Congruence solve_linear_congruence(std::int64_t a, std::int64_t b, std::int64_t m) {
  a = mod_floor(a, m);
  b = mod_floor(b, m);
  std::int64_t x = 0, y = 0;
  std::int64_t g = ext_gcd(a, m, x, y);
  if (g < 0) g = -g;
  if (a == 0) return b == 0 ? Congruence{0, 1} : Congruence{0, 0};
  if (b % g != 0) return {0, 0};
  std::int64_t mg = m / g;
  auto r = static_cast<std::int64_t>(
      (static_cast<__int128>(mod_floor(x, mg)) * (b / g)) % mg);
  return {r, mg};
}

/// Intersection of two residue classes (moduli need not be coprime).
inline Congruence combine(Congruence a, Congruence b) {
  if (a.empty() || b.empty()) return {0, 0};
  // a.residue + a.modulus * k = b.residue (mod b.modulus)
  Congruence k = solve_linear_congruence(a.modulus, b.residue - a.residue, b.modulus);
  if (k.empty()) return {0, 0};
  std::int64_t modulus = a.modulus / std::gcd(a.modulus, b.modulus) * b.modulus;
  __int128 r = static_cast<__int128>(a.residue) + static_cast<__int128>(a.modulus) * k.residue;
  return {static_cast<std::int64_t>(((r % modulus) + modulus) % modulus), modulus};
}

/// Number of integers x in [lo, hi] with x in the residue class.
inline std::int64_t count_in_range(std::int64_t lo, std::int64_t hi, Congruence c) {
  if (c.empty() || hi < lo) return 0;
  std::int64_t first = lo + mod_floor(c.residue - lo, c.modulus);
  if (first > hi) return 0;
  return (hi - first) / c.modulus + 1;
}

inline std::int64_t first_in_range(std::int64_t lo, Congruence c) {
  return lo + mod_floor(c.residue - lo, c.modulus);
}

}  // namespace gramcode
