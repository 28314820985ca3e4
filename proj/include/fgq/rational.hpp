#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

#include "fgq/errors.hpp"

namespace fgq {

// Exact scalar for the invariant form, radii and half-space functionals.
// Desk-scale inputs keep every intermediate far below 64-bit limits.
using Rational = boost::rational<long long>;

inline long long ratNum(const Rational& r) { return r.numerator(); }
inline long long ratDen(const Rational& r) { return r.denominator(); }

inline bool isIntegerValued(const Rational& r) { return r.denominator() == 1; }

// Largest integer n with n <= r.
inline long long ratFloor(const Rational& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

inline long long ratCeil(const Rational& r) { return -ratFloor(-r); }

// Largest nonnegative integer b with b*b <= r; 0 when r < 0.
inline long long isqrtBound(const Rational& r) {
  if (r < Rational(0)) return 0;
  long long b = 0;
  while (Rational((b + 1) * (b + 1)) <= r) ++b;
  return b;
}

// Accepts "p", "-p", "p/q".
inline Rational parseRational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    const long long num = std::stoll(text.substr(0, slash));
    const long long den = std::stoll(text.substr(slash + 1));
    if (den == 0) fail(errs::ParseError, "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    fail(errs::ParseError, "not a rational: '" + text + "'");
  } catch (const std::out_of_range&) {
    fail(errs::ParseError, "rational out of range: '" + text + "'");
  }
}

inline std::string toString(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

}  // namespace fgq
