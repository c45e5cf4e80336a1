#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "fphase/error.hpp"

namespace fphase {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rat(long long num, long long den = 1) {
  if (den == 0) fail(ErrorKind::singularity, "rational with zero denominator");
  return Rational(num, den);
}

inline Rational rat_pow(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (base.is_zero()) {
    if (exp < 0) fail(ErrorKind::singularity, "0 raised to a negative power");
    return Rational(0);
  }
  Rational b = exp > 0 ? base : Rational(1) / base;
  unsigned long e = exp > 0 ? static_cast<unsigned long>(exp) : static_cast<unsigned long>(-exp);
  Rational acc(1);
  while (e) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

// Canonical text: "p" or "p/q" with q > 0 and gcd(p, q) = 1 (cpp_rational keeps
// that invariant).
inline std::string rat_text(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double rat_double(const Rational& r) { return static_cast<double>(r); }

}  // namespace fphase

#include "fphase/text.hpp"

namespace fphase {

// Parses "p", "-p", or "p/q" with arbitrary-precision integers.
inline Rational rat_parse(TextCursor& c) {
  c.skip_ws();
  std::string num;
  if (c.peek() == '+' || c.peek() == '-') num.push_back(c.take());
  size_t digits = 0;
  while (std::isdigit(static_cast<unsigned char>(c.peek()))) {
    num.push_back(c.take());
    ++digits;
  }
  if (digits == 0) c.fail_here("expected rational");
  BigInt n(num);
  if (c.try_eat('/')) {
    std::string den;
    while (std::isdigit(static_cast<unsigned char>(c.peek()))) den.push_back(c.take());
    if (den.empty()) c.fail_here("expected denominator");
    BigInt d(den);
    if (d.is_zero()) c.fail_here("zero denominator");
    return Rational(n, d);
  }
  return Rational(n);
}

}  // namespace fphase
