#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "fphase/rational.hpp"
#include "fphase/text.hpp"

// Coefficient rings for the Grassmann algebra.  Every ring exposes the same
// member surface:
//   zero one i from_int from_rational from_gaussian sqrt2 (if has_sqrt2)
//   + - * inv conj is_zero == text parse
// Exact rings decide zero exactly; the float ring prunes magnitudes below
// prune_threshold after every operation.

namespace fphase {

// ---------------------------------------------------------------------------
// Gaussian rationals: a + b*i with a, b in Q.

class CQ {
 public:
  Rational re, im;

  CQ() = default;
  CQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static constexpr bool is_exact = true;
  static constexpr bool has_sqrt2 = false;
  static CQ zero() { return {}; }
  static CQ one() { return {Rational(1), Rational(0)}; }
  static CQ i() { return {Rational(0), Rational(1)}; }
  static CQ from_int(long long n) { return {Rational(n), Rational(0)}; }
  static CQ from_rational(const Rational& r) { return {r, Rational(0)}; }
  static CQ from_gaussian(const Rational& r, const Rational& i) { return {r, i}; }
  static CQ sqrt2() {
    fail(ErrorKind::ring_mismatch, "sqrt(2) is not available in the rational ring");
  }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  CQ conj() const { return {re, -im}; }
  CQ operator-() const { return {-re, -im}; }
  CQ operator+(const CQ& o) const { return {re + o.re, im + o.im}; }
  CQ operator-(const CQ& o) const { return {re - o.re, im - o.im}; }
  CQ operator*(const CQ& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CQ inv() const {
    Rational n = re * re + im * im;
    if (n.is_zero()) fail(ErrorKind::singularity, "division by zero in rational ring");
    return {re / n, -im / n};
  }
  bool operator==(const CQ& o) const { return re == o.re && im == o.im; }

  std::string text() const {
    if (im.is_zero()) return rat_text(re);
    std::string i_part = rat_text(abs(im)) + "i";
    if (re.is_zero()) return (im < 0 ? "-" : "") + i_part;
    return rat_text(re) + (im < 0 ? "-" : "+") + i_part;
  }
  static CQ parse(TextCursor& c) {
    Rational first = rat_parse(c);
    if (c.try_eat('i')) return {Rational(0), first};
    if (c.peek() == '+' || c.peek() == '-') {
      size_t mark = c.pos;
      bool neg = c.take() == '-';
      if (!std::isdigit(static_cast<unsigned char>(c.peek()))) {
        c.pos = mark;  // the +/- opens something that is not our imaginary part
        return {first, Rational(0)};
      }
      Rational second = rat_parse(c);
      if (c.try_eat('i')) return {first, neg ? -second : second};
      c.pos = mark;  // the +/- belonged to an enclosing sum
    }
    return {first, Rational(0)};
  }
};

// ---------------------------------------------------------------------------
// Q(sqrt 2): a + b*sqrt(2), the real quadratic extension used for 2^(M/4)
// normalizations and the 1/sqrt(2) in the mode-mixing operators.

class QS2 {
 public:
  Rational a, b;  // a + b*sqrt(2)

  QS2() = default;
  QS2(Rational x, Rational y) : a(std::move(x)), b(std::move(y)) {}

  static QS2 zero() { return {}; }
  static QS2 one() { return {Rational(1), Rational(0)}; }

  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  QS2 operator-() const { return {-a, -b}; }
  QS2 operator+(const QS2& o) const { return {a + o.a, b + o.b}; }
  QS2 operator-(const QS2& o) const { return {a - o.a, b - o.b}; }
  QS2 operator*(const QS2& o) const {
    return {a * o.a + 2 * b * o.b, a * o.b + b * o.a};
  }
  QS2 inv() const {
    // 1/(a + b*s2) = (a - b*s2)/(a^2 - 2 b^2); the norm vanishes only at 0
    // because sqrt(2) is irrational.
    Rational n = a * a - 2 * b * b;
    if (n.is_zero()) fail(ErrorKind::singularity, "division by zero in sqrt2 ring");
    return {a / n, -b / n};
  }
  bool operator==(const QS2& o) const { return a == o.a && b == o.b; }
  double value() const { return rat_double(a) + rat_double(b) * std::sqrt(2.0); }

  std::string text() const {
    if (b.is_zero()) return rat_text(a);
    std::string s_part = rat_text(abs(b)) + "s2";
    if (a.is_zero()) return (b < 0 ? "-" : "") + s_part;
    return rat_text(a) + (b < 0 ? "-" : "+") + s_part;
  }
  static QS2 parse(TextCursor& c) {
    Rational first = rat_parse(c);
    if (c.try_eat("s2")) return {Rational(0), first};
    if (c.peek() == '+' || c.peek() == '-') {
      size_t mark = c.pos;
      bool neg = c.take() == '-';
      if (!std::isdigit(static_cast<unsigned char>(c.peek()))) {
        c.pos = mark;  // the +/- opens something that is not our sqrt2 part
        return {first, Rational(0)};
      }
      Rational second = rat_parse(c);
      if (c.try_eat("s2")) return {first, neg ? -second : second};
      c.pos = mark;
    }
    return {first, Rational(0)};
  }
};

// ---------------------------------------------------------------------------
// Q(i, sqrt 2): the workhorse exact ring.

class CQS2 {
 public:
  QS2 re, im;

  CQS2() = default;
  CQS2(QS2 r, QS2 i) : re(std::move(r)), im(std::move(i)) {}

  static constexpr bool is_exact = true;
  static constexpr bool has_sqrt2 = true;
  static CQS2 zero() { return {}; }
  static CQS2 one() { return {QS2::one(), QS2::zero()}; }
  static CQS2 i() { return {QS2::zero(), QS2::one()}; }
  static CQS2 from_int(long long n) { return {{Rational(n), Rational(0)}, QS2::zero()}; }
  static CQS2 from_rational(const Rational& r) { return {{r, Rational(0)}, QS2::zero()}; }
  static CQS2 from_gaussian(const Rational& r, const Rational& i) {
    return {{r, Rational(0)}, {i, Rational(0)}};
  }
  static CQS2 sqrt2() { return {{Rational(0), Rational(1)}, QS2::zero()}; }
  // sqrt(2)^e for any integer e (e may be negative).
  static CQS2 sqrt2_pow(long e) {
    Rational scale = rat_pow(Rational(2), e >= 0 ? e / 2 : (e - 1) / 2);
    bool odd = ((e % 2) + 2) % 2 == 1;
    if (!odd) return from_rational(scale);
    return {{Rational(0), scale}, QS2::zero()};
  }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  CQS2 conj() const { return {re, -im}; }
  CQS2 operator-() const { return {-re, -im}; }
  CQS2 operator+(const CQS2& o) const { return {re + o.re, im + o.im}; }
  CQS2 operator-(const CQS2& o) const { return {re - o.re, im - o.im}; }
  CQS2 operator*(const CQS2& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CQS2 inv() const {
    QS2 n = re * re + im * im;
    if (n.is_zero()) fail(ErrorKind::singularity, "division by zero in sqrt2 ring");
    QS2 ninv = n.inv();
    return {re * ninv, -(im * ninv)};
  }
  bool operator==(const CQS2& o) const { return re == o.re && im == o.im; }
  std::complex<double> value() const { return {re.value(), im.value()}; }

  std::string text() const {
    if (im.is_zero()) return re.text();
    std::string i_part = "(" + im.text() + ")i";
    if (re.is_zero()) return i_part;
    return re.text() + "+" + i_part;
  }
  static CQS2 parse(TextCursor& c) {
    if (c.try_eat('(')) {  // bare imaginary "(...)i"
      QS2 i = QS2::parse(c);
      c.expect(')');
      c.expect('i');
      return {QS2::zero(), i};
    }
    QS2 re = QS2::parse(c);
    size_t mark = c.pos;
    if (c.try_eat("+(")) {
      QS2 im = QS2::parse(c);
      c.expect(')');
      c.expect('i');
      return {re, im};
    }
    c.pos = mark;
    return {re, QS2::zero()};
  }
};

// ---------------------------------------------------------------------------
// Complex double with magnitude pruning (profiling ring).

class Cf64 {
 public:
  static constexpr double prune_threshold = 1e-12;
  std::complex<double> v;

  Cf64() : v(0.0) {}
  explicit Cf64(std::complex<double> z) : v(prune(z)) {}

  static constexpr bool is_exact = false;
  static constexpr bool has_sqrt2 = true;
  static Cf64 zero() { return {}; }
  static Cf64 one() { return Cf64({1.0, 0.0}); }
  static Cf64 i() { return Cf64({0.0, 1.0}); }
  static Cf64 from_int(long long n) { return Cf64({static_cast<double>(n), 0.0}); }
  static Cf64 from_rational(const Rational& r) { return Cf64({rat_double(r), 0.0}); }
  static Cf64 from_gaussian(const Rational& r, const Rational& i) {
    return Cf64({rat_double(r), rat_double(i)});
  }
  static Cf64 sqrt2() { return Cf64({std::sqrt(2.0), 0.0}); }

  static std::complex<double> prune(std::complex<double> z) {
    if (std::abs(z.real()) < prune_threshold) z.real(0.0);
    if (std::abs(z.imag()) < prune_threshold) z.imag(0.0);
    return z;
  }

  bool is_zero() const { return v.real() == 0.0 && v.imag() == 0.0; }
  Cf64 conj() const { return Cf64(std::conj(v)); }
  Cf64 operator-() const { return Cf64(-v); }
  Cf64 operator+(const Cf64& o) const { return Cf64(v + o.v); }
  Cf64 operator-(const Cf64& o) const { return Cf64(v - o.v); }
  Cf64 operator*(const Cf64& o) const { return Cf64(v * o.v); }
  Cf64 inv() const {
    if (is_zero()) fail(ErrorKind::singularity, "division by zero in float ring");
    return Cf64(1.0 / v);
  }
  bool operator==(const Cf64& o) const { return v == o.v; }

  std::string text() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", v.real(), v.imag());
    return buf;
  }
  static Cf64 parse(TextCursor& c) {
    c.expect('(');
    auto number = [&c]() -> double {
      size_t start = c.pos;
      while (!c.done() && c.peek() != ',' && c.peek() != ')') c.take();
      try {
        return std::stod(std::string(c.s.substr(start, c.pos - start)));
      } catch (const std::exception&) {
        c.fail_here("expected floating-point number");
      }
    };
    double re = number();
    c.expect(',');
    double im = number();
    c.expect(')');
    Cf64 r;
    r.v = {re, im};  // bypass pruning: preserve parsed value bit-for-bit
    return r;
  }
};

}  // namespace fphase
