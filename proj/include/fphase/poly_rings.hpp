#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "fphase/complex_rings.hpp"

// Two formal extensions of Q(i, sqrt2):
//  * EpsRing: rational functions in a regulator "e" (used for the t = 1 - e
//    limits; every finite-mode overlap is a polynomial in e, the rational
//    closure only carries intermediate denominators).
//  * ExpUnitRing: Laurent polynomials in a formal unit "u" standing for
//    exp(c) of an indeterminate scalar c, with u^a * u^b = u^(a+b).

namespace fphase {

// ---------------------------------------------------------------------------
// Dense univariate polynomials over CQS2, trailing zeros trimmed.

class Poly {
 public:
  std::vector<CQS2> c;  // c[k] multiplies e^k

  Poly() = default;
  explicit Poly(CQS2 k) {
    if (!k.is_zero()) c.push_back(std::move(k));
  }

  static Poly var() {
    Poly p;
    p.c = {CQS2::zero(), CQS2::one()};
    return p;
  }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for 0
  int valuation() const {  // lowest nonzero power; -1 for 0
    for (size_t k = 0; k < c.size(); ++k)
      if (!c[k].is_zero()) return static_cast<int>(k);
    return -1;
  }
  CQS2 coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : CQS2::zero();
  }
  CQS2 lead() const { return c.empty() ? CQS2::zero() : c.back(); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  Poly operator+(const Poly& o) const {
    Poly r;
    r.c.resize(std::max(c.size(), o.c.size()), CQS2::zero());
    for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = coeff(k) + o.coeff(k);
    r.trim();
    return r;
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    Poly r;
    r.c.assign(c.size() + o.c.size() - 1, CQS2::zero());
    for (size_t a = 0; a < c.size(); ++a) {
      if (c[a].is_zero()) continue;
      for (size_t b = 0; b < o.c.size(); ++b) r.c[a + b] = r.c[a + b] + c[a] * o.c[b];
    }
    r.trim();
    return r;
  }
  Poly scaled(const CQS2& k) const {
    Poly r;
    if (k.is_zero()) return r;
    r.c = c;
    for (auto& x : r.c) x = x * k;
    return r;
  }
  Poly conj() const {
    Poly r = *this;
    for (auto& x : r.c) x = x.conj();
    return r;
  }
  bool operator==(const Poly& o) const { return c == o.c; }

  // Division with remainder; divisor must be nonzero.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) fail(ErrorKind::singularity, "polynomial division by zero");
    q = {};
    r = a;
    CQS2 lead_inv = b.lead().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      int shift = r.degree() - b.degree();
      CQS2 f = r.lead() * lead_inv;
      Poly t;
      t.c.assign(shift + 1, CQS2::zero());
      t.c[shift] = f;
      q = q + t;
      r = r - t * b;
    }
  }

  Poly monic() const {
    if (is_zero()) return {};
    return scaled(lead().inv());
  }

  static Poly gcd(Poly a, Poly b) {
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
      Poly q, r;
      divmod(a, b, q, r);
      a = b;
      b = r.monic();
    }
    return a;  // monic (or zero)
  }

  std::string text() const {
    if (is_zero()) return "(0)";
    std::string out;
    for (size_t k = 0; k < c.size(); ++k) {
      if (c[k].is_zero()) continue;
      if (!out.empty()) out += "+";
      out += "(" + c[k].text() + ")";
      if (k == 1) out += "e";
      if (k > 1) out += "e^" + std::to_string(k);
    }
    return out;
  }
  static Poly parse(TextCursor& cur) {
    Poly p;
    do {
      cur.expect('(');
      CQS2 k = CQS2::parse(cur);
      cur.expect(')');
      long long deg = 0;
      if (cur.try_eat('e')) {
        deg = 1;
        if (cur.try_eat('^')) deg = cur.integer();
      }
      if (deg < 0) cur.fail_here("negative polynomial exponent");
      Poly t;
      t.c.assign(deg + 1, CQS2::zero());
      t.c[deg] = k;
      p = p + t;
    } while (cur.try_eat('+'));
    return p;
  }
};

// ---------------------------------------------------------------------------
// Rational functions in the regulator e; canonical form has a monic
// denominator coprime to the numerator, so equality is componentwise.

class EpsRing {
 public:
  Poly num, den;

  EpsRing() : den(CQS2::one()) {}
  EpsRing(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) { reduce(); }

  static constexpr bool is_exact = true;
  static constexpr bool has_sqrt2 = true;
  static EpsRing zero() { return {}; }
  static EpsRing one() { return constant(CQS2::one()); }
  static EpsRing i() { return constant(CQS2::i()); }
  static EpsRing constant(const CQS2& k) {
    EpsRing r;
    r.num = Poly(k);
    return r;
  }
  static EpsRing from_int(long long n) { return constant(CQS2::from_int(n)); }
  static EpsRing from_rational(const Rational& r) { return constant(CQS2::from_rational(r)); }
  static EpsRing from_gaussian(const Rational& r, const Rational& i) {
    return constant(CQS2::from_gaussian(r, i));
  }
  static EpsRing sqrt2() { return constant(CQS2::sqrt2()); }
  static EpsRing eps() {
    EpsRing r;
    r.num = Poly::var();
    return r;
  }

  void reduce() {
    if (den.is_zero()) fail(ErrorKind::singularity, "zero denominator in regulator ring");
    if (num.is_zero()) {
      den = Poly(CQS2::one());
      return;
    }
    Poly g = Poly::gcd(num, den);
    if (g.degree() > 0) {
      Poly q, r;
      Poly::divmod(num, g, q, r);
      num = q;
      Poly::divmod(den, g, q, r);
      den = q;
    }
    CQS2 lead_inv = den.lead().inv();
    num = num.scaled(lead_inv);
    den = den.scaled(lead_inv);
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_polynomial() const { return den.degree() == 0; }
  EpsRing conj() const { return {num.conj(), den.conj()}; }
  EpsRing operator-() const {
    EpsRing r = *this;
    r.num = -r.num;
    return r;
  }
  EpsRing operator+(const EpsRing& o) const { return {num * o.den + o.num * den, den * o.den}; }
  EpsRing operator-(const EpsRing& o) const { return {num * o.den - o.num * den, den * o.den}; }
  EpsRing operator*(const EpsRing& o) const { return {num * o.num, den * o.den}; }
  EpsRing inv() const {
    if (is_zero()) fail(ErrorKind::singularity, "division by zero in regulator ring");
    return {den, num};
  }
  bool operator==(const EpsRing& o) const { return num == o.num && den == o.den; }

  // Exact Laurent coefficient of e^k in the expansion around e = 0.
  CQS2 laurent_coeff(int k) const {
    if (is_zero()) return CQS2::zero();
    int dv = den.valuation();
    int target = k + dv;  // coefficient index in num / (den shifted to unit)
    if (target < 0) return CQS2::zero();
    // den = e^dv * u with u(0) != 0; invert u as a power series up to "target".
    std::vector<CQS2> u(den.c.begin() + dv, den.c.end());
    std::vector<CQS2> uinv(target + 1, CQS2::zero());
    CQS2 u0inv = u[0].inv();
    uinv[0] = u0inv;
    for (int n = 1; n <= target; ++n) {
      CQS2 acc = CQS2::zero();
      for (int j = 1; j <= n && j < static_cast<int>(u.size()); ++j)
        acc = acc + u[j] * uinv[n - j];
      uinv[n] = -(acc * u0inv);
    }
    CQS2 out = CQS2::zero();
    for (int j = 0; j <= target; ++j) out = out + num.coeff(j) * uinv[target - j];
    return out;
  }
  // Lowest Laurent order (num != 0), i.e. valuation at e = 0.
  int order() const {
    if (is_zero()) fail(ErrorKind::internal, "order of zero");
    return num.valuation() - den.valuation();
  }

  std::string text() const {
    if (is_polynomial()) return "[" + num.text() + "]";
    return "[" + num.text() + "]/[" + den.text() + "]";
  }
  static EpsRing parse(TextCursor& cur) {
    cur.expect('[');
    Poly n = Poly::parse(cur);
    cur.expect(']');
    Poly d(CQS2::one());
    if (cur.try_eat("/[")) {
      d = Poly::parse(cur);
      cur.expect(']');
    }
    return {std::move(n), std::move(d)};
  }
};

// ---------------------------------------------------------------------------
// Laurent polynomials in the formal exponential unit u = exp(c).

class ExpUnitRing {
 public:
  std::map<long, CQS2> terms;  // exponent -> coefficient, no zero entries

  ExpUnitRing() = default;

  static constexpr bool is_exact = true;
  static constexpr bool has_sqrt2 = true;
  static ExpUnitRing zero() { return {}; }
  static ExpUnitRing one() { return constant(CQS2::one()); }
  static ExpUnitRing i() { return constant(CQS2::i()); }
  static ExpUnitRing constant(const CQS2& k) {
    ExpUnitRing r;
    if (!k.is_zero()) r.terms[0] = k;
    return r;
  }
  static ExpUnitRing from_int(long long n) { return constant(CQS2::from_int(n)); }
  static ExpUnitRing from_rational(const Rational& r) { return constant(CQS2::from_rational(r)); }
  static ExpUnitRing from_gaussian(const Rational& r, const Rational& i) {
    return constant(CQS2::from_gaussian(r, i));
  }
  static ExpUnitRing sqrt2() { return constant(CQS2::sqrt2()); }
  static ExpUnitRing unit(long k) {  // u^k
    ExpUnitRing r;
    r.terms[k] = CQS2::one();
    return r;
  }

  bool is_zero() const { return terms.empty(); }
  // u = exp(c) is treated as a real positive unit: conjugation fixes it.
  ExpUnitRing conj() const {
    ExpUnitRing r;
    for (auto& [k, v] : terms) r.terms[k] = v.conj();
    return r;
  }
  ExpUnitRing operator-() const {
    ExpUnitRing r;
    for (auto& [k, v] : terms) r.terms[k] = -v;
    return r;
  }
  ExpUnitRing operator+(const ExpUnitRing& o) const {
    ExpUnitRing r = *this;
    for (auto& [k, v] : o.terms) {
      auto it = r.terms.find(k);
      if (it == r.terms.end()) {
        r.terms[k] = v;
      } else {
        it->second = it->second + v;
        if (it->second.is_zero()) r.terms.erase(it);
      }
    }
    return r;
  }
  ExpUnitRing operator-(const ExpUnitRing& o) const { return *this + (-o); }
  ExpUnitRing operator*(const ExpUnitRing& o) const {
    ExpUnitRing r;
    for (auto& [ka, va] : terms)
      for (auto& [kb, vb] : o.terms) {
        CQS2 p = va * vb;
        if (p.is_zero()) continue;
        auto it = r.terms.find(ka + kb);
        if (it == r.terms.end()) {
          r.terms[ka + kb] = p;
        } else {
          it->second = it->second + p;
          if (it->second.is_zero()) r.terms.erase(it);
        }
      }
    return r;
  }
  ExpUnitRing inv() const {
    if (terms.size() != 1)
      fail(ErrorKind::singularity, "only monomials are invertible in the exp-unit ring");
    auto& [k, v] = *terms.begin();
    ExpUnitRing r;
    r.terms[-k] = v.inv();
    return r;
  }
  bool operator==(const ExpUnitRing& o) const { return terms == o.terms; }

  std::string text() const {
    if (terms.empty()) return "(0)";
    std::string out;
    for (auto& [k, v] : terms) {
      if (!out.empty()) out += "+";
      out += "(" + v.text() + ")";
      if (k == 1) out += "u";
      if (k != 0 && k != 1) out += "u^" + std::to_string(k);
    }
    return out;
  }
  static ExpUnitRing parse(TextCursor& cur) {
    ExpUnitRing r;
    do {
      cur.expect('(');
      CQS2 v = CQS2::parse(cur);
      cur.expect(')');
      long k = 0;
      if (cur.try_eat('u')) {
        k = 1;
        if (cur.try_eat('^')) k = static_cast<long>(cur.integer());
      }
      r = r + (constant(v) * unit(k));
    } while (cur.try_eat('+'));
    return r;
  }
};

}  // namespace fphase
