#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fphase/generators.hpp"
#include "fphase/rational.hpp"

namespace fphase {

// Element of the Grassmann algebra over a workspace's generators, with
// coefficients in R.  Terms are kept sorted by monomial with no zero
// coefficients, so representation is canonical and equality is structural.
// A monomial bit pattern {i1 < i2 < ...} stands for the ordered product
// g_i1 g_i2 ...; products of disjoint monomials pick up the parity of the
// merge permutation.
template <class R>
class GrassmannElement {
 public:
  struct Term {
    Mono mono;
    R coeff;
    bool operator==(const Term& o) const { return mono == o.mono && coeff == o.coeff; }
  };

  const Workspace* ws = nullptr;  // nullptr: scalar, compatible with any workspace
  std::vector<Term> terms;

  GrassmannElement() = default;

  static GrassmannElement scalar(R v) {
    GrassmannElement e;
    if (!v.is_zero()) e.terms.push_back({Mono(0), std::move(v)});
    return e;
  }
  static GrassmannElement zero() { return {}; }
  static GrassmannElement one() { return scalar(R::one()); }
  static GrassmannElement generator(const Workspace& w, GenId id) {
    if (id < 0 || static_cast<size_t>(id) >= w.size())
      fail(ErrorKind::registry_mismatch, "generator id outside workspace");
    GrassmannElement e;
    e.ws = &w;
    e.terms.push_back({mono_bit(id), R::one()});
    return e;
  }

  bool is_zero() const { return terms.empty(); }
  bool is_scalar() const {
    return terms.empty() || (terms.size() == 1 && terms[0].mono == 0);
  }
  R scalar_part() const {
    if (!terms.empty() && terms[0].mono == 0) return terms[0].coeff;
    return R::zero();
  }
  R coefficient(Mono m) const {
    for (auto& t : terms)
      if (t.mono == m) return t.coeff;
    return R::zero();
  }
  size_t term_count() const { return terms.size(); }
  int max_grade() const {
    int g = 0;
    for (auto& t : terms) g = std::max(g, popcount128(t.mono));
    return g;
  }
  // -1: zero or mixed; 0/1: homogeneous parity.
  int parity() const {
    if (terms.empty()) return -1;
    int p = popcount128(terms[0].mono) & 1;
    for (auto& t : terms)
      if ((popcount128(t.mono) & 1) != p) return -1;
    return p;
  }
  bool is_even() const { return terms.empty() || parity() == 0; }
  bool is_odd() const { return terms.empty() || parity() == 1; }

  std::pair<GrassmannElement, GrassmannElement> parity_split() const {
    GrassmannElement even, odd;
    even.ws = odd.ws = ws;
    for (auto& t : terms) ((popcount128(t.mono) & 1) ? odd : even).terms.push_back(t);
    return {std::move(even), std::move(odd)};
  }

  static const Workspace* join_ws(const GrassmannElement& a, const GrassmannElement& b) {
    if (a.ws && b.ws && a.ws != b.ws)
      fail(ErrorKind::registry_mismatch, "elements belong to different workspaces");
    return a.ws ? a.ws : b.ws;
  }

  GrassmannElement operator-() const {
    GrassmannElement r = *this;
    for (auto& t : r.terms) t.coeff = -t.coeff;
    return r;
  }

  GrassmannElement operator+(const GrassmannElement& o) const {
    GrassmannElement r;
    r.ws = join_ws(*this, o);
    r.terms.reserve(terms.size() + o.terms.size());
    size_t a = 0, b = 0;
    while (a < terms.size() || b < o.terms.size()) {
      if (b == o.terms.size() || (a < terms.size() && terms[a].mono < o.terms[b].mono)) {
        r.terms.push_back(terms[a++]);
      } else if (a == terms.size() || o.terms[b].mono < terms[a].mono) {
        r.terms.push_back(o.terms[b++]);
      } else {
        R c = terms[a].coeff + o.terms[b].coeff;
        if (!c.is_zero()) r.terms.push_back({terms[a].mono, std::move(c)});
        ++a;
        ++b;
      }
    }
    return r;
  }
  GrassmannElement operator-(const GrassmannElement& o) const { return *this + (-o); }

  GrassmannElement scaled(const R& k) const {
    GrassmannElement r;
    r.ws = ws;
    if (k.is_zero()) return r;
    r.terms.reserve(terms.size());
    for (auto& t : terms) {
      R c = t.coeff * k;
      if (!c.is_zero()) r.terms.push_back({t.mono, std::move(c)});
    }
    return r;
  }

  GrassmannElement operator*(const GrassmannElement& o) const {
    GrassmannElement r;
    r.ws = join_ws(*this, o);
    std::map<Mono, R> acc;
    for (auto& ta : terms)
      for (auto& tb : o.terms) {
        if (ta.mono & tb.mono) continue;  // nilpotency
        R c = ta.coeff * tb.coeff;
        if (merge_sign_negative(ta.mono, tb.mono)) c = -c;
        Mono m = ta.mono | tb.mono;
        auto it = acc.find(m);
        if (it == acc.end()) {
          acc.emplace(m, std::move(c));
        } else {
          it->second = it->second + c;
        }
      }
    r.terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!c.is_zero()) r.terms.push_back({m, std::move(c)});
    return r;
  }

  bool operator==(const GrassmannElement& o) const {
    if (ws && o.ws && ws != o.ws) return false;
    return terms == o.terms;
  }

  // Reversal antiautomorphism combined with coefficient conjugation:
  // (c g_i g_j)* = conj(c) g_j g_i; generators are self-conjugate.
  GrassmannElement conj() const {
    GrassmannElement r;
    r.ws = ws;
    r.terms.reserve(terms.size());
    for (auto& t : terms) {
      int g = popcount128(t.mono);
      R c = t.coeff.conj();
      if ((g * (g - 1) / 2) & 1) c = -c;
      r.terms.push_back({t.mono, std::move(c)});
    }
    return r;
  }

  // exp of a nilpotent element; the scalar part must vanish.
  GrassmannElement exp_nilpotent() const {
    if (!scalar_part().is_zero())
      fail(ErrorKind::nilpotency, "exp of an element with nonzero scalar part");
    GrassmannElement acc = one();
    acc.ws = ws;
    GrassmannElement power = one();
    power.ws = ws;
    for (int k = 1; k <= kMaxGenerators + 1; ++k) {
      power = power * *this;
      if (power.is_zero()) return acc;
      power = power.scaled(R::from_rational(Rational(1, k)));
      acc = acc + power;
    }
    fail(ErrorKind::capacity, "exp series did not terminate");
  }

  // Left derivative with respect to one generator: strips v from the front of
  // each monomial containing it, with the sign of commuting it there.
  GrassmannElement derivative(GenId v) const {
    GrassmannElement r;
    r.ws = ws;
    Mono bit = mono_bit(v);
    Mono below = bit - 1;
    for (auto& t : terms) {
      if (!(t.mono & bit)) continue;
      R c = t.coeff;
      if (popcount128(t.mono & below) & 1) c = -c;
      r.terms.push_back({t.mono & ~bit, std::move(c)});
    }
    std::sort(r.terms.begin(), r.terms.end(),
              [](const Term& a, const Term& b) { return a.mono < b.mono; });
    return r;
  }

  // Berezin integral over vars, applied right to left: integrate(a, {q1..qM})
  // is the measure with dq_M innermost.
  GrassmannElement berezin(const std::vector<GenId>& vars) const {
    GrassmannElement r = *this;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) r = r.derivative(*it);
    return r;
  }

  // Algebra morphism sending each mapped generator to an odd element (others
  // stay themselves); a monomial maps to the ordered product of the images.
  GrassmannElement substitute(const std::map<GenId, GrassmannElement>& images) const {
    for (auto& [id, img] : images) {
      if (!(img.is_zero() || img.parity() == 1))
        fail(ErrorKind::parity, "substitution image for generator " + std::to_string(id) +
                                    " is not odd");
    }
    GrassmannElement out;
    out.ws = ws;
    for (auto& [id, img] : images) out.ws = join_ws(out, img);
    const Workspace* result_ws = out.ws;
    out = zero();
    out.ws = result_ws;
    for (auto& t : terms) {
      GrassmannElement piece = scalar(t.coeff);
      piece.ws = result_ws;
      Mono m = t.mono;
      while (m) {
        int id = lowest_bit128(m);
        m &= m - 1;
        auto it = images.find(id);
        if (it != images.end()) {
          piece = piece * it->second;
        } else {
          GrassmannElement g;
          g.ws = result_ws;
          g.terms.push_back({mono_bit(id), R::one()});
          piece = piece * g;
        }
        if (piece.is_zero()) break;
      }
      out = out + piece;
    }
    return out;
  }

  std::string text() const {
    if (terms.empty()) return "(0)";
    std::string out;
    for (auto& t : terms) {
      if (!out.empty()) out += " + ";
      out += "(" + t.coeff.text() + ")";
      Mono m = t.mono;
      while (m) {
        int id = lowest_bit128(m);
        m &= m - 1;
        out += " g" + std::to_string(id);
      }
    }
    return out;
  }

  static GrassmannElement parse(const Workspace& w, TextCursor& cur) {
    GrassmannElement out;
    out.ws = &w;
    cur.skip_ws();
    do {
      cur.skip_ws();
      cur.expect('(');
      R c = R::parse(cur);
      cur.expect(')');
      GrassmannElement term = scalar(std::move(c));
      term.ws = &w;
      cur.skip_ws();
      while (cur.peek() == 'g') {
        cur.expect('g');
        long long id = cur.integer();
        if (id < 0 || static_cast<size_t>(id) >= w.size())
          cur.fail_here("generator id outside workspace");
        term = term * generator(w, static_cast<GenId>(id));
        cur.skip_ws();
      }
      out = out + term;
      cur.skip_ws();
    } while (cur.try_eat('+'));
    return out;
  }
  static GrassmannElement parse(const Workspace& w, std::string_view s) {
    TextCursor cur(s);
    GrassmannElement e = parse(w, cur);
    cur.skip_ws();
    if (!cur.done()) cur.fail_here("trailing input");
    return e;
  }
};

template <class R>
GrassmannElement<R> operator*(const R& k, const GrassmannElement<R>& e) {
  return e.scaled(k);
}

}  // namespace fphase
