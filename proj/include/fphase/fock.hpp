#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fphase/grassmann.hpp"
#include "fphase/modes.hpp"

namespace fphase {

using Occ = std::uint32_t;

inline int occ_parity(Occ n) { return __builtin_popcount(n) & 1; }

// Basis convention: |n> = (a+_1)^{n_1} ... (a+_M)^{n_M}|vac>, mode indices
// increasing left to right, so acting with a ladder factor on mode m picks up
// (-1)^{#occupied modes below m}.
inline int fock_sign(Occ n, int m) { return occ_parity(n & ((Occ(1) << m) - 1)) ? -1 : 1; }

struct LadderFactor {
  int mode;
  bool create;
  bool operator==(const LadderFactor& o) const { return mode == o.mode && create == o.create; }
};

using LadderWord = std::vector<LadderFactor>;

inline int word_parity(const LadderWord& w) { return (int)(w.size() & 1); }

inline LadderWord word_dagger(const LadderWord& w) {
  LadderWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->mode, !it->create});
  return out;
}

// State with amplitudes written to the LEFT of the basis kets:
// |psi> = sum_n d_n |n>.  The ket |n> itself carries Grassmann parity
// popcount(n), which is what the sign bookkeeping below tracks.
template <class R>
struct FockState {
  const ModeSet* modes = nullptr;
  std::map<Occ, GrassmannElement<R>> amp;

  static FockState vacuum(const ModeSet& ms) { return basis(ms, 0); }

  static FockState basis(const ModeSet& ms, Occ n) {
    FockState s;
    s.modes = &ms;
    s.amp[n] = GrassmannElement<R>::one();
    return s;
  }

  bool is_zero() const {
    for (const auto& [n, d] : amp)
      if (!d.is_zero()) return false;
    return true;
  }

  void prune() {
    for (auto it = amp.begin(); it != amp.end();)
      it = it->second.is_zero() ? amp.erase(it) : std::next(it);
  }

  GrassmannElement<R> amplitude_left(Occ n) const {
    auto it = amp.find(n);
    return it == amp.end() ? GrassmannElement<R>::zero() : it->second;
  }

  // Amplitude in the written-to-the-right display form |n> e_n:
  // d_n |n> = |n> e_n with e_n = (-1)^{p(n) p(d_n)} d_n, termwise.
  GrassmannElement<R> amplitude_right(Occ n) const {
    GrassmannElement<R> d = amplitude_left(n);
    if (occ_parity(n) == 0) return d;
    auto [even, odd] = d.parity_split();
    return even - odd;
  }

  FockState operator+(const FockState& o) const {
    require_same(o);
    FockState s = *this;
    for (const auto& [n, d] : o.amp) {
      auto it = s.amp.find(n);
      if (it == s.amp.end())
        s.amp[n] = d;
      else
        it->second = it->second + d;
    }
    s.prune();
    return s;
  }

  FockState operator-() const {
    FockState s = *this;
    for (auto& [n, d] : s.amp) d = -d;
    return s;
  }

  FockState operator-(const FockState& o) const { return *this + (-o); }

  FockState scaled(const R& k) const {
    FockState s = *this;
    for (auto& [n, d] : s.amp) d = d.scaled(k);
    s.prune();
    return s;
  }

  // g |psi>: plain left multiplication of every amplitude.
  FockState left_mul(const GrassmannElement<R>& g) const {
    FockState s = *this;
    for (auto& [n, d] : s.amp) d = g * d;
    s.prune();
    return s;
  }

  // |psi> g: the factor crosses each ket, d_n |n> g = (-1)^{p(n) p(g)} (d_n g) |n>.
  FockState right_mul(const GrassmannElement<R>& g) const {
    auto [even, odd] = g.parity_split();
    FockState s = *this;
    for (auto& [n, d] : s.amp)
      d = occ_parity(n) ? d * (even - odd) : d * g;
    s.prune();
    return s;
  }

  bool operator==(const FockState& o) const {
    require_same(o);
    return (*this - o).is_zero();
  }

  std::string text() const {
    std::string out;
    int M = modes->modes();
    for (const auto& [n, d] : amp) {
      if (d.is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "[" + d.text() + "]|";
      for (int m = 0; m < M; ++m) out += (n >> m) & 1 ? '1' : '0';
      out += ">";
    }
    return out.empty() ? "0" : out;
  }

  void require_same(const FockState& o) const {
    if (modes && o.modes && modes != o.modes)
      fail(ErrorKind::registry_mismatch, "states built over different mode sets");
  }
};

// Operator as a list of (left coefficient, ladder word) terms.
template <class R>
struct FockOperator {
  const ModeSet* modes = nullptr;
  struct Term {
    GrassmannElement<R> coeff;
    LadderWord word;
  };
  std::vector<Term> terms;

  static FockOperator zero(const ModeSet& ms) {
    FockOperator op;
    op.modes = &ms;
    return op;
  }

  static FockOperator identity(const ModeSet& ms) {
    return from_term(ms, GrassmannElement<R>::one(), {});
  }

  static FockOperator ladder(const ModeSet& ms, int mode, bool create) {
    if (mode < 0 || mode >= ms.modes()) fail(ErrorKind::config, "mode index out of range");
    return from_term(ms, GrassmannElement<R>::one(), {{mode, create}});
  }

  static FockOperator from_term(const ModeSet& ms, const GrassmannElement<R>& c,
                                const LadderWord& w) {
    FockOperator op;
    op.modes = &ms;
    op.terms.push_back({c, w});
    return op;
  }

  // Term written with the coefficient on the RIGHT of the word:
  // W c = (-1)^{p(W) p(c)} c W.
  static FockOperator from_right_coeff(const ModeSet& ms, const LadderWord& w,
                                       const GrassmannElement<R>& c) {
    GrassmannElement<R> cc = c;
    if (word_parity(w)) {
      auto [even, odd] = cc.parity_split();
      cc = even - odd;
    }
    return from_term(ms, cc, w);
  }

  FockOperator operator+(const FockOperator& o) const {
    require_same(o);
    FockOperator r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return r;
  }

  FockOperator operator-() const {
    FockOperator r = *this;
    for (auto& t : r.terms) t.coeff = -t.coeff;
    return r;
  }

  FockOperator operator-(const FockOperator& o) const { return *this + (-o); }

  FockOperator scaled(const R& k) const {
    FockOperator r = *this;
    for (auto& t : r.terms) t.coeff = t.coeff.scaled(k);
    return r;
  }

  FockOperator left_mul(const GrassmannElement<R>& g) const {
    FockOperator r = *this;
    for (auto& t : r.terms) t.coeff = g * t.coeff;
    return r;
  }

  // (c1 W1)(c2 W2) = (-1)^{p(W1) p(c2)} (c1 c2) (W1 W2).
  FockOperator operator*(const FockOperator& o) const {
    require_same(o);
    FockOperator r;
    r.modes = modes ? modes : o.modes;
    for (const auto& a : terms)
      for (const auto& b : o.terms) {
        GrassmannElement<R> c2 = b.coeff;
        if (word_parity(a.word)) {
          auto [even, odd] = c2.parity_split();
          c2 = even - odd;
        }
        LadderWord w = a.word;
        w.insert(w.end(), b.word.begin(), b.word.end());
        r.terms.push_back({a.coeff * c2, w});
      }
    return r;
  }

  // (c W)+ = W+ c* = (-1)^{p(W) p(c)} c* W+.
  FockOperator dagger() const {
    FockOperator r = zero(*modes);
    for (const auto& t : terms) {
      GrassmannElement<R> c = t.coeff.conj();
      if (word_parity(t.word)) {
        auto [even, odd] = c.parity_split();
        c = even - odd;
      }
      r.terms.push_back({c, word_dagger(t.word)});
    }
    return r;
  }

  // Koszul action rule: a term (c, W) sends d |n> to
  // (-1)^{p(W) p(d)} c d (Fock action of W on |n>).
  FockState<R> apply(const FockState<R>& state) const {
    FockState<R> out;
    out.modes = modes ? modes : state.modes;
    for (const auto& t : terms) {
      int pw = word_parity(t.word);
      for (const auto& [n, d] : state.amp) {
        GrassmannElement<R> pre = d;
        if (pw) {
          auto [even, odd] = pre.parity_split();
          pre = even - odd;
        }
        pre = t.coeff * pre;
        if (pre.is_zero()) continue;
        Occ cur = n;
        int sign = 1;
        bool dead = false;
        for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
          Occ bit = Occ(1) << it->mode;
          bool occupied = cur & bit;
          if (it->create == occupied) {
            dead = true;
            break;
          }
          sign *= fock_sign(cur, it->mode);
          cur ^= bit;
        }
        if (dead) continue;
        GrassmannElement<R> add = sign < 0 ? -pre : pre;
        auto slot = out.amp.find(cur);
        if (slot == out.amp.end())
          out.amp[cur] = add;
        else
          slot->second = slot->second + add;
      }
    }
    out.prune();
    return out;
  }

  void require_same(const FockOperator& o) const {
    if (modes && o.modes && modes != o.modes)
      fail(ErrorKind::registry_mismatch, "operators built over different mode sets");
  }

  std::string text() const {
    std::string out;
    for (const auto& t : terms) {
      if (!out.empty()) out += " + ";
      out += "[" + t.coeff.text() + "]";
      for (const auto& f : t.word)
        out += std::string(" a") + (f.create ? "+" : "") + std::to_string(f.mode + 1);
    }
    return out.empty() ? "0" : out;
  }
};

template <class R>
FockOperator<R> commutator(const FockOperator<R>& a, const FockOperator<R>& b) {
  return a * b - b * a;
}

template <class R>
FockOperator<R> anticommutator(const FockOperator<R>& a, const FockOperator<R>& b) {
  return a * b + b * a;
}

// exp(A)|psi> as the terminating series sum A^j |psi> / j!.
template <class R>
FockState<R> op_exp_apply(const FockOperator<R>& a, const FockState<R>& state,
                          int max_power = 64) {
  FockState<R> total = state;
  FockState<R> power = state;
  Rational fact(1);
  for (int j = 1; j <= max_power; ++j) {
    power = a.apply(power);
    if (power.is_zero()) return total;
    fact *= j;
    total = total + power.scaled(R::from_rational(Rational(1) / fact));
  }
  fail(ErrorKind::capacity, "operator exponential did not terminate");
}

template <class R>
GrassmannElement<R> vac_expect(const FockOperator<R>& a) {
  FockState<R> v = FockState<R>::vacuum(*a.modes);
  return a.apply(v).amplitude_left(0);
}

// Bra as the dagger of a stored ket: <psi| = (|dual>)+.
template <class R>
struct FockBra {
  FockState<R> dual;

  static FockBra vacuum(const ModeSet& ms) { return {FockState<R>::vacuum(ms)}; }
  static FockBra of(const FockState<R>& ket) { return {ket}; }

  // <psi| O = (O+ |dual>)+.
  FockBra apply(const FockOperator<R>& op) const { return {op.dagger().apply(dual)}; }

  FockBra scaled(const R& k) const { return {dual.scaled(k.conj())}; }

  // <psi| g: conjugate factor enters the dual ket from the left.
  FockBra right_mul(const GrassmannElement<R>& g) const { return {dual.left_mul(g.conj())}; }
};

// <phi|psi> with |phi> = sum d_n |n>, |psi> = sum e_n |n>:
// sum_n (-1)^{p(n)(p(d_n)+p(e_n))} d_n* e_n.
template <class R>
GrassmannElement<R> inner(const FockBra<R>& bra, const FockState<R>& ket) {
  bra.dual.require_same(ket);
  GrassmannElement<R> acc;
  for (const auto& [n, d] : bra.dual.amp) {
    auto it = ket.amp.find(n);
    if (it == ket.amp.end()) continue;
    GrassmannElement<R> dc = d.conj();
    GrassmannElement<R> e = it->second;
    if (occ_parity(n)) {
      auto [de, dod] = dc.parity_split();
      auto [ee, eod] = e.parity_split();
      acc = acc + (de * ee) + (de * eod).scaled(-R::one()) + (dod * ee).scaled(-R::one()) +
            (dod * eod);
    } else {
      acc = acc + dc * e;
    }
  }
  return acc;
}

// Sector-wise operator equality: split by word parity, compare actions on all
// coefficient-1 occupation basis states.  Sound for the graded action rule
// because within one sector the Koszul sign depends only on the sector parity.
template <class R>
bool op_equal(const FockOperator<R>& a, const FockOperator<R>& b) {
  a.require_same(b);
  const ModeSet& ms = *(a.modes ? a.modes : b.modes);
  int M = ms.modes();
  for (int sector = 0; sector < 2; ++sector) {
    FockOperator<R> pa = FockOperator<R>::zero(ms), pb = FockOperator<R>::zero(ms);
    for (const auto& t : a.terms)
      if (word_parity(t.word) == sector) pa.terms.push_back(t);
    for (const auto& t : b.terms)
      if (word_parity(t.word) == sector) pb.terms.push_back(t);
    for (Occ n = 0; n < (Occ(1) << M); ++n) {
      FockState<R> basis = FockState<R>::basis(ms, n);
      if (!(pa.apply(basis) == pb.apply(basis))) return false;
    }
  }
  return true;
}

template <class R>
bool op_is_zero(const FockOperator<R>& a) {
  return op_equal(a, FockOperator<R>::zero(*a.modes));
}

// Multiply the amplitude of |n> by base^{n - omega/2} (number-diagonal
// exponential with an exact base; base must be invertible when negative
// exponents occur).  omega_half twice the value must be integral.
template <class R>
FockState<R> scale_by_number(const FockState<R>& state, const R& base, const Rational& omega) {
  Rational half = omega / 2;
  if (denominator(half) != 1)
    fail(ErrorKind::config, "omega/2 must be an integer for the number scaling");
  long h = (long)numerator(half);
  FockState<R> out = state;
  for (auto& [n, d] : out.amp) {
    long e = (long)__builtin_popcount(n) - h;
    R f = R::one();
    if (e >= 0)
      for (long j = 0; j < e; ++j) f = f * base;
    else {
      R binv = base.inv();
      for (long j = 0; j < -e; ++j) f = f * binv;
    }
    d = d.scaled(f);
  }
  return out;
}

}  // namespace fphase
