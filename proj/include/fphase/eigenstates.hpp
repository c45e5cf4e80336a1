#pragma once

#include <random>
#include <string>

#include "fphase/bogoliubov.hpp"
#include "fphase/check.hpp"

namespace fphase {

// The four quadrature-type operators diagonalized by rendered Gaussian
// states: g, g-dagger, h, h-dagger.
enum class BogoKind { g, g_bar, h, h_bar };

inline const char* bogo_kind_name(BogoKind k) {
  switch (k) {
    case BogoKind::g: return "g";
    case BogoKind::g_bar: return "g_bar";
    case BogoKind::h: return "h";
    case BogoKind::h_bar: return "h_bar";
  }
  return "?";
}

// (eps . f)_{k,r} = sum_s eps_{rs} f_{k,s}: the pairing rotation acting on a
// parameter function at fixed k.
template <class R>
ParameterFunction<R> eps_dot(const ParameterFunction<R>& f) {
  const ModeSet& ms = *f.modes;
  ParameterFunction<R> out = f;
  for (int k = 0; k < ms.k_count; ++k)
    for (int r = 0; r < ms.spin_count; ++r) {
      GrassmannElement<R> acc;
      for (int s = 0; s < ms.spin_count; ++s) {
        R e = ring_from_cq<R>(ms.eps_at(r, s));
        if (!e.is_zero()) acc = acc + f.at(ms.mode(k, s)).scaled(e);
      }
      out.comp[ms.mode(k, r)] = acc;
    }
  return out;
}

template <class R>
R sqrt2_int_pow(long e) {
  static_assert(R::has_sqrt2, "sqrt2 powers need a sqrt2-carrying ring");
  R s = R::sqrt2();
  if (e < 0) {
    s = s.inv();
    e = -e;
  }
  R acc = R::one();
  for (long j = 0; j < e; ++j) acc = acc * s;
  return acc;
}

// a+ <> A = sum_m w_m a+_m A_m with the coefficient written to the right of
// the creation operator.
template <class R>
FockOperator<R> smeared_raising(const ModeSet& ms, const ParameterFunction<R>& A) {
  FockOperator<R> op = FockOperator<R>::zero(ms);
  for (int m = 0; m < ms.modes(); ++m)
    op = op + FockOperator<R>::from_right_coeff(ms, {{m, true}},
                                                A.at(m).scaled(R::from_rational(ms.weight(m))));
  return op;
}

// C <> a = sum_m w_m C_m a_m.
template <class R>
FockOperator<R> smeared_lowering(const ModeSet& ms, const ParameterFunction<R>& C) {
  FockOperator<R> op = FockOperator<R>::zero(ms);
  for (int m = 0; m < ms.modes(); ++m)
    op = op + FockOperator<R>::ladder(ms, m, false)
                  .left_mul(C.at(m).scaled(R::from_rational(ms.weight(m))));
  return op;
}

// Spectral data of a rendered state: the coefficient function of the smeared
// ladder part and the sign of the pair part.  For right kets the coefficient
// is A in exp(a+ <> A + c0 R+)|vac>; for left bras it is the function C in
// <vac| exp(C <> a + c0 R).
template <class R>
struct SpectralMap {
  ParameterFunction<R> coeff;
  int c0 = 1;
};

template <class R>
SpectralMap<R> right_spectral(BogoKind k, const ParameterFunction<R>& f) {
  R s2 = R::sqrt2();
  R ms2 = s2 * R::from_int(-1);
  switch (k) {
    case BogoKind::g: return {f.scaled(s2), -1};
    case BogoKind::g_bar: return {eps_dot(f).scaled(ms2), +1};
    case BogoKind::h: return {f.scaled(ms2 * R::i()), +1};
    case BogoKind::h_bar: return {eps_dot(f).scaled(s2 * R::i()), -1};
  }
  fail(ErrorKind::config, "unknown kind");
}

template <class R>
SpectralMap<R> left_spectral(BogoKind k, const ParameterFunction<R>& f) {
  R s2 = R::sqrt2();
  switch (k) {
    case BogoKind::g: return {eps_dot(f).scaled(s2), +1};
    case BogoKind::g_bar: return {f.scaled(s2), -1};
    case BogoKind::h: return {eps_dot(f).scaled(s2 * R::i()), -1};
    case BogoKind::h_bar: return {f.scaled(s2 * R::i()), +1};
  }
  fail(ErrorKind::config, "unknown kind");
}

// Prefactor 2^{-Omega/4} exp((1/2) f fdia f): Grassmann-even with an
// invertible scalar part.  Needs Omega/2 integral so the power of sqrt2 is
// exact.
template <class R>
GrassmannElement<R> eigen_prefactor(const ModeSet& ms, const ParameterFunction<R>& f) {
  Rational half = ms.omega() / 2;
  if (denominator(half) != 1)
    fail(ErrorKind::config, "prefactor needs an integral half mode weight total");
  GrassmannElement<R> ex = contract_eps(f, f).scaled(R::from_rational(rat(1, 2)));
  return ex.exp_nilpotent().scaled(sqrt2_int_pow<R>(-(long)numerator(half)));
}

template <class R>
FockOperator<R> rendering_exponent_right(const ModeSet& ms, BogoKind k,
                                         const ParameterFunction<R>& f) {
  SpectralMap<R> sm = right_spectral(k, f);
  return smeared_raising(ms, sm.coeff) +
         BosonizedFamily<R>::pair_raising(ms).scaled(R::from_int(sm.c0));
}

// |f_R> = F exp(a+ <> A + c0 R+)|vac>.
template <class R>
FockState<R> render_right(const ModeSet& ms, BogoKind k, const ParameterFunction<R>& f,
                          bool prefactor = true) {
  if (!ms.has_pairing()) fail(ErrorKind::config, "rendering needs a pairing structure");
  f.check_odd();
  FockState<R> st = op_exp_apply(rendering_exponent_right(ms, k, f), FockState<R>::vacuum(ms));
  return prefactor ? st.left_mul(eigen_prefactor(ms, f)) : st;
}

// <f_L| = F <vac| exp(C <> a + c0 R), stored through its dual ket
// exp(a+ <> C* + c0 R+)|vac> times F*.
template <class R>
FockBra<R> render_left(const ModeSet& ms, BogoKind k, const ParameterFunction<R>& f,
                       bool prefactor = true) {
  if (!ms.has_pairing()) fail(ErrorKind::config, "rendering needs a pairing structure");
  f.check_odd();
  SpectralMap<R> sm = left_spectral(k, f);
  FockOperator<R> xdag = smeared_raising(ms, sm.coeff.star()) +
                         BosonizedFamily<R>::pair_raising(ms).scaled(R::from_int(sm.c0));
  FockState<R> dual = op_exp_apply(xdag, FockState<R>::vacuum(ms));
  if (prefactor) dual = dual.right_mul(eigen_prefactor(ms, f).conj());
  return {dual};
}

template <class R>
const FockOperator<R>& eigen_operator(const BogoliubovSet<R>& b, BogoKind k, int mode) {
  switch (k) {
    case BogoKind::g: return b.g[mode];
    case BogoKind::g_bar: return b.g_dag[mode];
    case BogoKind::h: return b.h[mode];
    case BogoKind::h_bar: return b.h_dag[mode];
  }
  fail(ErrorKind::config, "unknown kind");
}

// op|psi> - |psi> lambda with the graded right multiplication.
template <class R>
FockState<R> eigen_residual_right(const FockOperator<R>& op, const FockState<R>& st,
                                  const GrassmannElement<R>& lambda) {
  return op.apply(st) - st.right_mul(lambda);
}

// Dual form of <psi| op = lambda <psi|: the bra stores |dual> with
// <psi| = (|dual>)+, so the relation reads op+ |dual> = |dual> pre-multiplied
// by lambda*.
template <class R>
FockState<R> eigen_residual_left(const FockOperator<R>& op, const FockBra<R>& bra,
                                 const GrassmannElement<R>& lambda) {
  return op.dagger().apply(bra.dual) - bra.dual.left_mul(lambda.conj());
}

// All eight eigen-equations at generic parameters: four right kets, four left
// bras, every mode.
template <class R>
CheckList eigen_equation_checks(Workspace& ws, const ModeSet& ms, std::mt19937_64& rng) {
  CheckList out;
  BogoliubovSet<R> bog = BogoliubovSet<R>::build(ms);
  for (BogoKind k : {BogoKind::g, BogoKind::g_bar, BogoKind::h, BogoKind::h_bar}) {
    std::string nm = bogo_kind_name(k);
    {
      auto f = ParameterFunction<R>::random(ws, ms, "fr_" + nm, rng);
      FockState<R> st = render_right(ms, k, f);
      bool ok = true;
      std::string res;
      for (int m = 0; m < ms.modes() && ok; ++m) {
        FockState<R> r = eigen_residual_right(eigen_operator(bog, k, m), st, f.at(m));
        if (!r.is_zero()) {
          ok = false;
          res = "mode " + std::to_string(m) + ": " + r.text();
        }
      }
      out.push_back(make_check(nm + std::string("_op |") + nm + "_R> = |" + nm + "_R> f", ok, res));
    }
    {
      auto f = ParameterFunction<R>::random(ws, ms, "fl_" + nm, rng);
      FockBra<R> bra = render_left(ms, k, f);
      bool ok = true;
      std::string res;
      for (int m = 0; m < ms.modes() && ok; ++m) {
        FockState<R> r = eigen_residual_left(eigen_operator(bog, k, m), bra, f.at(m));
        if (!r.is_zero()) {
          ok = false;
          res = "mode " + std::to_string(m) + ": " + r.text();
        }
      }
      out.push_back(make_check(std::string("<") + nm + "_L| " + nm + "_op = f <" + nm + "_L|", ok, res));
    }
  }
  return out;
}

// Particle-wise pairing rotation of a ket: every creation factor a+_{k,r} of
// the occupation word is replaced by sum_s eps_{rs} a+_{k,s}; amplitudes pass
// through unchanged.  This is the ket-to-bra fermionic adjoint written on the
// dual: (|psi>)++ as a bra has exactly this state as its dual ket.
template <class R>
FockState<R> state_adjoint_flip(const FockState<R>& st) {
  const ModeSet& ms = *st.modes;
  FockState<R> out = FockState<R>::vacuum(ms).scaled(R::zero());
  for (const auto& [n, d] : st.amp) {
    FockOperator<R> w = FockOperator<R>::identity(ms);
    for (int m = 0; m < ms.modes(); ++m) {
      if (!((n >> m) & 1)) continue;
      FockOperator<R> rot = FockOperator<R>::zero(ms);
      int k = ms.k_of(m), r = ms.s_of(m);
      for (int s = 0; s < ms.spin_count; ++s) {
        R e = ring_from_cq<R>(ms.eps_at(r, s));
        if (!e.is_zero()) rot = rot + FockOperator<R>::ladder(ms, ms.mode(k, s), true).scaled(e);
      }
      w = w * rot;
    }
    out = out + w.apply(FockState<R>::vacuum(ms)).left_mul(d);
  }
  return out;
}

// Adjoint relations between the rendered families: under the plain dagger the
// left bra of one kind is the right ket of the pairing-partner kind, and
// under the fermionic adjoint it is the right ket of the same kind.
template <class R>
CheckList adjoint_relation_checks(Workspace& ws, const ModeSet& ms) {
  CheckList out;
  auto partner = [](BogoKind k) {
    switch (k) {
      case BogoKind::g: return BogoKind::g_bar;
      case BogoKind::g_bar: return BogoKind::g;
      case BogoKind::h: return BogoKind::h_bar;
      case BogoKind::h_bar: return BogoKind::h;
    }
    return k;
  };
  for (BogoKind k : {BogoKind::g, BogoKind::g_bar, BogoKind::h, BogoKind::h_bar}) {
    std::string nm = bogo_kind_name(k);
    auto f = ParameterFunction<R>::fresh(ws, ms, "fa_" + nm);
    FockBra<R> bra = render_left(ms, k, f);
    bool dag = bra.dual == render_right(ms, partner(k), f);
    out.push_back(make_check(std::string("<") + nm + "_L| = (|" + bogo_kind_name(partner(k)) +
                                 "_R>)+ ",
                             dag));
    bool fad = bra.dual == state_adjoint_flip(render_right(ms, k, f));
    out.push_back(make_check(std::string("<") + nm + "_L| = (|" + nm + "_R>)++ ", fad));
    FockState<R> ket = render_right(ms, k, f, false);
    bool invol = state_adjoint_flip(state_adjoint_flip(ket)) == ket;
    out.push_back(make_check(std::string("++ twice returns |") + nm + "_R>", invol));
  }
  return out;
}

// The pairing-rotation relations between the four families: i eps.f converts
// between the g-type and h-type states exactly, prefactors included.
template <class R>
CheckList spin_transform_checks(Workspace& ws, const ModeSet& ms, std::mt19937_64& rng) {
  CheckList out;
  R i = R::i();
  R mi = i * R::from_int(-1);
  auto q = ParameterFunction<R>::random(ws, ms, "stq", rng);
  auto p = ParameterFunction<R>::random(ws, ms, "stp", rng);
  auto ie = [&](const ParameterFunction<R>& x) { return eps_dot(x).scaled(i); };
  auto mie = [&](const ParameterFunction<R>& x) { return eps_dot(x).scaled(mi); };

  out.push_back(make_check("|g_R[i eps q]> = |h_bar_R[q]>",
                           render_right(ms, BogoKind::g, ie(q)) ==
                               render_right(ms, BogoKind::h_bar, q)));
  out.push_back(make_check("|h_bar_R[-i eps q]> = |g_R[q]>",
                           render_right(ms, BogoKind::h_bar, mie(q)) ==
                               render_right(ms, BogoKind::g, q)));
  out.push_back(make_check("|g_bar_R[i eps p]> = |h_R[p]>",
                           render_right(ms, BogoKind::g_bar, ie(p)) ==
                               render_right(ms, BogoKind::h, p)));
  out.push_back(make_check("|h_R[-i eps p]> = |g_bar_R[p]>",
                           render_right(ms, BogoKind::h, mie(p)) ==
                               render_right(ms, BogoKind::g_bar, p)));
  out.push_back(make_check("<g_L[-i q eps]| = <h_bar_L[q]|",
                           render_left(ms, BogoKind::g, ie(q)).dual ==
                               render_left(ms, BogoKind::h_bar, q).dual));
  out.push_back(make_check("<h_bar_L[i q eps]| = <g_L[q]|",
                           render_left(ms, BogoKind::h_bar, mie(q)).dual ==
                               render_left(ms, BogoKind::g, q).dual));
  out.push_back(make_check("<g_bar_L[-i p eps]| = <h_L[p]|",
                           render_left(ms, BogoKind::g_bar, ie(p)).dual ==
                               render_left(ms, BogoKind::h, p).dual));
  out.push_back(make_check("<h_L[i p eps]| = <g_bar_L[p]|",
                           render_left(ms, BogoKind::h, mie(p)).dual ==
                               render_left(ms, BogoKind::g_bar, p).dual));
  out.push_back(make_check("composing the two maps returns |g_R[q]>",
                           render_right(ms, BogoKind::g, ie(mie(q))) ==
                               render_right(ms, BogoKind::g, q)));
  return out;
}

namespace detail {

// u_r = a1 a_{k,r} + a2 sum_s eps_{rs} a+_{k,s}
template <class R>
FockOperator<R> mixed_lowering(const ModeSet& ms, int m, const R& a1, const R& a2) {
  int k = ms.k_of(m), r = ms.s_of(m);
  FockOperator<R> op = FockOperator<R>::ladder(ms, m, false).scaled(a1);
  for (int s = 0; s < ms.spin_count; ++s) {
    R e = ring_from_cq<R>(ms.eps_at(r, s));
    if (!e.is_zero()) op = op + FockOperator<R>::ladder(ms, ms.mode(k, s), true).scaled(a2 * e);
  }
  return op;
}

// v_r = b1 sum_s eps_{rs} a_{k,s} + b2 a+_{k,r}
template <class R>
FockOperator<R> mixed_raising(const ModeSet& ms, int m, const R& b1, const R& b2) {
  int k = ms.k_of(m), r = ms.s_of(m);
  FockOperator<R> op = FockOperator<R>::ladder(ms, m, true).scaled(b2);
  for (int s = 0; s < ms.spin_count; ++s) {
    R e = ring_from_cq<R>(ms.eps_at(r, s));
    if (!e.is_zero()) op = op + FockOperator<R>::ladder(ms, ms.mode(k, s), false).scaled(b1 * e);
  }
  return op;
}

}  // namespace detail

// The generic one-parameter eigen-solutions around exp(a+ <> A + c0 R+)|vac>
// and its bra mirror: u_r = a1 a + a2 eps a+ works exactly when a1 c0 = -a2
// (eigenvalue a1 A_r), v_r = b1 eps a + b2 a+ exactly when b1 c0 = -b2
// (eigenvalue b1 (eps.A)_r); on the left the conditions flip to c0 a2 = a1
// and c0 b2 = b1 with eigenvalues a2 (eps.C)_r and b2 C_r.
template <class R>
CheckList generic_solution_checks(Workspace& ws, const ModeSet& ms, std::mt19937_64& rng) {
  CheckList out;
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  auto rand_scalar = [&] {
    R k = R::zero();
    while (k.is_zero()) k = R::from_gaussian(rat(num(rng), den(rng)), rat(num(rng), den(rng)));
    return k;
  };
  for (int c0 : {+1, -1}) {
    std::string tag = c0 > 0 ? " (c0=+1)" : " (c0=-1)";
    R rc0 = R::from_int(c0);
    auto A = ParameterFunction<R>::random(ws, ms, std::string("gsA") + (c0 > 0 ? "p" : "m"), rng);
    FockState<R> psi = op_exp_apply(smeared_raising(ms, A) +
                                        BosonizedFamily<R>::pair_raising(ms).scaled(rc0),
                                    FockState<R>::vacuum(ms));
    R a1 = rand_scalar(), b1 = rand_scalar();
    bool uok = true, vok = true, ubad = false, vbad = false;
    for (int m = 0; m < ms.modes(); ++m) {
      auto u = detail::mixed_lowering(ms, m, a1, a1 * rc0 * R::from_int(-1));
      uok = uok && eigen_residual_right(u, psi, A.at(m).scaled(a1)).is_zero();
      auto ux = detail::mixed_lowering(ms, m, a1, a1 * rc0);
      ubad = ubad || !eigen_residual_right(ux, psi, A.at(m).scaled(a1)).is_zero();
      auto v = detail::mixed_raising(ms, m, b1, b1 * rc0 * R::from_int(-1));
      vok = vok && eigen_residual_right(v, psi, eps_dot(A).at(m).scaled(b1)).is_zero();
      auto vx = detail::mixed_raising(ms, m, b1, b1 * rc0);
      vbad = vbad || !eigen_residual_right(vx, psi, eps_dot(A).at(m).scaled(b1)).is_zero();
    }
    out.push_back(make_check("right: a1 c0 = -a2 gives eigenvalue a1 A_r" + tag, uok));
    out.push_back(make_check("right: a1 c0 = +a2 leaves a residual" + tag, ubad));
    out.push_back(make_check("right: b1 c0 = -b2 gives eigenvalue b1 (eps.A)_r" + tag, vok));
    out.push_back(make_check("right: b1 c0 = +b2 leaves a residual" + tag, vbad));

    auto C = ParameterFunction<R>::random(ws, ms, std::string("gsC") + (c0 > 0 ? "p" : "m"), rng);
    FockBra<R> bra{op_exp_apply(smeared_raising(ms, C.star()) +
                                    BosonizedFamily<R>::pair_raising(ms).scaled(rc0),
                                FockState<R>::vacuum(ms))};
    R a2 = rand_scalar(), b2 = rand_scalar();
    bool luok = true, lvok = true, lubad = false, lvbad = false;
    for (int m = 0; m < ms.modes(); ++m) {
      auto u = detail::mixed_lowering(ms, m, rc0 * a2, a2);
      luok = luok && eigen_residual_left(u, bra, eps_dot(C).at(m).scaled(a2)).is_zero();
      auto ux = detail::mixed_lowering(ms, m, rc0 * a2 * R::from_int(-1), a2);
      lubad = lubad || !eigen_residual_left(ux, bra, eps_dot(C).at(m).scaled(a2)).is_zero();
      auto v = detail::mixed_raising(ms, m, rc0 * b2, b2);
      lvok = lvok && eigen_residual_left(v, bra, C.at(m).scaled(b2)).is_zero();
      auto vx = detail::mixed_raising(ms, m, rc0 * b2 * R::from_int(-1), b2);
      lvbad = lvbad || !eigen_residual_left(vx, bra, C.at(m).scaled(b2)).is_zero();
    }
    out.push_back(make_check("left: c0 a2 = a1 gives eigenvalue a2 (eps.C)_r" + tag, luok));
    out.push_back(make_check("left: c0 a2 = -a1 leaves a residual" + tag, lubad));
    out.push_back(make_check("left: c0 b2 = b1 gives eigenvalue b2 C_r" + tag, lvok));
    out.push_back(make_check("left: c0 b2 = -b1 leaves a residual" + tag, lvbad));
  }
  return out;
}

// Majorana quadratures m = (a + a+)/sqrt2, n = -i(a - a+)/sqrt2: the
// single-mode eigen-pairs exist and are mutually unbiased, but no Gaussian
// rendering extends them to two modes -- the diagonal of the eigen-equation
// keeps an amplitude-independent mu0/sqrt2 term, the discrete image of the
// non-antisymmetrizable delta term in mu2.
template <class R>
CheckList majorana_checks(Workspace& ws) {
  static_assert(R::has_sqrt2, "majorana checks need sqrt2");
  CheckList out;
  R is2 = R::sqrt2().inv();
  R mi = R::i() * R::from_int(-1);
  using Op = FockOperator<R>;
  using St = FockState<R>;
  {
    static const ModeSet one = ModeSet::spinless(1);
    Op a = Op::ladder(one, 0, false), ad = Op::ladder(one, 0, true);
    Op m_op = (a + ad).scaled(is2);
    Op n_op = (a - ad).scaled(is2 * mi);
    Op idop = Op::identity(one);
    bool car = op_equal(anticommutator(m_op, m_op), idop) &&
               op_equal(anticommutator(n_op, n_op), idop) &&
               op_is_zero(anticommutator(m_op, n_op));
    out.push_back(make_check("{m,m} = {n,n} = 1 and {m,n} = 0", car));

    St vac = St::vacuum(one), onep = St::basis(one, 1);
    St mp = (vac + onep).scaled(is2), mm = (vac - onep).scaled(is2);
    // (vac + i|1>)/sqrt2 carries +1/sqrt2: n (vac + i|1>) = -i(a - a+)(vac + i|1>)/sqrt2
    // = -i(i vac - |1>)/sqrt2 = (vac + i|1>)/sqrt2.
    St np = (vac + onep.scaled(R::i())).scaled(is2);
    St nm = (vac - onep.scaled(R::i())).scaled(is2);
    bool eig = m_op.apply(mp) == mp.scaled(is2) &&
               m_op.apply(mm) == mm.scaled(is2 * R::from_int(-1)) &&
               n_op.apply(np) == np.scaled(is2) &&
               n_op.apply(nm) == nm.scaled(is2 * R::from_int(-1));
    out.push_back(make_check("m|m+-> = +-|m+->/sqrt2, n|n+-> = +-|n+->/sqrt2", eig));

    auto one_el = GrassmannElement<R>::one();
    bool ortho = inner(FockBra<R>::of(mp), mm).is_zero() &&
                 inner(FockBra<R>::of(np), nm).is_zero() &&
                 inner(FockBra<R>::of(mp), mp) == one_el &&
                 inner(FockBra<R>::of(np), np) == one_el;
    out.push_back(make_check("|m+->, |n+-> orthonormal pairs", ortho));

    GrassmannElement<R> half = one_el.scaled(R::from_rational(rat(1, 2)));
    bool mub = true;
    for (const St* x : {&mp, &mm})
      for (const St* y : {&np, &nm}) {
        GrassmannElement<R> v = inner(FockBra<R>::of(*x), *y);
        mub = mub && (v.conj() * v == half);
      }
    out.push_back(make_check("|<m|n>|^2 = 1/2 for all four pairs", mub));
  }
  {
    static const ModeSet two = ModeSet::spinless(2);
    auto lam = ParameterFunction<R>::fresh(ws, two, "maj_lam");
    Op m1 = (Op::ladder(two, 0, false) + Op::ladder(two, 0, true)).scaled(is2);
    Op m2 = (Op::ladder(two, 1, false) + Op::ladder(two, 1, true)).scaled(is2);
    GrassmannElement<R> mu0s2 = GrassmannElement<R>::one().scaled(is2);

    // Free ansatz: |vac> mu0 + sqrt2 sum_u |u> lambda_u + |12> x with x an
    // arbitrary even amplitude.  The off-diagonal one-particle components fix
    // x = 2 lambda_2 lambda_1 consistently across both quadratures, but the
    // diagonal components keep mu0/sqrt2 -- the delta term of the mu2
    // equation, which no antisymmetric amplitude can absorb.
    St base = St::vacuum(two) +
              St::basis(two, 0b01).right_mul(lam.at(0).scaled(R::sqrt2())) +
              St::basis(two, 0b10).right_mul(lam.at(1).scaled(R::sqrt2()));
    GrassmannElement<R> xsol = (lam.at(1) * lam.at(0)).scaled(R::from_int(2));
    {
      St psi = base + St::basis(two, 0b11).right_mul(xsol);
      St r1 = eigen_residual_right(m1, psi, lam.at(0));
      St r2 = eigen_residual_right(m2, psi, lam.at(1));
      out.push_back(make_check("vacuum sector fixes mu1 = sqrt2 mu0 lambda",
                               r1.amplitude_left(0).is_zero() && r2.amplitude_left(0).is_zero()));
      out.push_back(make_check(
          "x = 2 lambda_2 lambda_1 solves both off-diagonal one-particle components",
          r1.amplitude_right(0b10).is_zero() && r2.amplitude_right(0b01).is_zero()));
      bool diag = true;
      for (int extra : {0, 1, -2}) {
        St mod = psi + St::basis(two, 0b11).right_mul(
                           (lam.at(1) * lam.at(0)).scaled(R::from_int(extra)));
        diag = diag &&
               eigen_residual_right(m1, mod, lam.at(0)).amplitude_right(0b01) == mu0s2 &&
               eigen_residual_right(m2, mod, lam.at(1)).amplitude_right(0b10) == mu0s2;
      }
      out.push_back(make_check(
          "diagonal one-particle component stays mu0/sqrt2 for every pair amplitude", diag));
    }

    // Gaussian rendering exp(sqrt2 a+ <> lambda + c0 a+_1 a+_2)|vac>: for both
    // pair signs the two-particle determination is inconsistent -- the
    // diagonal keeps mu0/sqrt2 and the off-diagonal keeps c0/sqrt2.
    Op pair = Op::from_term(two, GrassmannElement<R>::one(), {{0, true}, {1, true}});
    bool vac_ok = true, mismatch = true;
    for (int c0 : {+1, -1}) {
      Op x = smeared_raising(two, lam.scaled(R::sqrt2())) + pair.scaled(R::from_int(c0));
      St psi = op_exp_apply(x, St::vacuum(two));
      St r1 = eigen_residual_right(m1, psi, lam.at(0));
      St r2 = eigen_residual_right(m2, psi, lam.at(1));
      vac_ok = vac_ok && r1.amplitude_left(0).is_zero() && r2.amplitude_left(0).is_zero();
      GrassmannElement<R> c0s2 = GrassmannElement<R>::one().scaled(is2 * R::from_int(c0));
      GrassmannElement<R> mc0s2 = GrassmannElement<R>::one().scaled(is2 * R::from_int(-c0));
      mismatch = mismatch && r1.amplitude_right(0b01) == mu0s2 &&
                 r2.amplitude_right(0b10) == mu0s2 && r1.amplitude_right(0b10) == c0s2 &&
                 r2.amplitude_right(0b01) == mc0s2 && !r1.amplitude_right(0b11).is_zero() &&
                 !r2.amplitude_right(0b11).is_zero();
    }
    out.push_back(
        make_check("c0 = +-1 rendering still solves the vacuum sector", vac_ok));
    out.push_back(make_check(
        "c0 = +-1 rendering keeps the nonzero two-particle mismatch (mu0/sqrt2 and c0/sqrt2)",
        mismatch));
  }
  return out;
}

}  // namespace fphase
