#pragma once

// Disentangling the paired exponentials into normal order, the closed-form
// h-functions with an independent ODE cross-check, the generic left/right
// overlap in closed form against the brute-force vacuum sandwich, the sixteen
// named eigenstate overlaps, and the regularized Grassmann delta machinery
// (ordered-product delta, projection kernel, orthogonality constants).

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fphase/bogoliubov.hpp"
#include "fphase/check.hpp"
#include "fphase/eigenstates.hpp"
#include "fphase/poly_rings.hpp"

namespace fphase {

// ---------------------------------------------------------------------------
// Closed-form solution of the disentangling system
//
//   exp(tA) exp(t c1 R) exp(t B+) exp(t c2 R+)
//     = exp(h0) exp(h1 B+) exp(h2 Ae+) exp(h3 R+) exp(h4 s)
//       exp(h5 Be) exp(h6 A) exp(h7 R)
//
// with h4 = -ln(1 + c1 c2 t^2).  The log never materializes: exp(h4 s) acts
// on number eigenstates as the exact power base^{n - Omega/2} with
// base = 1/denom, so only denom is stored.  h0 is kept as the three scalar
// coefficients of the contractions A*<>B, B eps<>B and A* eps<>A*.

template <class F>
struct HSystem {
  F h0_ab{}, h0_bb{}, h0_aa{};  // h0 = h0_ab A*<>B + h0_bb B eps<>B + h0_aa A* eps<>A*
  F h1{}, h2{}, h3{}, h5{}, h6{}, h7{};
  F denom{};                    // 1 + c1 c2 t^2, so exp(h4) = denom^{-1}
};

namespace detail {

template <class F>
F field_int(long long n) {
  if constexpr (requires { F::from_int(n); })
    return F::from_int(n);
  else
    return F(static_cast<double>(n));
}

template <class F>
F field_div(const F& a, const F& b) {
  if constexpr (requires(const F& x) { x.inv(); })
    return a * b.inv();
  else
    return a / b;
}

template <class F>
bool field_is_zero(const F& v) {
  if constexpr (requires(const F& x) { x.is_zero(); })
    return v.is_zero();
  else
    return v == F(0);
}

}  // namespace detail

template <class F>
HSystem<F> h_closed_form(int c1, int c2, const F& t) {
  if ((c1 != 1 && c1 != -1) || (c2 != 1 && c2 != -1))
    fail(ErrorKind::config, "pair signs must be +1 or -1");
  using detail::field_div;
  using detail::field_int;
  const F t2 = t * t, t3 = t2 * t;
  const F den = field_int<F>(1) + field_int<F>(c1 * c2) * t2;
  if (detail::field_is_zero(den))
    fail(ErrorKind::singularity, "1 + c1 c2 t^2 vanished in the disentangling solution");
  const F half = field_div(field_int<F>(1), field_int<F>(2));
  HSystem<F> h;
  h.denom = den;
  h.h1 = field_div(t, den);
  h.h2 = field_div(field_int<F>(c2) * t2, den);
  h.h3 = field_div(field_int<F>(c2) * t, den);
  h.h5 = field_div(field_int<F>(c1) * t2, den);
  h.h6 = h.h1;
  h.h7 = field_div(field_int<F>(c1) * t, den);
  h.h0_ab = field_div(t2, den);
  h.h0_bb = half * field_div(field_int<F>(c1) * t3, den);
  h.h0_aa = half * field_div(field_int<F>(c2) * t3, den);
  return h;
}

// ---------------------------------------------------------------------------
// Independent check that the closed forms solve the first-order system
//
//   d h0 = A*<>B (t + T h1)(1 - c1 h2) + B eps<>B (t c1 h1 + 1/2 c1 T h1^2)
//          + A* eps<>A* (1/2 t^2 c2 + T h2 - 1/2 c1 T h2^2)
//   d h1 = 1 - t c1 c2 h1 - t c1 h3 - c1 T h1 h3
//   d h2 = t c2 - t c1 c2 h2 + T h3 - c1 T h2 h3
//   d h3 = c2 - 2 t c1 c2 h3 - c1 T h3^2
//   d h4 = -t c1 c2 - c1 T h3
//   d h5 = t c1 e^{h4} + c1 T h1 e^{h4}
//   d h6 = T (1 - c1 h2) e^{h4}
//   d h7 = c1 T e^{2 h4}
//
// with T = 1 - c1 c2 t^2.  Derivatives of the closed forms come from a
// complex-step evaluation (exact to machine precision), and a classic RK4
// integration from the zero initial data provides a second, independent path
// to the t = 0.9 endpoint.

struct OdeReport {
  double max_residual = 0;       // closed forms substituted into the system
  double rk4_deviation = 0;      // integrated endpoint vs closed forms
  double mutation_residual = 0;  // same residual after shifting h1 by 0.01
};

namespace detail {

// State order: [h0_ab, h0_bb, h0_aa, h1, h2, h3, h4, h5, h6, h7].
inline std::array<double, 10> h_system_rhs(int c1, int c2, double t,
                                           const std::array<double, 10>& h) {
  const double T = 1.0 - c1 * c2 * t * t;
  const double h1 = h[3], h2 = h[4], h3 = h[5], h4 = h[6];
  const double e4 = std::exp(h4);
  std::array<double, 10> d{};
  d[0] = (t + T * h1) * (1.0 - c1 * h2);
  d[1] = t * c1 * h1 + 0.5 * c1 * T * h1 * h1;
  d[2] = 0.5 * t * t * c2 + T * h2 - 0.5 * c1 * T * h2 * h2;
  d[3] = 1.0 - t * c1 * c2 * h1 - t * c1 * h3 - c1 * T * h1 * h3;
  d[4] = t * c2 - t * c1 * c2 * h2 + T * h3 - c1 * T * h2 * h3;
  d[5] = c2 - 2.0 * t * c1 * c2 * h3 - c1 * T * h3 * h3;
  d[6] = -t * c1 * c2 - c1 * T * h3;
  d[7] = t * c1 * e4 + c1 * T * h1 * e4;
  d[8] = T * (1.0 - c1 * h2) * e4;
  d[9] = c1 * T * e4 * e4;
  return d;
}

inline std::array<double, 10> h_closed_vector(int c1, int c2, double t) {
  HSystem<double> h = h_closed_form<double>(c1, c2, t);
  return {h.h0_ab, h.h0_bb, h.h0_aa, h.h1, h.h2,
          h.h3,    -std::log(h.denom), h.h5, h.h6, h.h7};
}

inline std::array<double, 10> h_closed_derivative(int c1, int c2, double t) {
  using C = std::complex<double>;
  const double step = 1e-100;
  HSystem<C> h = h_closed_form<C>(c1, c2, C(t, step));
  const std::array<C, 10> v{h.h0_ab, h.h0_bb, h.h0_aa, h.h1, h.h2,
                            h.h3,    -std::log(h.denom), h.h5, h.h6, h.h7};
  std::array<double, 10> d{};
  for (int i = 0; i < 10; ++i) d[i] = v[i].imag() / step;
  return d;
}

}  // namespace detail

inline OdeReport h_ode_check(int c1, int c2) {
  OdeReport rep;
  for (int i = 0; i <= 90; ++i) {
    const double t = 0.01 * i;
    const auto h = detail::h_closed_vector(c1, c2, t);
    const auto dh = detail::h_closed_derivative(c1, c2, t);
    const auto rhs = detail::h_system_rhs(c1, c2, t, h);
    for (int j = 0; j < 10; ++j)
      rep.max_residual = std::max(rep.max_residual, std::abs(dh[j] - rhs[j]));
    auto hm = h;
    hm[3] += 0.01;
    const auto rhsm = detail::h_system_rhs(c1, c2, t, hm);
    rep.mutation_residual = std::max(rep.mutation_residual, std::abs(dh[3] - rhsm[3]));
  }
  std::array<double, 10> y{};
  const int steps = 900;
  const double dt = 0.9 / steps;
  auto axpy = [](std::array<double, 10> a, const std::array<double, 10>& b, double f) {
    for (int i = 0; i < 10; ++i) a[i] += f * b[i];
    return a;
  };
  for (int s = 0; s < steps; ++s) {
    const double t = s * dt;
    const auto k1 = detail::h_system_rhs(c1, c2, t, y);
    const auto k2 = detail::h_system_rhs(c1, c2, t + dt / 2, axpy(y, k1, dt / 2));
    const auto k3 = detail::h_system_rhs(c1, c2, t + dt / 2, axpy(y, k2, dt / 2));
    const auto k4 = detail::h_system_rhs(c1, c2, t + dt, axpy(y, k3, dt));
    for (int i = 0; i < 10; ++i)
      y[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  const auto exact = detail::h_closed_vector(c1, c2, 0.9);
  for (int i = 0; i < 10; ++i)
    rep.rk4_deviation = std::max(rep.rk4_deviation, std::abs(y[i] - exact[i]));
  return rep;
}

// ---------------------------------------------------------------------------
// Generic overlap of a lowering-type left chain with a raising-type right
// chain.  Astar is the analytic smearing of the lowering part (the stored
// left-side map), B the smearing of the raising part.

// <vac| exp(t (Astar<>a) + t c1 R) exp(t (a+<>B) + t c2 R+) |vac>, evaluated
// literally in the Fock module.
template <class R>
GrassmannElement<R> overlap_direct(const ModeSet& ms, int c1, int c2,
                                   const ParameterFunction<R>& Astar,
                                   const ParameterFunction<R>& B, const R& t) {
  const FockOperator<R> up =
      smeared_raising(ms, B) + BosonizedFamily<R>::pair_raising(ms).scaled(R::from_int(c2));
  const FockOperator<R> down =
      smeared_lowering(ms, Astar) + BosonizedFamily<R>::pair_lowering(ms).scaled(R::from_int(c1));
  FockState<R> st = op_exp_apply(up.scaled(t), FockState<R>::vacuum(ms));
  st = op_exp_apply(down.scaled(t), st);
  return st.amplitude_left(0);
}

// Closed form of the same sandwich:
//   (1 + c1 c2 t^2)^{+Omega/2} exp[(t^2 Astar<>B + 1/2 c1 t^3 B eps<>B
//                                   + 1/2 c2 t^3 Astar eps<>Astar)/(1+c1c2t^2)].
// The positive power comes from the vacuum value of the number-symmetric
// exponential, exp(K s)|n| -> base^{n - Omega/2}, which on the vacuum gives
// denom^{+Omega/2} for base = 1/denom.
template <class R>
GrassmannElement<R> overlap_analytic(const ModeSet& ms, int c1, int c2,
                                     const ParameterFunction<R>& Astar,
                                     const ParameterFunction<R>& B, const R& t) {
  const HSystem<R> h = h_closed_form<R>(c1, c2, t);
  const Rational half = ms.omega() / 2;
  if (denominator(half) != 1)
    fail(ErrorKind::config, "omega/2 must be an integer for the closed-form overlap");
  GrassmannElement<R> expo = contract(Astar, B).scaled(h.h0_ab) +
                             contract_eps(B, B).scaled(h.h0_bb) +
                             contract_eps(Astar, Astar).scaled(h.h0_aa);
  R power = R::one();
  for (long j = 0; j < (long)numerator(half); ++j) power = power * h.denom;
  return expo.exp_nilpotent().scaled(power);
}

// ---------------------------------------------------------------------------
// The disentangling identity as an operator statement: both sides applied to
// every basis state (plain and dressed with an odd spectator, so both parity
// sectors of the amplitude module are exercised).

template <class R>
CheckList disentangle_checks(Workspace& ws, const ModeSet& ms, std::mt19937_64& rng) {
  CheckList out;
  const ParameterFunction<R> Astar = ParameterFunction<R>::random(ws, ms, "na", rng);
  const ParameterFunction<R> B = ParameterFunction<R>::random(ws, ms, "nb", rng);
  const GrassmannElement<R> theta =
      GrassmannElement<R>::generator(ws, ws.fresh_set("nth", 1, GenClass::fock_param)[0]);

  const FockOperator<R> a_low = smeared_lowering(ms, Astar);                        // Astar<>a
  const FockOperator<R> ae_dag = BosonizedFamily<R>::build(ms, Astar.star()).ae_dag;  // a+ eps<>Astar
  const BosonizedFamily<R> fb = BosonizedFamily<R>::build(ms, B);
  const FockOperator<R> b_dag = fb.a_dag;   // a+<>B
  const FockOperator<R> be_low = fb.ae_op;  // B eps<>a
  const FockOperator<R> r_low = BosonizedFamily<R>::pair_lowering(ms);
  const FockOperator<R> r_dag = BosonizedFamily<R>::pair_raising(ms);

  for (int c1 : {+1, -1})
    for (int c2 : {+1, -1})
      for (const Rational& tr : {rat(1, 3), rat(1, 2)}) {
        const R t = R::from_rational(tr);
        const HSystem<R> h = h_closed_form<R>(c1, c2, t);
        const GrassmannElement<R> eh0 = (contract(Astar, B).scaled(h.h0_ab) +
                                         contract_eps(B, B).scaled(h.h0_bb) +
                                         contract_eps(Astar, Astar).scaled(h.h0_aa))
                                            .exp_nilpotent();
        bool ok = true;
        std::string residual;
        for (Occ n = 0; n < (Occ(1) << ms.modes()) && ok; ++n)
          for (int dress = 0; dress < 2 && ok; ++dress) {
            FockState<R> psi = FockState<R>::basis(ms, n);
            if (dress) psi = psi.left_mul(theta);
            FockState<R> lhs = op_exp_apply(r_dag.scaled(t * R::from_int(c2)), psi);
            lhs = op_exp_apply(b_dag.scaled(t), lhs);
            lhs = op_exp_apply(r_low.scaled(t * R::from_int(c1)), lhs);
            lhs = op_exp_apply(a_low.scaled(t), lhs);
            FockState<R> rhs = op_exp_apply(r_low.scaled(h.h7), psi);
            rhs = op_exp_apply(a_low.scaled(h.h6), rhs);
            rhs = op_exp_apply(be_low.scaled(h.h5), rhs);
            rhs = scale_by_number(rhs, h.denom.inv(), ms.omega());  // exp(h4 s)
            rhs = op_exp_apply(r_dag.scaled(h.h3), rhs);
            rhs = op_exp_apply(ae_dag.scaled(h.h2), rhs);
            rhs = op_exp_apply(b_dag.scaled(h.h1), rhs);
            rhs = rhs.left_mul(eh0);
            if (!(lhs - rhs).is_zero()) {
              ok = false;
              residual = "basis state " + std::to_string(n) + (dress ? " (dressed)" : "");
            }
          }
        out.push_back(make_check(
            "exp(tA)exp(tc1R)exp(tB+)exp(tc2R+) == "
            "exp(h0)exp(h1B+)exp(h2Ae+)exp(h3R+)exp(h4s)exp(h5Be)exp(h6A)exp(h7R) (c1=" +
                std::to_string(c1) + ", c2=" + std::to_string(c2) + ", t=" + rat_text(tr) + ")",
            ok, residual));
      }
  return out;
}

// ---------------------------------------------------------------------------
// The eight exponential overlaps between different eigenstate families
// (prefactors included), each a unitary functional of real parameters.

template <class R>
CheckList mub_overlap_checks(Workspace& ws, const ModeSet& ms) {
  struct Entry {
    BogoKind l, r;
    bool eps_weighted;  // exponent uses the eps-weighted contraction
    int isign;          // coefficient +-i on the eps-weighted exponent
  };
  static constexpr Entry kTable[8] = {
      {BogoKind::g, BogoKind::g_bar, false, 0},
      {BogoKind::g_bar, BogoKind::g, false, 0},
      {BogoKind::h, BogoKind::h_bar, false, 0},
      {BogoKind::h_bar, BogoKind::h, false, 0},
      {BogoKind::h, BogoKind::g, true, -1},
      {BogoKind::h_bar, BogoKind::g_bar, true, -1},
      {BogoKind::g, BogoKind::h, true, +1},
      {BogoKind::g_bar, BogoKind::h_bar, true, +1},
  };
  CheckList out;
  for (const Entry& e : kTable) {
    const std::string ln = bogo_kind_name(e.l), rn = bogo_kind_name(e.r);
    const auto fL = ParameterFunction<R>::fresh(ws, ms, "uL" + ln);
    const auto fR = ParameterFunction<R>::fresh(ws, ms, "uR" + rn);
    const GrassmannElement<R> val = inner(render_left(ms, e.l, fL), render_right(ms, e.r, fR));
    const GrassmannElement<R> expo =
        e.eps_weighted ? contract_eps(fL, fR).scaled(e.isign > 0 ? R::i() : -R::i())
                       : contract(fL, fR);
    const GrassmannElement<R> want = expo.exp_nilpotent();
    const std::string label = "<" + ln + "_L[fL]|" + rn + "_R[fR]>";
    const std::string formula =
        e.eps_weighted ? (e.isign > 0 ? " == exp(+i fL eps<> fR)" : " == exp(-i fL eps<> fR)")
                       : " == exp(fL <> fR)";
    out.push_back(make_check(label + formula, val == want, (val - want).text()));
    const GrassmannElement<R> uni = val.conj() * val;
    out.push_back(make_check(label + ": conj(O) O == 1 for real parameters",
                             uni == GrassmannElement<R>::one(), uni.text()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ordered-product delta, divergent orthogonality constant, and the
// regularized projection kernel.

// delta[f] = f_1 f_2 ... f_M, components multiplied in ascending mode order;
// it vanishes whenever any component vanishes.
template <class R>
GrassmannElement<R> grassmann_delta(const ParameterFunction<R>& f) {
  GrassmannElement<R> out = GrassmannElement<R>::one();
  for (int m = 0; m < f.modes->modes(); ++m) out = out * f.at(m);
  return out;
}

// The divergent orthogonality constant e^{-Omega}; the finite phase that
// accompanies it is measured by delta_overlap_checks.
inline EpsRing lambda_constant(const Rational& omega) {
  if (denominator(omega) != 1) fail(ErrorKind::config, "omega must be integral");
  EpsRing out = EpsRing::one();
  const EpsRing ie = EpsRing::eps().inv();
  for (long j = 0; j < (long)numerator(omega); ++j) out = out * ie;
  return out;
}

// Projection kernel p[f] = e^{-Omega/2} exp((1/(2e)) f eps<> f), expanded in
// the finite algebra.
inline GrassmannElement<EpsRing> regularized_delta(const ModeSet& ms,
                                                   const ParameterFunction<EpsRing>& f) {
  const Rational half = ms.omega() / 2;
  if (denominator(half) != 1)
    fail(ErrorKind::config, "omega/2 must be an integer for the projection kernel");
  const EpsRing e = EpsRing::eps();
  GrassmannElement<EpsRing> ex = contract_eps(f, f).scaled((e + e).inv());
  EpsRing pre = EpsRing::one();
  const EpsRing ie = e.inv();
  for (long j = 0; j < (long)numerator(half); ++j) pre = pre * ie;
  return ex.exp_nilpotent().scaled(pre);
}

namespace detail {

inline int min_laurent_order(const GrassmannElement<EpsRing>& g) {
  if (g.is_zero()) fail(ErrorKind::internal, "laurent order of the zero element");
  int mo = INT_MAX;
  for (const auto& t : g.terms) mo = std::min(mo, t.coeff.order());
  return mo;
}

inline GrassmannElement<EpsRing> laurent_part(const GrassmannElement<EpsRing>& g, int k) {
  GrassmannElement<EpsRing> out;
  out.ws = g.ws;
  for (const auto& t : g.terms) {
    const CQS2 c = t.coeff.laurent_coeff(k);
    if (!c.is_zero()) out.terms.push_back({t.mono, EpsRing::constant(c)});
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The eight projection-type overlaps: same-family pairs and the four
// cross-family pairs with opposite pair signs, regulated at t = 1 - e.

enum class DeltaArg { difference, plus_i_eps, minus_i_eps };

inline ParameterFunction<EpsRing> delta_argument(DeltaArg a, const ParameterFunction<EpsRing>& fL,
                                                 const ParameterFunction<EpsRing>& fR) {
  switch (a) {
    case DeltaArg::difference:
      return fL + fR.scaled(-EpsRing::one());
    case DeltaArg::plus_i_eps:
      return fL + eps_dot(fR).scaled(EpsRing::i());
    case DeltaArg::minus_i_eps:
      return fL + eps_dot(fR).scaled(-EpsRing::i());
  }
  fail(ErrorKind::internal, "unknown delta argument form");
}

inline CheckList delta_overlap_checks(Workspace& ws, const ModeSet& ms) {
  using R = EpsRing;
  struct Entry {
    BogoKind l, r;
    DeltaArg arg;
    const char* argtext;
  };
  static const Entry kTable[8] = {
      {BogoKind::g, BogoKind::g, DeltaArg::difference, "fL - fR"},
      {BogoKind::g_bar, BogoKind::g_bar, DeltaArg::difference, "fL - fR"},
      {BogoKind::h, BogoKind::h, DeltaArg::difference, "fL - fR"},
      {BogoKind::h_bar, BogoKind::h_bar, DeltaArg::difference, "fL - fR"},
      {BogoKind::h_bar, BogoKind::g, DeltaArg::plus_i_eps, "fL + i eps.fR"},
      {BogoKind::g_bar, BogoKind::h, DeltaArg::minus_i_eps, "fL - i eps.fR"},
      {BogoKind::g, BogoKind::h_bar, DeltaArg::minus_i_eps, "fL - i eps.fR"},
      {BogoKind::h, BogoKind::g_bar, DeltaArg::plus_i_eps, "fL + i eps.fR"},
  };
  CheckList out;
  std::vector<EpsRing> lambdas;
  const R t = R::one() - R::eps();
  for (const Entry& e : kTable) {
    const std::string label =
        "<" + std::string(bogo_kind_name(e.l)) + "_L|" + bogo_kind_name(e.r) + "_R> at t = 1-e";
    const auto fL = ParameterFunction<R>::fresh(ws, ms, "eL");
    const auto fR = ParameterFunction<R>::fresh(ws, ms, "eR");
    const SpectralMap<R> sml = left_spectral(e.l, fL);
    const SpectralMap<R> smr = right_spectral(e.r, fR);
    const GrassmannElement<R> raw =
        overlap_direct(ms, sml.c0, smr.c0, sml.coeff, smr.coeff, t);
    const GrassmannElement<R> ana =
        overlap_analytic(ms, sml.c0, smr.c0, sml.coeff, smr.coeff, t);
    out.push_back(make_check(label + ": vacuum sandwich == closed form at every order in e",
                             raw == ana, (raw - ana).text()));
    const GrassmannElement<R> value =
        (eigen_prefactor<R>(ms, fL) * eigen_prefactor<R>(ms, fR)) * raw;
    out.push_back(make_check(label + ": regular at e = 0 (prefactors cancel all poles)",
                             detail::min_laurent_order(value) >= 0, value.text()));
    const GrassmannElement<R> part0 = detail::laurent_part(value, 0);
    const GrassmannElement<R> del = grassmann_delta(delta_argument(e.arg, fL, fR));
    if (del.is_zero() || part0.is_zero())
      fail(ErrorKind::internal, "degenerate projection overlap");
    const EpsRing lam =
        part0.coefficient(del.terms.front().mono) * del.terms.front().coeff.inv();
    out.push_back(make_check(label + ": e^0 part == Lambda_fin * delta[" + e.argtext + "]",
                             part0 == del.scaled(lam), (part0 - del.scaled(lam)).text()));
    lambdas.push_back(lam);
  }
  bool shared = true;
  for (const auto& l : lambdas) shared = shared && (l == lambdas.front());
  out.push_back(make_check("one finite constant Lambda_fin multiplies all eight projections",
                           shared, lambdas.front().text()));
  // Independent combinatorial value: the top term of exp(x eps<> x) is
  // prod_k (-2i w_k) times the ordered monomial, and the prefactor scalars
  // contribute 2^{-Omega/2}, so Lambda_fin = (-i)^{Omega/2} prod_k w_k.
  const Rational half = ms.omega() / 2;
  CQS2 expect = CQS2::one();
  for (long j = 0; j < (long)numerator(half); ++j) expect = expect * (-CQS2::i());
  for (int k = 0; k < ms.k_count; ++k) expect = expect * CQS2::from_rational(ms.weight_k(k));
  out.push_back(make_check("Lambda_fin == (-i)^(Omega/2) prod(w_k)",
                           lambdas.front() == EpsRing::constant(expect),
                           lambdas.front().text()));
  // Projection kernel structure: most divergent order e^{-Omega} (the
  // divergent orthogonality constant), leading coefficient Lambda_fin delta[f].
  const auto f = ParameterFunction<R>::fresh(ws, ms, "ek");
  const GrassmannElement<R> p = regularized_delta(ms, f);
  const long om = (long)numerator(ms.omega());
  const EpsRing lam0 = lambda_constant(ms.omega());
  out.push_back(make_check("projection kernel: most divergent order == order of e^(-Omega)",
                           detail::min_laurent_order(p) == lam0.order(),
                           std::to_string(detail::min_laurent_order(p))));
  out.push_back(make_check(
      "projection kernel: e^(-Omega) coefficient == Lambda_fin * delta[f]",
      detail::laurent_part(p, -(int)om) == grassmann_delta(f).scaled(lambdas.front()),
      (detail::laurent_part(p, -(int)om) - grassmann_delta(f).scaled(lambdas.front())).text()));
  return out;
}

// Exact dictionary between the t-side regulator and the kernel regulator for
// the plain self-overlap: with e_d = e(2-e)/(2(1-e)^2) and
// r = e(3-2e)/(2(2-e)),
//   <g_L[fL]|g_R[fR]> at t = 1-e
//     == e_d^Omega (1-e)^Omega p[fL-fR](e_d) exp(r (fL eps<>fL + fR eps<>fR)).
inline CheckResult regulator_dictionary_check(Workspace& ws, const ModeSet& ms) {
  using R = EpsRing;
  const auto fL = ParameterFunction<R>::fresh(ws, ms, "dL");
  const auto fR = ParameterFunction<R>::fresh(ws, ms, "dR");
  const SpectralMap<R> sml = left_spectral(BogoKind::g, fL);
  const SpectralMap<R> smr = right_spectral(BogoKind::g, fR);
  const R t = R::one() - R::eps();
  const GrassmannElement<R> value =
      (eigen_prefactor<R>(ms, fL) * eigen_prefactor<R>(ms, fR)) *
      overlap_direct(ms, sml.c0, smr.c0, sml.coeff, smr.coeff, t);
  const R e = R::eps(), one = R::one(), two = R::from_int(2);
  const R ed = e * (two - e) * (two * (one - e) * (one - e)).inv();
  const R r = e * (R::from_int(3) - two * e) * (two * (two - e)).inv();
  const auto arg = delta_argument(DeltaArg::difference, fL, fR);
  const Rational half = ms.omega() / 2;
  GrassmannElement<R> kernel = contract_eps(arg, arg).scaled((ed + ed).inv()).exp_nilpotent();
  R pre = R::one();
  for (long j = 0; j < (long)numerator(half); ++j) pre = pre * ed.inv();
  kernel = kernel.scaled(pre);
  const GrassmannElement<R> corr =
      (contract_eps(fL, fL) + contract_eps(fR, fR)).scaled(r).exp_nilpotent();
  R scale = R::one();
  for (long j = 0; j < (long)numerator(ms.omega()); ++j) scale = scale * ed * (one - e);
  const GrassmannElement<R> rhs = (kernel * corr).scaled(scale);
  return make_check(
      "<g_L|g_R>(t=1-e) == e_d^Omega (1-e)^Omega p[fL-fR](e_d) exp(r(fL eps<>fL + fR eps<>fR)), "
      "e_d = e(2-e)/(2(1-e)^2), r = e(3-2e)/(2(2-e))",
      value == rhs, (value - rhs).text());
}

// All sixteen named overlaps plus the kernel structure checks.
inline CheckList named_overlap_checks(Workspace& ws, const ModeSet& ms) {
  CheckList out = mub_overlap_checks<CQS2>(ws, ms);
  CheckList delta = delta_overlap_checks(ws, ms);
  out.insert(out.end(), delta.begin(), delta.end());
  out.push_back(regulator_dictionary_check(ws, ms));
  return out;
}

// ---------------------------------------------------------------------------
// Measure-level facts about the ordered-product delta: the sift identity, the
// paired-exponential integral, and the self-pairing Gaussian integral.

template <class R>
std::vector<GenId> param_generator_ids(const ParameterFunction<R>& f) {
  std::vector<GenId> ids;
  for (const auto& c : f.comp) {
    if (c.term_count() != 1 || popcount128(c.terms[0].mono) != 1)
      fail(ErrorKind::config, "parameter component is not a single generator");
    ids.push_back(lowest_bit128(c.terms[0].mono));
  }
  return ids;
}

template <class R>
CheckList delta_measure_checks(Workspace& ws, const ModeSet& ms, std::mt19937_64& rng) {
  CheckList out;
  const long om = (long)numerator(ms.omega());

  // Sift: Integral W[f] delta[f-f'] D[f] == s W[f'], with the measure sign
  // s = (-1)^{Omega(Omega-1)/2} coming from the ordered measure D[f].
  const auto f = ParameterFunction<R>::fresh(ws, ms, "sf");
  const auto fp = ParameterFunction<R>::fresh(ws, ms, "sg");
  const std::vector<GenId> ids = param_generator_ids(f);
  std::vector<GenId> pool = ids;
  for (GenId sp : ws.fresh_set("sw", 2, GenClass::fock_param)) pool.push_back(sp);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), pick(0, 1);
  GrassmannElement<R> W = GrassmannElement<R>::one();
  for (int term = 0; term < 8; ++term) {
    GrassmannElement<R> mono =
        GrassmannElement<R>::scalar(R::from_gaussian(rat(num(rng), den(rng)), rat(num(rng), den(rng))));
    for (GenId id : pool)
      if (pick(rng)) mono = mono * GrassmannElement<R>::generator(ws, id);
    W = W + mono;
  }
  W = W + GrassmannElement<R>::generator(ws, pool[0]);  // force mixed parity
  std::map<GenId, GrassmannElement<R>> to_prime;
  for (int m = 0; m < ms.modes(); ++m) to_prime[ids[m]] = fp.at(m);
  const GrassmannElement<R> Wp = W.substitute(to_prime);
  const GrassmannElement<R> del = grassmann_delta(f + fp.scaled(-R::one()));
  const GrassmannElement<R> unit = del.berezin(ids);
  R s = R::one();
  if (((om * (om - 1) / 2) % 2) != 0) s = -s;
  out.push_back(make_check("Integral delta[f-f'] D[f] == (-1)^(Omega(Omega-1)/2)",
                           unit == GrassmannElement<R>::scalar(s), unit.text()));
  const GrassmannElement<R> sift = (W * del).berezin(ids);
  out.push_back(make_check("Integral W[f] delta[f-f'] D[f] == s W[f'] (sift, mixed-parity W)",
                           sift == Wp.scaled(s), (sift - Wp.scaled(s)).text()));

  // Paired exponential: Integral exp(q<>p) D[q] == prod_m(w_m) p_1...p_M; the
  // interleaving sign of the top term and the measure sign cancel exactly.
  const auto q = ParameterFunction<R>::fresh(ws, ms, "sq");
  const auto p = ParameterFunction<R>::fresh(ws, ms, "sp");
  const GrassmannElement<R> paired = contract(q, p).exp_nilpotent().berezin(param_generator_ids(q));
  R prodw = R::one();
  for (int m = 0; m < ms.modes(); ++m) prodw = prodw * R::from_rational(ms.weight(m));
  out.push_back(make_check("Integral exp(q<>p) D[q] == prod(w_m) p_1...p_M",
                           paired == grassmann_delta(p).scaled(prodw),
                           (paired - grassmann_delta(p).scaled(prodw)).text()));

  // Self-pairing Gaussian: Integral exp(x eps<> x) D[x]
  //   == (-1)^{Omega(Omega-1)/2} prod_k (-2i w_k); the modulus-2^{Omega/2}
  //   part feeds the orthogonality constant, the (-i)^{Omega/2} part is the
  //   global phase that the projection convention absorbs.
  const auto x = ParameterFunction<R>::fresh(ws, ms, "sx");
  const GrassmannElement<R> gauss = contract_eps(x, x).exp_nilpotent().berezin(param_generator_ids(x));
  R gexp = s;
  for (int k = 0; k < ms.k_count; ++k)
    gexp = gexp * (-(R::i() + R::i())) * R::from_rational(ms.weight_k(k));
  out.push_back(make_check(
      "Integral exp(x eps<> x) D[x] == (-1)^(Omega(Omega-1)/2) (-2i)^(Omega/2) prod(w_k)",
      gauss == GrassmannElement<R>::scalar(gexp), gauss.text()));

  // Zero argument: the delta of the zero function is the zero element.
  out.push_back(make_check("delta[0] == 0", grassmann_delta(f.scaled(R::zero())).is_zero(),
                           ""));
  return out;
}

}  // namespace fphase
