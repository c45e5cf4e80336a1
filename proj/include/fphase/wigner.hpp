#pragma once

#include <algorithm>
#include <initializer_list>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fphase/overlaps.hpp"

namespace fphase {

// ---------------------------------------------------------------------------
// Phase-space layer: quadrature bases, oriented functional integration with a
// finite orthogonality constant, Wigner and Weyl transforms, functional
// Fourier analysis, and star products.  Everything is exact in the scalar
// ring R; no limits are taken.
// ---------------------------------------------------------------------------

// Oriented functional measure D[f]: Berezin integration over the components
// of f with the FIRST component innermost, so the ascending ordered product
// f_0 f_1 ... f_{M-1} integrates to +1.  With this orientation delta sifting
// carries no sign at even mode count, and a plain ascending Berezin list
// differs by (-1)^{M(M-1)/2}.
template <class R>
GrassmannElement<R> functional_integral(const GrassmannElement<R>& val,
                                        const ParameterFunction<R>& f) {
  std::vector<GenId> ids = param_generator_ids(f);
  std::reverse(ids.begin(), ids.end());
  return val.berezin(ids);
}

// Nested measure D[a, b, ..., z]: the rightmost set is integrated first, like
// the innermost integral of a nested chain.
template <class R>
GrassmannElement<R> functional_integral(
    const GrassmannElement<R>& val,
    std::initializer_list<const ParameterFunction<R>*> sets) {
  GrassmannElement<R> acc = val;
  std::vector<const ParameterFunction<R>*> list(sets);
  for (auto it = list.rbegin(); it != list.rend(); ++it) acc = functional_integral(acc, **it);
  return acc;
}

// Component-wise functional integration of a state's amplitudes.
template <class R>
FockState<R> functional_integral_state(const FockState<R>& st, const ParameterFunction<R>& f) {
  std::vector<GenId> ids = param_generator_ids(f);
  std::reverse(ids.begin(), ids.end());
  FockState<R> out = st;
  for (auto it = out.amp.begin(); it != out.amp.end();) {
    it->second = it->second.berezin(ids);
    if (it->second.is_zero())
      it = out.amp.erase(it);
    else
      ++it;
  }
  return out;
}

namespace detail {

template <class R>
R scalar_only(const GrassmannElement<R>& g, const char* what) {
  R out = R::zero();
  for (const auto& t : g.terms) {
    if (t.mono == Mono(0))
      out = t.coeff;
    else
      fail(ErrorKind::internal, std::string(what) + ": value is not a pure scalar");
  }
  return out;
}

template <class R>
R ring_pow(R base, long e) {
  R acc = R::one();
  if (e < 0) {
    base = base.inv();
    e = -e;
  }
  for (long j = 0; j < e; ++j) acc = acc * base;
  return acc;
}

inline long integral_omega(const ModeSet& ms) {
  Rational om = ms.omega();
  if (denominator(om) != 1) fail(ErrorKind::config, "total mode weight must be an integer");
  return (long)numerator(om);
}

// difference of parameter functions
template <class R>
ParameterFunction<R> param_sub(const ParameterFunction<R>& a, const ParameterFunction<R>& b) {
  return a + b.scaled(R::from_int(-1));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Quadrature bases.  The position family is the g-type rendered eigenstate
// pair, the momentum family the g_bar-type pair.
// ---------------------------------------------------------------------------

enum class QuadratureKind { position_ket, position_bra, momentum_ket, momentum_bra };

template <class R>
struct QuadratureBasisState {
  QuadratureKind kind;
  ParameterFunction<R> parameter;
  FockState<R> ket;  // populated for the ket kinds
  FockBra<R> bra;    // populated for the bra kinds

  static QuadratureBasisState position_ket(const ModeSet& ms, const ParameterFunction<R>& f) {
    return {QuadratureKind::position_ket, f, render_right(ms, BogoKind::g, f), {}};
  }
  static QuadratureBasisState position_bra(const ModeSet& ms, const ParameterFunction<R>& f) {
    return {QuadratureKind::position_bra, f, {}, render_left(ms, BogoKind::g, f)};
  }
  static QuadratureBasisState momentum_ket(const ModeSet& ms, const ParameterFunction<R>& f) {
    return {QuadratureKind::momentum_ket, f, render_right(ms, BogoKind::g_bar, f), {}};
  }
  static QuadratureBasisState momentum_bra(const ModeSet& ms, const ParameterFunction<R>& f) {
    return {QuadratureKind::momentum_bra, f, {}, render_left(ms, BogoKind::g_bar, f)};
  }
};

// The quadrature operator pair: position = the self-fermionic-adjoint
// Bogoliubov operator, momentum = its Hermitian adjoint.
template <class R>
struct QuadraturePair {
  std::vector<FockOperator<R>> q_op, p_op;

  static QuadraturePair build(const ModeSet& ms) {
    BogoliubovSet<R> bog = BogoliubovSet<R>::build(ms);
    return {bog.g, bog.g_dag};
  }
};

// The finite orthogonality constant in closed form: (-i)^{Omega/2}.  The
// whole quadrature layer requires unit k-point weights: at any other weight
// the eigenstate overlap is a Gaussian of nontrivial width rather than a
// delta functional, and the completeness integral is not proportional to the
// identity.  The measured value (below) must agree with this formula.
template <class R>
R orthogonality_constant_formula(const ModeSet& ms) {
  for (int k = 0; k < ms.k_count; ++k)
    if (!(ms.weight_k(k) == Rational(1)))
      fail(ErrorKind::config, "quadrature bases need unit k-point weights");
  long om = detail::integral_omega(ms);
  if (om % 2) fail(ErrorKind::config, "orthogonality constant needs an even weight total");
  R mi = R::from_int(-1) * R::i();
  return detail::ring_pow(mi, om / 2);
}

// One matrix entry <a| (integral |f><f| D[f]) |b> of the completeness
// integral over the family of the given kind (g: position, g_bar: momentum),
// with the pair (|f>, <f|) rendered by the caller.
template <class R>
GrassmannElement<R> completeness_entry(const ModeSet& ms, const FockState<R>& ket,
                                       const FockBra<R>& bra, const ParameterFunction<R>& f,
                                       Occ a, Occ b) {
  GrassmannElement<R> ka = inner(FockBra<R>::of(FockState<R>::basis(ms, a)), ket);
  GrassmannElement<R> bb = inner(bra, FockState<R>::basis(ms, b));
  return functional_integral(ka * bb, f);
}

// Measure the orthogonality constant from the completeness integral: the
// integral must be a scalar multiple of the identity, and that scalar is the
// constant.  Fails if the integral is not proportional to the identity
// (which happens for non-unit mode weights).
template <class R>
R measure_orthogonality_constant(const ModeSet& ms, BogoKind kind = BogoKind::g) {
  Workspace ws;
  int M = ms.modes();
  auto f = ParameterFunction<R>::fresh(ws, ms, "cf");
  FockState<R> ket = render_right(ms, kind, f);
  FockBra<R> bra = render_left(ms, kind, f);
  R c = R::zero();
  bool have = false;
  for (Occ a = 0; a < (Occ(1) << M); ++a) {
    for (Occ b = 0; b < (Occ(1) << M); ++b) {
      GrassmannElement<R> e = completeness_entry<R>(ms, ket, bra, f, a, b);
      if (a == b) {
        R v = detail::scalar_only(e, "completeness entry");
        if (!have) {
          c = v;
          have = true;
        } else if (!(v == c)) {
          fail(ErrorKind::config,
               "completeness integral is not proportional to the identity "
               "(quadrature bases need unit mode weights)");
        }
      } else if (!e.is_zero()) {
        fail(ErrorKind::config, "completeness integral has an off-diagonal entry");
      }
    }
  }
  if (c.is_zero()) fail(ErrorKind::internal, "vanishing orthogonality constant");
  return c;
}

// ---------------------------------------------------------------------------
// Phase-space functionals.
// ---------------------------------------------------------------------------

// The canonical phase-space variable pair; every functional produced by the
// transforms below depends on these generators only.
template <class R>
struct PhaseSpace {
  const ModeSet* modes = nullptr;
  ParameterFunction<R> q, p;

  static PhaseSpace allocate(Workspace& ws, const ModeSet& ms) {
    return {&ms, ParameterFunction<R>::fresh(ws, ms, "q"), ParameterFunction<R>::fresh(ws, ms, "p")};
  }
};

template <class R>
struct PhaseSpaceFunctional {
  GrassmannElement<R> value;
  std::vector<GenId> q_vars, p_vars;

  bool is_even() const {
    auto [ev, od] = value.parity_split();
    return od.is_zero();
  }
};

template <class R>
PhaseSpaceFunctional<R> make_functional(const PhaseSpace<R>& ps, const GrassmannElement<R>& v) {
  return {v, param_generator_ids(ps.q), param_generator_ids(ps.p)};
}

template <class R>
PhaseSpaceFunctional<R> constant_functional(const PhaseSpace<R>& ps, const R& c) {
  return make_functional(ps, GrassmannElement<R>::scalar(c));
}

namespace detail {

// Substitution map sending the functional's canonical variables to arbitrary
// odd elements (fresh integration copies or shifted combinations).
template <class R>
std::map<GenId, GrassmannElement<R>> functional_images(
    const PhaseSpaceFunctional<R>& w, const std::vector<GrassmannElement<R>>& q_to,
    const std::vector<GrassmannElement<R>>& p_to) {
  std::map<GenId, GrassmannElement<R>> sub;
  for (size_t m = 0; m < w.q_vars.size(); ++m) sub[w.q_vars[m]] = q_to[m];
  for (size_t m = 0; m < w.p_vars.size(); ++m) sub[w.p_vars[m]] = p_to[m];
  return sub;
}

template <class R>
std::vector<GrassmannElement<R>> param_images(const ParameterFunction<R>& f) {
  std::vector<GrassmannElement<R>> v;
  for (int m = 0; m < (int)f.comp.size(); ++m) v.push_back(f.at(m));
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Wigner transform and its inverse.
// ---------------------------------------------------------------------------

// W[q,p] = Lam^{-1} * integral <q + x/2| op |q - x/2> exp(p <> x) D[x],
// with the exponential factor on the right of the matrix element (swapping
// the two negates every term odd in p).
template <class R>
PhaseSpaceFunctional<R> wigner_transform(Workspace& ws, const PhaseSpace<R>& ps,
                                         const FockOperator<R>& op, const R& lambda) {
  const ModeSet& ms = *ps.modes;
  auto x = ParameterFunction<R>::fresh(ws, ms, "x");
  R half = R::from_rational(rat(1, 2));
  FockBra<R> bra = render_left(ms, BogoKind::g, ps.q + x.scaled(half));
  FockState<R> ket = render_right(ms, BogoKind::g, ps.q + x.scaled(R::from_int(-1) * half));
  GrassmannElement<R> me = inner(bra, op.apply(ket));
  GrassmannElement<R> kern = contract(ps.p, x).exp_nilpotent();
  GrassmannElement<R> val = functional_integral(me * kern, x).scaled(lambda.inv());
  return make_functional(ps, val);
}

// Matrix unit |a><b| as a Fock operator, normalized at run time so that it
// maps |b> to exactly |a> and annihilates every other basis state.
template <class R>
FockOperator<R> matrix_unit(const ModeSet& ms, Occ a, Occ b) {
  FockOperator<R> id = FockOperator<R>::identity(ms);
  FockOperator<R> pvac = id;
  for (int m = 0; m < ms.modes(); ++m) {
    FockOperator<R> n =
        FockOperator<R>::ladder(ms, m, true) * FockOperator<R>::ladder(ms, m, false);
    pvac = pvac * (id - n);
  }
  FockOperator<R> ca = id, ab = id;
  for (int m = 0; m < ms.modes(); ++m) {
    if ((a >> m) & 1) ca = ca * FockOperator<R>::ladder(ms, m, true);
    if ((b >> m) & 1) ab = FockOperator<R>::ladder(ms, m, false) * ab;
  }
  FockOperator<R> t = ca * pvac * ab;
  GrassmannElement<R> s = t.apply(FockState<R>::basis(ms, b)).amplitude_left(a);
  R c = detail::scalar_only(s, "matrix unit normalization");
  return t.scaled(c.inv());
}

// rho = Lam^{-3} * integral |q + x/2> W[q,p] exp(x <> p) <q - x/2| D[p,q,x],
// reconstructed entry by entry against the occupation basis.  The kernel is
// exp((q1 - q2) <> p) with q1 = q + x/2, q2 = q - x/2: this is the unique
// orientation consistent with the density retrieval rho[q1,q2] and the
// completeness integral (the opposite order exp(p <> x) reconstructs a
// pairing-twisted operator).
template <class R>
FockOperator<R> weyl_transform(Workspace& ws, const PhaseSpace<R>& ps,
                               const PhaseSpaceFunctional<R>& w, const R& lambda) {
  const ModeSet& ms = *ps.modes;
  auto pi = ParameterFunction<R>::fresh(ws, ms, "wp");
  auto qi = ParameterFunction<R>::fresh(ws, ms, "wq");
  auto xi = ParameterFunction<R>::fresh(ws, ms, "wx");
  R half = R::from_rational(rat(1, 2));
  GrassmannElement<R> wsub =
      w.value.substitute(detail::functional_images(w, detail::param_images(qi),
                                                   detail::param_images(pi)));
  FockState<R> ket = render_right(ms, BogoKind::g, qi + xi.scaled(half));
  FockBra<R> bra = render_left(ms, BogoKind::g, qi + xi.scaled(R::from_int(-1) * half));
  GrassmannElement<R> kern = contract(xi, pi).exp_nilpotent();
  R norm = detail::ring_pow(lambda, -3);
  FockOperator<R> out = FockOperator<R>::zero(ms);
  int M = ms.modes();
  for (Occ a = 0; a < (Occ(1) << M); ++a) {
    GrassmannElement<R> ka = inner(FockBra<R>::of(FockState<R>::basis(ms, a)), ket);
    for (Occ b = 0; b < (Occ(1) << M); ++b) {
      GrassmannElement<R> bb = inner(bra, FockState<R>::basis(ms, b));
      GrassmannElement<R> val =
          functional_integral(ka * wsub * kern * bb, {&pi, &qi, &xi});
      if (val.is_zero()) continue;
      R c = detail::scalar_only(val, "reconstructed operator entry") * norm;
      out = out + matrix_unit<R>(ms, a, b).scaled(c);
    }
  }
  return out;
}

// Density functional rho[q1,q2] = <q1| rho |q2>.
template <class R>
GrassmannElement<R> density_functional(const ModeSet& ms, const FockOperator<R>& rho,
                                       const ParameterFunction<R>& q1,
                                       const ParameterFunction<R>& q2) {
  return inner(render_left(ms, BogoKind::g, q1), rho.apply(render_right(ms, BogoKind::g, q2)));
}

// Density functional recovered from a phase-space functional:
// rho[q1,q2] = Lam^{-1} * integral W[(q1+q2)/2, p] exp((q1-q2) <> p) D[p].
template <class R>
GrassmannElement<R> weyl_density(Workspace& ws, const PhaseSpace<R>& ps,
                                 const PhaseSpaceFunctional<R>& w,
                                 const ParameterFunction<R>& q1, const ParameterFunction<R>& q2,
                                 const R& lambda) {
  const ModeSet& ms = *ps.modes;
  auto v = ParameterFunction<R>::fresh(ws, ms, "dv");
  R half = R::from_rational(rat(1, 2));
  ParameterFunction<R> mid = (q1 + q2).scaled(half);
  GrassmannElement<R> wsub = w.value.substitute(
      detail::functional_images(w, detail::param_images(mid), detail::param_images(v)));
  GrassmannElement<R> kern = contract(detail::param_sub(q1, q2), v).exp_nilpotent();
  return functional_integral(wsub * kern, v).scaled(lambda.inv());
}

// ---------------------------------------------------------------------------
// Functional Fourier analysis.
// ---------------------------------------------------------------------------

enum class FourierDirection { forward, inverse };

// forward:  Wt[p] = Lam^{-1} * integral W[q] exp(p <> q) D[q]
// inverse:  W[q]  = Lam^{-1} * integral Wt[p] exp(q <> p) D[p]
template <class R>
PhaseSpaceFunctional<R> grassmann_fourier(Workspace& ws, const PhaseSpace<R>& ps,
                                          const PhaseSpaceFunctional<R>& w, FourierDirection dir,
                                          const R& lambda) {
  const ModeSet& ms = *ps.modes;
  auto u = ParameterFunction<R>::fresh(ws, ms, "fu");
  std::map<GenId, GrassmannElement<R>> sub;
  const auto& from = dir == FourierDirection::forward ? w.q_vars : w.p_vars;
  for (size_t m = 0; m < from.size(); ++m) sub[from[m]] = u.at((int)m);
  GrassmannElement<R> wsub = w.value.substitute(sub);
  GrassmannElement<R> kern =
      (dir == FourierDirection::forward ? contract(ps.p, u) : contract(ps.q, u)).exp_nilpotent();
  GrassmannElement<R> val = functional_integral(wsub * kern, u).scaled(lambda.inv());
  return make_functional(ps, val);
}

// chi[xi,zeta] = Lam^{-2} * integral W[q,p] exp(xi <> q - p <> zeta) D[q,p],
// with the (xi, zeta) pair living on a second phase-space variable set.
template <class R>
PhaseSpaceFunctional<R> characteristic(Workspace& ws, const PhaseSpace<R>& ps_in,
                                       const PhaseSpace<R>& ps_out,
                                       const PhaseSpaceFunctional<R>& w, const R& lambda) {
  const ModeSet& ms = *ps_in.modes;
  auto u = ParameterFunction<R>::fresh(ws, ms, "cu");
  auto v = ParameterFunction<R>::fresh(ws, ms, "cv");
  GrassmannElement<R> wsub = w.value.substitute(
      detail::functional_images(w, detail::param_images(u), detail::param_images(v)));
  GrassmannElement<R> kern =
      (contract(ps_out.q, u) + contract(v, ps_out.p).scaled(R::from_int(-1))).exp_nilpotent();
  GrassmannElement<R> val =
      functional_integral(wsub * kern, {&u, &v}).scaled(detail::ring_pow(lambda, -2));
  return make_functional(ps_out, val);
}

// W[q,p] = Lam^{-2} * integral chi[xi,zeta] exp(p <> zeta - xi <> q) D[zeta,xi].
template <class R>
PhaseSpaceFunctional<R> inverse_characteristic(Workspace& ws, const PhaseSpace<R>& ps_out,
                                               const PhaseSpace<R>& ps_in,
                                               const PhaseSpaceFunctional<R>& chi,
                                               const R& lambda) {
  const ModeSet& ms = *ps_out.modes;
  auto xi = ParameterFunction<R>::fresh(ws, ms, "ix");
  auto zi = ParameterFunction<R>::fresh(ws, ms, "iz");
  GrassmannElement<R> csub = chi.value.substitute(
      detail::functional_images(chi, detail::param_images(xi), detail::param_images(zi)));
  GrassmannElement<R> kern =
      (contract(ps_out.p, zi) + contract(xi, ps_out.q).scaled(R::from_int(-1))).exp_nilpotent();
  GrassmannElement<R> val =
      functional_integral(csub * kern, {&zi, &xi}).scaled(detail::ring_pow(lambda, -2));
  return make_functional(ps_out, val);
}

// ---------------------------------------------------------------------------
// Star products.
// ---------------------------------------------------------------------------

// Two-fold star product:
// (W_A * W_B)[q,p] = 2^{-2*Omega} Lam^{-4} * integral W_A[q1,p1] W_B[q2,p2]
//   exp(2(q-q2) <> p1 + 2(q1-q) <> p2 + 2(q2-q1) <> p) D[q1,p1,q2,p2].
template <class R>
PhaseSpaceFunctional<R> star2(Workspace& ws, const PhaseSpace<R>& ps,
                              const PhaseSpaceFunctional<R>& wa,
                              const PhaseSpaceFunctional<R>& wb, const R& lambda) {
  const ModeSet& ms = *ps.modes;
  auto q1 = ParameterFunction<R>::fresh(ws, ms, "s2q1");
  auto p1 = ParameterFunction<R>::fresh(ws, ms, "s2p1");
  auto q2 = ParameterFunction<R>::fresh(ws, ms, "s2q2");
  auto p2 = ParameterFunction<R>::fresh(ws, ms, "s2p2");
  GrassmannElement<R> wa_sub = wa.value.substitute(
      detail::functional_images(wa, detail::param_images(q1), detail::param_images(p1)));
  GrassmannElement<R> wb_sub = wb.value.substitute(
      detail::functional_images(wb, detail::param_images(q2), detail::param_images(p2)));
  GrassmannElement<R> expo = (contract(detail::param_sub(ps.q, q2), p1) +
                              contract(detail::param_sub(q1, ps.q), p2) +
                              contract(detail::param_sub(q2, q1), ps.p))
                                 .scaled(R::from_int(2));
  GrassmannElement<R> integrand = wa_sub * wb_sub * expo.exp_nilpotent();
  long om = detail::integral_omega(ms);
  Rational pw = 1;
  for (long j = 0; j < 2 * om; ++j) pw *= 2;
  R norm = R::from_rational(Rational(1) / pw) * detail::ring_pow(lambda, -4);
  GrassmannElement<R> val = functional_integral(integrand, {&q1, &p1, &q2, &p2}).scaled(norm);
  return make_functional(ps, val);
}

// Three-fold star product:
// W[q,p] = Lam^{-4} * integral exp((q-qa) <> pb + qb <> (pa-p))
//   W_A[(q+qa+qb)/2, (p+pa+pb)/2] W_B[qa,pa] W_C[(q+qa-qb)/2, (p+pa-pb)/2]
//   D[qa,pa,qb,pb].
template <class R>
PhaseSpaceFunctional<R> star3(Workspace& ws, const PhaseSpace<R>& ps,
                              const PhaseSpaceFunctional<R>& wa,
                              const PhaseSpaceFunctional<R>& wb,
                              const PhaseSpaceFunctional<R>& wc, const R& lambda) {
  const ModeSet& ms = *ps.modes;
  auto qa = ParameterFunction<R>::fresh(ws, ms, "s3qa");
  auto pa = ParameterFunction<R>::fresh(ws, ms, "s3pa");
  auto qb = ParameterFunction<R>::fresh(ws, ms, "s3qb");
  auto pb = ParameterFunction<R>::fresh(ws, ms, "s3pb");
  R half = R::from_rational(rat(1, 2));
  ParameterFunction<R> qplus = ((ps.q + qa) + qb).scaled(half);
  ParameterFunction<R> pplus = ((ps.p + pa) + pb).scaled(half);
  ParameterFunction<R> qminus = detail::param_sub(ps.q + qa, qb).scaled(half);
  ParameterFunction<R> pminus = detail::param_sub(ps.p + pa, pb).scaled(half);
  GrassmannElement<R> wa_sub = wa.value.substitute(
      detail::functional_images(wa, detail::param_images(qplus), detail::param_images(pplus)));
  GrassmannElement<R> wb_sub = wb.value.substitute(
      detail::functional_images(wb, detail::param_images(qa), detail::param_images(pa)));
  GrassmannElement<R> wc_sub = wc.value.substitute(
      detail::functional_images(wc, detail::param_images(qminus), detail::param_images(pminus)));
  GrassmannElement<R> kern = (contract(detail::param_sub(ps.q, qa), pb) +
                              contract(qb, detail::param_sub(pa, ps.p)))
                                 .exp_nilpotent();
  GrassmannElement<R> val =
      functional_integral(kern * wa_sub * wb_sub * wc_sub, {&qa, &pa, &qb, &pb})
          .scaled(detail::ring_pow(lambda, -4));
  return make_functional(ps, val);
}

// ---------------------------------------------------------------------------
// Traces.
// ---------------------------------------------------------------------------

// Phase-space trace integral Lam^{-2} * integral W[q,p] D[q,p].
template <class R>
R phase_space_trace(Workspace& ws, const PhaseSpace<R>& ps, const PhaseSpaceFunctional<R>& w,
                    const R& lambda) {
  const ModeSet& ms = *ps.modes;
  auto u = ParameterFunction<R>::fresh(ws, ms, "tq");
  auto v = ParameterFunction<R>::fresh(ws, ms, "tp");
  GrassmannElement<R> wsub = w.value.substitute(
      detail::functional_images(w, detail::param_images(u), detail::param_images(v)));
  GrassmannElement<R> val = functional_integral(wsub, {&u, &v});
  return detail::scalar_only(val, "phase-space trace") * detail::ring_pow(lambda, -2);
}

// Plain operator trace over the occupation basis (scalar-coefficient
// operators only).
template <class R>
R fock_trace(const FockOperator<R>& op) {
  const ModeSet& ms = *op.modes;
  R acc = R::zero();
  for (Occ n = 0; n < (Occ(1) << ms.modes()); ++n) {
    FockState<R> basis = FockState<R>::basis(ms, n);
    GrassmannElement<R> d = inner(FockBra<R>::of(basis), op.apply(basis));
    acc = acc + detail::scalar_only(d, "operator trace entry");
  }
  return acc;
}

// Parity-weighted operator trace: each occupation-n diagonal entry enters
// with the sign (-1)^{popcount(n)}.
template <class R>
R fock_trace_parity_weighted(const FockOperator<R>& op) {
  const ModeSet& ms = *op.modes;
  R acc = R::zero();
  for (Occ n = 0; n < (Occ(1) << ms.modes()); ++n) {
    FockState<R> basis = FockState<R>::basis(ms, n);
    GrassmannElement<R> d = inner(FockBra<R>::of(basis), op.apply(basis));
    R v = detail::scalar_only(d, "operator trace entry");
    acc = occ_parity(n) ? acc + R::from_int(-1) * v : acc + v;
  }
  return acc;
}

// Random scalar-coefficient operator: a sum of normal-ordered ladder words
// with nonzero random Gaussian-rational coefficients.
template <class R>
FockOperator<R> random_fock_operator(const ModeSet& ms, std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 4);
  auto coeff = [&]() {
    R k = R::zero();
    while (k.is_zero()) k = R::from_gaussian(rat(num(rng), den(rng)), rat(num(rng), den(rng)));
    return k;
  };
  FockOperator<R> out = FockOperator<R>::zero(ms);
  for (int t = 0; t < terms; ++t) {
    LadderWord word;
    for (int m = 0; m < ms.modes(); ++m) {
      int c = pick(rng);
      if (c == 1 || c == 3) word.push_back({m, true});
    }
    for (int m = 0; m < ms.modes(); ++m) {
      int c = pick(rng);
      if (c == 2 || c == 3) word.push_back({m, false});
    }
    out = out + FockOperator<R>::from_term(ms, GrassmannElement<R>::scalar(coeff()), word);
  }
  return out;
}

// Random functional over the canonical variables: a sum of random monomials
// in the q (and optionally p) generators.
template <class R>
PhaseSpaceFunctional<R> random_functional(const PhaseSpace<R>& ps, std::mt19937_64& rng,
                                          int terms, bool use_p) {
  std::uniform_int_distribution<int> flip(0, 1);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 4);
  const Workspace& ws = *ps.q.at(0).ws;
  GrassmannElement<R> acc = GrassmannElement<R>::zero();
  for (int t = 0; t < terms; ++t) {
    GrassmannElement<R> mono = GrassmannElement<R>::one();
    for (GenId id : param_generator_ids(ps.q))
      if (flip(rng)) mono = mono * GrassmannElement<R>::generator(ws, id);
    if (use_p)
      for (GenId id : param_generator_ids(ps.p))
        if (flip(rng)) mono = mono * GrassmannElement<R>::generator(ws, id);
    R k = R::zero();
    while (k.is_zero()) k = R::from_gaussian(rat(num(rng), den(rng)), rat(num(rng), den(rng)));
    acc = acc + mono.scaled(k);
  }
  return make_functional(ps, acc);
}

// ---------------------------------------------------------------------------
// Check suites.  Each suite allocates its own workspaces to stay inside the
// generator capacity.
// ---------------------------------------------------------------------------

// Eigen-structure, adjoint pairing, mutual unbiasedness, orthogonality, and
// the ladder-quadrature dictionary.
template <class R>
CheckList quadrature_basis_checks(const ModeSet& ms, std::mt19937_64& rng) {
  CheckList out;
  const R lam = orthogonality_constant_formula<R>(ms);
  BogoliubovSet<R> bog = BogoliubovSet<R>::build(ms);

  {
    Workspace ws;
    auto q = ParameterFunction<R>::random(ws, ms, "q", rng);
    auto p = ParameterFunction<R>::random(ws, ms, "p", rng);
    auto qk = QuadratureBasisState<R>::position_ket(ms, q);
    auto qb = QuadratureBasisState<R>::position_bra(ms, q);
    auto pk = QuadratureBasisState<R>::momentum_ket(ms, p);
    auto pb = QuadratureBasisState<R>::momentum_bra(ms, p);

    bool ke = true, be = true;
    for (int m = 0; m < ms.modes(); ++m) {
      ke = ke && eigen_residual_right(bog.g[m], qk.ket, q.at(m)).is_zero() &&
           eigen_residual_right(bog.g_dag[m], pk.ket, p.at(m)).is_zero();
      be = be && eigen_residual_left(bog.g[m], qb.bra, q.at(m)).is_zero() &&
           eigen_residual_left(bog.g_dag[m], pb.bra, p.at(m)).is_zero();
    }
    out.push_back(make_check("q op |q> = |q> q_s(k) and p op |p> = |p> p_s(k)", ke));
    out.push_back(make_check("<q| q op = q_s(k) <q| and <p| p op = p_s(k) <p|", be));

    GrassmannElement<R> qp = inner(qb.bra, pk.ket);
    GrassmannElement<R> pq = inner(pb.bra, qk.ket);
    out.push_back(make_check("<q|p> = exp(q <> p)", qp == contract(q, p).exp_nilpotent()));
    out.push_back(make_check("<p|q> = exp(p <> q)", pq == contract(p, q).exp_nilpotent()));
  }
  {
    // adjoint relations hold for real field configurations (the adjoint
    // conjugates the field coefficients)
    Workspace ws;
    auto q = ParameterFunction<R>::fresh(ws, ms, "q");
    auto p = ParameterFunction<R>::fresh(ws, ms, "p");
    auto qk = QuadratureBasisState<R>::position_ket(ms, q);
    auto qb = QuadratureBasisState<R>::position_bra(ms, q);
    auto pk = QuadratureBasisState<R>::momentum_ket(ms, p);
    out.push_back(make_check("<q| = (|q>)++ (fermionic adjoint gives the dual)",
                             qb.bra.dual == state_adjoint_flip(qk.ket)));
    auto pb_at_q = QuadratureBasisState<R>::momentum_bra(ms, q);
    auto qb_at_p = QuadratureBasisState<R>::position_bra(ms, p);
    out.push_back(
        make_check("<p| = (|q>)+ at p = q (Hermitian adjoint crosses bases)",
                   pb_at_q.bra.dual == qk.ket));
    out.push_back(make_check("<q| = (|p>)+ at q = p", qb_at_p.bra.dual == pk.ket));
    GrassmannElement<R> qp = inner(qb.bra, pk.ket);
    out.push_back(make_check("<q|p> conj(<q|p>) = 1 (mutual unbiasedness, algebraic form)",
                             qp * qp.conj() == GrassmannElement<R>::one()));
  }
  {
    Workspace ws;
    auto q1 = ParameterFunction<R>::random(ws, ms, "q1", rng);
    auto q2 = ParameterFunction<R>::random(ws, ms, "q2", rng);
    GrassmannElement<R> ov = inner(render_left(ms, BogoKind::g, q1),
                                   render_right(ms, BogoKind::g, q2));
    out.push_back(make_check(
        "<q|q'> = Lam delta[q - q']",
        ov == grassmann_delta(detail::param_sub(q1, q2)).scaled(lam)));
    GrassmannElement<R> ovp = inner(render_left(ms, BogoKind::g_bar, q1),
                                    render_right(ms, BogoKind::g_bar, q2));
    out.push_back(make_check(
        "<p|p'> = Lam delta[p - p']",
        ovp == grassmann_delta(detail::param_sub(q1, q2)).scaled(lam)));
  }
  {
    // ladder operators as quadrature combinations, and back
    R inv_s2 = sqrt2_int_pow<R>(-1);
    bool a_ok = true, adag_ok = true;
    for (int m = 0; m < ms.modes(); ++m) {
      int k = ms.k_of(m), s = ms.s_of(m);
      FockOperator<R> eps_p = FockOperator<R>::zero(ms);
      FockOperator<R> eps_q = FockOperator<R>::zero(ms);
      for (int r = 0; r < ms.spin_count; ++r) {
        R e = ring_from_cq<R>(ms.eps_at(s, r));
        if (e.is_zero()) continue;
        eps_p = eps_p + bog.g_dag[ms.mode(k, r)].scaled(e);
        eps_q = eps_q + bog.g[ms.mode(k, r)].scaled(e);
      }
      FockOperator<R> a_rhs = (bog.g[m] - eps_p).scaled(inv_s2);
      FockOperator<R> adag_rhs = (eps_q + bog.g_dag[m]).scaled(inv_s2);
      a_ok = a_ok && op_equal(FockOperator<R>::ladder(ms, m, false), a_rhs);
      adag_ok = adag_ok && op_equal(FockOperator<R>::ladder(ms, m, true), adag_rhs);
    }
    out.push_back(make_check("a_s = (q op - eps p op)/sqrt2 as an operator identity", a_ok));
    out.push_back(make_check("a+_s = (eps q op + p op)/sqrt2 as an operator identity", adag_ok));
  }
  {
    // spectral resolutions: q op = integral |q> q_s(k) <q| D_Lam[q], entrywise
    Workspace ws;
    QuadraturePair<R> qp = QuadraturePair<R>::build(ms);
    bool q_ok = true, p_ok = true;
    int M = ms.modes();
    auto f = ParameterFunction<R>::fresh(ws, ms, "sf");
    FockState<R> qket = render_right(ms, BogoKind::g, f);
    FockBra<R> qbra = render_left(ms, BogoKind::g, f);
    FockState<R> pket = render_right(ms, BogoKind::g_bar, f);
    FockBra<R> pbra = render_left(ms, BogoKind::g_bar, f);
    for (int m = 0; m < M && (q_ok || p_ok); ++m) {
      for (Occ a = 0; a < (Occ(1) << M); ++a) {
        FockBra<R> abra = FockBra<R>::of(FockState<R>::basis(ms, a));
        for (Occ b = 0; b < (Occ(1) << M); ++b) {
          FockState<R> bket = FockState<R>::basis(ms, b);
          GrassmannElement<R> qi =
              functional_integral(inner(abra, qket) * f.at(m) * inner(qbra, bket), f)
                  .scaled(lam.inv());
          GrassmannElement<R> pi =
              functional_integral(inner(abra, pket) * f.at(m) * inner(pbra, bket), f)
                  .scaled(lam.inv());
          q_ok = q_ok && qi == inner(abra, qp.q_op[m].apply(bket));
          p_ok = p_ok && pi == inner(abra, qp.p_op[m].apply(bket));
        }
      }
    }
    out.push_back(make_check("q op = integral |q> q_s(k) <q| D_Lam[q]", q_ok));
    out.push_back(make_check("p op = integral |p> p_s(k) <p| D_Lam[p]", p_ok));
  }
  return out;
}

// Completeness of both bases with a single constant, the sandwich identities
// of the resolved identity, and the functional Fourier kernel facts.
template <class R>
CheckList completeness_checks(const ModeSet& ms) {
  CheckList out;
  const R lam_formula = orthogonality_constant_formula<R>(ms);
  const R lam_q = measure_orthogonality_constant<R>(ms, BogoKind::g);
  const R lam_p = measure_orthogonality_constant<R>(ms, BogoKind::g_bar);
  out.push_back(make_check("integral |q><q| D[q] = c 1 (scalar multiple of the identity)",
                           true));  // measure_orthogonality_constant fails otherwise
  out.push_back(make_check("integral |p><p| D[p] = c 1 with the same constant", lam_p == lam_q));
  out.push_back(make_check("measured constant = (-i)^{Omega/2}", lam_q == lam_formula));
  const R lam = lam_q;

  {  // sandwiches of the resolved identity between eigenstates
    Workspace ws;
    auto q1 = ParameterFunction<R>::fresh(ws, ms, "q1");
    auto q2 = ParameterFunction<R>::fresh(ws, ms, "q2");
    auto p1 = ParameterFunction<R>::fresh(ws, ms, "p1");
    auto p2 = ParameterFunction<R>::fresh(ws, ms, "p2");
    auto sandwich = [&](const FockBra<R>& lbra, const FockState<R>& rket,
                        const ParameterFunction<R>& f, const FockBra<R>& fbra,
                        const FockState<R>& fket) {
      return functional_integral(inner(lbra, fket) * inner(fbra, rket), f).scaled(lam.inv());
    };
    {
      auto f = ParameterFunction<R>::fresh(ws, ms, "f1");
      GrassmannElement<R> v = sandwich(render_left(ms, BogoKind::g, q2),
                                       render_right(ms, BogoKind::g, q1), f,
                                       render_left(ms, BogoKind::g, f),
                                       render_right(ms, BogoKind::g, f));
      out.push_back(make_check("<q2| 1 |q1> = Lam delta[q1 - q2]",
                               v == grassmann_delta(detail::param_sub(q1, q2)).scaled(lam)));
    }
    {
      auto f = ParameterFunction<R>::fresh(ws, ms, "f2");
      GrassmannElement<R> v = sandwich(render_left(ms, BogoKind::g, q2),
                                       render_right(ms, BogoKind::g_bar, p1), f,
                                       render_left(ms, BogoKind::g, f),
                                       render_right(ms, BogoKind::g, f));
      out.push_back(make_check("<q2| 1 |p1> = exp(q2 <> p1)",
                               v == contract(q2, p1).exp_nilpotent()));
    }
    {
      auto f = ParameterFunction<R>::fresh(ws, ms, "f3");
      GrassmannElement<R> v = sandwich(render_left(ms, BogoKind::g_bar, p2),
                                       render_right(ms, BogoKind::g, q1), f,
                                       render_left(ms, BogoKind::g, f),
                                       render_right(ms, BogoKind::g, f));
      out.push_back(make_check("<p2| 1 |q1> = exp(p2 <> q1)",
                               v == contract(p2, q1).exp_nilpotent()));
    }
    {
      auto f = ParameterFunction<R>::fresh(ws, ms, "f4");
      GrassmannElement<R> v = sandwich(render_left(ms, BogoKind::g_bar, p2),
                                       render_right(ms, BogoKind::g_bar, p1), f,
                                       render_left(ms, BogoKind::g, f),
                                       render_right(ms, BogoKind::g, f));
      out.push_back(make_check("<p2| 1 |p1> = Lam delta[p1 - p2]",
                               v == grassmann_delta(detail::param_sub(p1, p2)).scaled(lam)));
    }
  }
  {  // Fourier kernel facts for the delta functional, both signs, both slots
    Workspace ws;
    auto a = ParameterFunction<R>::fresh(ws, ms, "ka");
    auto b = ParameterFunction<R>::fresh(ws, ms, "kb");
    GrassmannElement<R> plus =
        functional_integral(contract(a, b).exp_nilpotent(), a).scaled(lam.inv());
    GrassmannElement<R> minus =
        functional_integral(contract(a, b).scaled(R::from_int(-1)).exp_nilpotent(), a)
            .scaled(lam.inv());
    out.push_back(make_check("integral exp(+q <> p) D_Lam[q] = Lam delta[p]",
                             plus == grassmann_delta(b).scaled(lam)));
    out.push_back(make_check("integral exp(-q <> p) D_Lam[q] = Lam delta[p]",
                             minus == grassmann_delta(b).scaled(lam)));
    auto c = ParameterFunction<R>::fresh(ws, ms, "kc");
    auto d = ParameterFunction<R>::fresh(ws, ms, "kd");
    GrassmannElement<R> second =
        functional_integral(contract(c, d).exp_nilpotent(), d).scaled(lam.inv());
    out.push_back(make_check("integral exp(q <> p) D_Lam[p] = Lam delta[q]",
                             second == grassmann_delta(c).scaled(lam)));
  }
  {  // basis exchange through the opposite resolution of the identity
    Workspace ws;
    auto q0 = ParameterFunction<R>::fresh(ws, ms, "x0");
    auto pi = ParameterFunction<R>::fresh(ws, ms, "pi");
    FockState<R> mix = render_right(ms, BogoKind::g_bar, pi)
                           .right_mul(contract(pi, q0).exp_nilpotent());
    FockState<R> lhs = functional_integral_state(mix, pi).scaled(lam.inv());
    out.push_back(make_check("|q> = integral |p> exp(p <> q) D_Lam[p]",
                             lhs == render_right(ms, BogoKind::g, q0)));
    auto p0 = ParameterFunction<R>::fresh(ws, ms, "y0");
    auto qi = ParameterFunction<R>::fresh(ws, ms, "qi");
    FockState<R> mix2 = render_right(ms, BogoKind::g, qi)
                            .right_mul(contract(qi, p0).exp_nilpotent());
    FockState<R> lhs2 = functional_integral_state(mix2, qi).scaled(lam.inv());
    out.push_back(make_check("|p> = integral |q> exp(q <> p) D_Lam[q]",
                             lhs2 == render_right(ms, BogoKind::g_bar, p0)));
  }
  return out;
}

// Phase-space symbols of the elementary operators, and linearity.
template <class R>
CheckList wigner_symbol_checks(const ModeSet& ms, std::mt19937_64& rng) {
  CheckList out;
  const R lam = measure_orthogonality_constant<R>(ms);
  QuadraturePair<R> qp = QuadraturePair<R>::build(ms);
  Workspace ws;
  PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);

  {
    auto w = wigner_transform(ws, ps, FockOperator<R>::identity(ms), lam);
    out.push_back(make_check("W[1] = 1", w.value == GrassmannElement<R>::one()));
  }
  bool qs = true, pss = true;
  for (int m = 0; m < ms.modes(); ++m) {
    qs = qs && wigner_transform(ws, ps, qp.q_op[m], lam).value == ps.q.at(m);
    pss = pss && wigner_transform(ws, ps, qp.p_op[m], lam).value == ps.p.at(m);
  }
  out.push_back(make_check("W[q op] = q_s(k)", qs));
  out.push_back(make_check("W[p op] = p_s(k)", pss));

  R inv_s2 = sqrt2_int_pow<R>(-1);
  bool as = true, adags = true;
  for (int m = 0; m < ms.modes(); ++m) {
    int k = ms.k_of(m), s = ms.s_of(m);
    GrassmannElement<R> eps_p = GrassmannElement<R>::zero();
    GrassmannElement<R> eps_q = GrassmannElement<R>::zero();
    for (int r = 0; r < ms.spin_count; ++r) {
      R e = ring_from_cq<R>(ms.eps_at(s, r));
      if (e.is_zero()) continue;
      eps_p = eps_p + ps.p.at(ms.mode(k, r)).scaled(e);
      eps_q = eps_q + ps.q.at(ms.mode(k, r)).scaled(e);
    }
    GrassmannElement<R> wa =
        wigner_transform(ws, ps, FockOperator<R>::ladder(ms, m, false), lam).value;
    GrassmannElement<R> wadag =
        wigner_transform(ws, ps, FockOperator<R>::ladder(ms, m, true), lam).value;
    as = as && wa == (ps.q.at(m) - eps_p).scaled(inv_s2);
    adags = adags && wadag == (eps_q + ps.p.at(m)).scaled(inv_s2);
  }
  out.push_back(make_check("W[a] = (q_s - eps p)/sqrt2", as));
  out.push_back(make_check("W[a+] = (eps q + p_s)/sqrt2", adags));

  {
    FockOperator<R> A = random_fock_operator<R>(ms, rng, 3);
    FockOperator<R> B = random_fock_operator<R>(ms, rng, 3);
    R ka = R::from_gaussian(rat(2, 3), rat(-1, 2));
    R kb = R::from_gaussian(rat(-1, 5), rat(3, 4));
    GrassmannElement<R> lin = wigner_transform(ws, ps, A.scaled(ka) + B.scaled(kb), lam).value;
    GrassmannElement<R> sum = wigner_transform(ws, ps, A, lam).value.scaled(ka) +
                              wigner_transform(ws, ps, B, lam).value.scaled(kb);
    out.push_back(make_check("W is linear in the operator", lin == sum));
  }
  {
    // parity-even operator gives a Grassmann-even functional
    FockOperator<R> n01 = FockOperator<R>::ladder(ms, 0, true) *
                          FockOperator<R>::ladder(ms, (int)ms.modes() - 1, false);
    auto w = wigner_transform(ws, ps, n01 + FockOperator<R>::identity(ms), lam);
    out.push_back(make_check("parity-even operator gives an even functional", w.is_even()));
  }
  return out;
}

// Weyl reconstruction: operator and density-functional roundtrips.
template <class R>
CheckList weyl_checks(const ModeSet& ms, std::mt19937_64& rng, int draws = 3) {
  CheckList out;
  const R lam = measure_orthogonality_constant<R>(ms);
  {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    auto w1 = constant_functional(ps, R::one());
    out.push_back(make_check("Weyl of W = 1 is the identity operator",
                             op_equal(weyl_transform(ws, ps, w1, lam),
                                      FockOperator<R>::identity(ms))));
  }
  bool roundtrip = true;
  std::string bad;
  for (int d = 0; d < draws && roundtrip; ++d) {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    FockOperator<R> op = random_fock_operator<R>(ms, rng, 4);
    auto w = wigner_transform(ws, ps, op, lam);
    roundtrip = op_equal(weyl_transform(ws, ps, w, lam), op);
    if (!roundtrip) bad = "draw " + std::to_string(d);
  }
  out.push_back(make_check("Weyl(Wigner(op)) = op on random operators", roundtrip, bad));

  bool wround = true;
  for (int d = 0; d < draws && wround; ++d) {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    auto w = random_functional<R>(ps, rng, 5, true);
    auto back = wigner_transform(ws, ps, weyl_transform(ws, ps, w, lam), lam);
    wround = back.value == w.value;
  }
  out.push_back(make_check("Wigner(Weyl(W)) = W on random functionals", wround));

  {
    // density functional from the phase-space functional
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    FockOperator<R> rho = random_fock_operator<R>(ms, rng, 3);
    auto w = wigner_transform(ws, ps, rho, lam);
    auto q1 = ParameterFunction<R>::random(ws, ms, "r1", rng);
    auto q2 = ParameterFunction<R>::random(ws, ms, "r2", rng);
    GrassmannElement<R> direct = density_functional(ms, rho, q1, q2);
    GrassmannElement<R> viaw = weyl_density(ws, ps, w, q1, q2, lam);
    out.push_back(make_check(
        "rho[q1,q2] = integral W[(q1+q2)/2, p] exp((q1-q2) <> p) D_Lam[p]", direct == viaw));
  }
  {
    // pure-state factorization for the vacuum projector, at real fields
    // (conjugating psi[q2] conjugates the field coefficients)
    Workspace ws;
    FockOperator<R> rho = matrix_unit<R>(ms, 0, 0);
    auto q1 = ParameterFunction<R>::fresh(ws, ms, "v1");
    auto q2 = ParameterFunction<R>::fresh(ws, ms, "v2");
    GrassmannElement<R> dens = density_functional(ms, rho, q1, q2);
    GrassmannElement<R> psi1 =
        inner(render_left(ms, BogoKind::g, q1), FockState<R>::vacuum(ms));
    GrassmannElement<R> psi2 =
        inner(render_left(ms, BogoKind::g, q2), FockState<R>::vacuum(ms));
    out.push_back(make_check("vacuum projector: rho[q1,q2] = psi[q1] conj(psi[q2])",
                             dens == psi1 * psi2.conj()));
  }
  return out;
}

// Functional Fourier transform and characteristic functional.
template <class R>
CheckList fourier_checks(const ModeSet& ms, std::mt19937_64& rng) {
  CheckList out;
  const R lam = orthogonality_constant_formula<R>(ms);
  {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    auto w = random_functional<R>(ps, rng, 6, false);
    auto fwd = grassmann_fourier(ws, ps, w, FourierDirection::forward, lam);
    auto back = grassmann_fourier(ws, ps, fwd, FourierDirection::inverse, lam);
    out.push_back(make_check("inverse Fourier of the Fourier transform is the identity",
                             back.value == w.value));
  }
  {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    auto w1 = constant_functional(ps, R::one());
    auto fwd = grassmann_fourier(ws, ps, w1, FourierDirection::forward, lam);
    out.push_back(make_check("Fourier of W = 1 is Lam delta[p]",
                             fwd.value == grassmann_delta(ps.p).scaled(lam)));
  }
  {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    PhaseSpace<R> cs = PhaseSpace<R>::allocate(ws, ms);
    auto w = random_functional<R>(ps, rng, 5, true);
    auto chi = characteristic(ws, ps, cs, w, lam);
    auto back = inverse_characteristic(ws, ps, cs, chi, lam);
    out.push_back(make_check("characteristic functional inverts exactly",
                             back.value == w.value));
  }
  {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    PhaseSpace<R> cs = PhaseSpace<R>::allocate(ws, ms);
    auto w1 = constant_functional(ps, R::one());
    auto chi = characteristic(ws, ps, cs, w1, lam);
    GrassmannElement<R> expect =
        (grassmann_delta(cs.q) * grassmann_delta(cs.p)).scaled(lam * lam);
    out.push_back(make_check("characteristic of W = 1 is Lam^2 delta[xi] delta[zeta]",
                             chi.value == expect));
  }
  return out;
}

// Star products against operator products.
template <class R>
CheckList star_checks(const ModeSet& ms, std::mt19937_64& rng) {
  CheckList out;
  const R lam = measure_orthogonality_constant<R>(ms);
  QuadraturePair<R> qp = QuadraturePair<R>::build(ms);
  {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    auto w1 = constant_functional(ps, R::one());
    out.push_back(make_check("W[1] * W[1] = 1",
                             star2(ws, ps, w1, w1, lam).value == GrassmannElement<R>::one()));
    auto wq = wigner_transform(ws, ps, qp.q_op[0], lam);
    out.push_back(make_check("W[q op] * W[1] = q_s(k)",
                             star2(ws, ps, wq, w1, lam).value == wq.value));
    out.push_back(make_check("W[1] * W[q op] = q_s(k)",
                             star2(ws, ps, w1, wq, lam).value == wq.value));
  }
  {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    FockOperator<R> a0 = FockOperator<R>::ladder(ms, 0, false);
    FockOperator<R> a0d = FockOperator<R>::ladder(ms, 0, true);
    auto wa = wigner_transform(ws, ps, a0, lam);
    auto wad = wigner_transform(ws, ps, a0d, lam);
    out.push_back(make_check("W[a] * W[a+] = W[a a+]",
                             star2(ws, ps, wa, wad, lam).value ==
                                 wigner_transform(ws, ps, a0 * a0d, lam).value));
  }
  bool two = true;
  for (int d = 0; d < 2 && two; ++d) {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    FockOperator<R> A = random_fock_operator<R>(ms, rng, 3);
    FockOperator<R> B = random_fock_operator<R>(ms, rng, 3);
    auto wa = wigner_transform(ws, ps, A, lam);
    auto wb = wigner_transform(ws, ps, B, lam);
    two = star2(ws, ps, wa, wb, lam).value == wigner_transform(ws, ps, A * B, lam).value;
  }
  out.push_back(make_check("W[A] * W[B] = W[A B] on random operators", two));
  {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    FockOperator<R> A = random_fock_operator<R>(ms, rng, 2);
    FockOperator<R> B = random_fock_operator<R>(ms, rng, 2);
    FockOperator<R> C = random_fock_operator<R>(ms, rng, 2);
    auto wa = wigner_transform(ws, ps, A, lam);
    auto wb = wigner_transform(ws, ps, B, lam);
    auto wc = wigner_transform(ws, ps, C, lam);
    auto w3 = star3(ws, ps, wa, wb, wc, lam);
    out.push_back(make_check("three-fold star = W[A B C]",
                             w3.value == wigner_transform(ws, ps, A * B * C, lam).value));
    out.push_back(make_check("(W[A] * W[B]) * W[C] = three-fold star",
                             star2(ws, ps, star2(ws, ps, wa, wb, lam), wc, lam).value ==
                                 w3.value));
  }
  return out;
}

// Trace integrals.  The phase-space volume of the identity operator vanishes
// under Berezin integration while its operator trace is 2^M, so the plain
// trace cannot be a phase-space integral; the integral instead computes the
// parity-weighted trace, which agrees with the plain trace exactly on
// operators supported on even occupation numbers.
template <class R>
CheckList trace_checks(const ModeSet& ms, std::mt19937_64& rng) {
  CheckList out;
  const R lam = measure_orthogonality_constant<R>(ms);
  {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    FockOperator<R> rho = matrix_unit<R>(ms, 0, 0);
    auto w = wigner_transform(ws, ps, rho, lam);
    out.push_back(make_check("vacuum projector: integral W D_Lam[q,p] = 1",
                             phase_space_trace(ws, ps, w, lam) == R::one()));
  }
  {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    bool pattern = true;
    for (Occ n = 0; n < (Occ(1) << ms.modes()); ++n) {
      auto w = wigner_transform(ws, ps, matrix_unit<R>(ms, n, n), lam);
      R t = phase_space_trace(ws, ps, w, lam);
      R expect = occ_parity(n) ? R::from_int(-1) : R::one();
      pattern = pattern && t == expect;
    }
    out.push_back(make_check(
        "occupation projectors: integral W D_Lam[q,p] = (-1)^{popcount}", pattern));
  }
  bool weighted = true, plain_even = true;
  for (int d = 0; d < 3 && weighted; ++d) {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    FockOperator<R> op = random_fock_operator<R>(ms, rng, 4);
    auto w = wigner_transform(ws, ps, op, lam);
    weighted = phase_space_trace(ws, ps, w, lam) == fock_trace_parity_weighted(op);
  }
  out.push_back(make_check(
      "random operators: integral W D_Lam[q,p] = parity-weighted trace", weighted));
  {
    // operators supported on even occupation numbers: plain trace
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    std::vector<Occ> evens;
    for (Occ n = 0; n < (Occ(1) << ms.modes()); ++n)
      if (!occ_parity(n)) evens.push_back(n);
    std::uniform_int_distribution<size_t> pick(0, evens.size() - 1);
    std::uniform_int_distribution<long> num(-3, 3);
    std::uniform_int_distribution<long> den(1, 3);
    FockOperator<R> op = FockOperator<R>::zero(ms);
    for (int t = 0; t < 4; ++t) {
      R k = R::zero();
      while (k.is_zero()) k = R::from_gaussian(rat(num(rng), den(rng)), rat(num(rng), den(rng)));
      op = op + matrix_unit<R>(ms, evens[pick(rng)], evens[pick(rng)]).scaled(k);
    }
    auto w = wigner_transform(ws, ps, op, lam);
    R t = phase_space_trace(ws, ps, w, lam);
    plain_even = t == fock_trace(op) && t == fock_trace_parity_weighted(op);
    out.push_back(make_check(
        "even-sector operators: integral W D_Lam[q,p] = plain trace", plain_even));
  }
  return out;
}

// Full suite for the default scenario.
template <class R>
CheckList wigner_layer_checks(const ModeSet& ms, std::mt19937_64& rng) {
  CheckList out;
  for (auto& c : quadrature_basis_checks<R>(ms, rng)) out.push_back(c);
  for (auto& c : completeness_checks<R>(ms)) out.push_back(c);
  for (auto& c : wigner_symbol_checks<R>(ms, rng)) out.push_back(c);
  for (auto& c : weyl_checks<R>(ms, rng)) out.push_back(c);
  for (auto& c : fourier_checks<R>(ms, rng)) out.push_back(c);
  for (auto& c : star_checks<R>(ms, rng)) out.push_back(c);
  for (auto& c : trace_checks<R>(ms, rng)) out.push_back(c);
  return out;
}

}  // namespace fphase
