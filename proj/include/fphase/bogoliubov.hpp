#pragma once

#include "fphase/check.hpp"
#include "fphase/fock.hpp"
#include "fphase/parameter.hpp"
#include "fphase/poly_rings.hpp"

namespace fphase {

// Bogoliubov pair per mode: g = (a + eps a+)/sqrt2, h = i(a - eps a+)/sqrt2,
// with the spin transform applied at the same k point.  Exact in any ring
// that carries sqrt2.
template <class R>
struct BogoliubovSet {
  const ModeSet* modes = nullptr;
  std::vector<FockOperator<R>> g, h, g_dag, h_dag;

  static BogoliubovSet build(const ModeSet& ms) {
    static_assert(R::has_sqrt2, "bogoliubov construction needs sqrt2 in the ring");
    if (!ms.has_pairing()) fail(ErrorKind::config, "bogoliubov construction needs a spin transform");
    R inv_s2 = R::sqrt2() * R::from_rational(rat(1, 2));
    BogoliubovSet set;
    set.modes = &ms;
    for (int m = 0; m < ms.modes(); ++m) {
      int k = ms.k_of(m), s = ms.s_of(m);
      FockOperator<R> low = FockOperator<R>::ladder(ms, m, false);
      FockOperator<R> twist = FockOperator<R>::zero(ms);
      for (int r = 0; r < ms.spin_count; ++r) {
        R e = ring_from_cq<R>(ms.eps_at(s, r));
        if (e.is_zero()) continue;
        twist = twist + FockOperator<R>::ladder(ms, ms.mode(k, r), true).scaled(e);
      }
      set.g.push_back((low + twist).scaled(inv_s2));
      set.h.push_back((low - twist).scaled(inv_s2 * R::i()));
      set.g_dag.push_back(set.g.back().dagger());
      set.h_dag.push_back(set.h.back().dagger());
    }
    return set;
  }
};

// Antilinear order-reversing adjoint with a spin transform folded in:
// a_s -> eps_{s,r} a+_r and a+_s -> -eps_{s,r} a_r; exactly involutive.
template <class R>
FockOperator<R> fermionic_adjoint(const FockOperator<R>& op) {
  const ModeSet& ms = *op.modes;
  FockOperator<R> out = FockOperator<R>::zero(ms);
  for (const auto& t : op.terms) {
    GrassmannElement<R> c = t.coeff.conj();
    if (word_parity(t.word)) {
      auto [even, odd] = c.parity_split();
      c = even - odd;
    }
    FockOperator<R> prod = FockOperator<R>::identity(ms).left_mul(c);
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
      int k = ms.k_of(it->mode), s = ms.s_of(it->mode);
      FockOperator<R> image = FockOperator<R>::zero(ms);
      for (int r = 0; r < ms.spin_count; ++r) {
        R e = ring_from_cq<R>(ms.eps_at(s, r));
        if (e.is_zero()) continue;
        if (!it->create)
          image = image + FockOperator<R>::ladder(ms, ms.mode(k, r), true).scaled(e);
        else
          image = image - FockOperator<R>::ladder(ms, ms.mode(k, r), false).scaled(e);
      }
      prod = prod * image;
    }
    out = out + prod;
  }
  return out;
}

// The bosonized family built from one spectral function:
//   a_op  = A* <> a        a_dag  = a+ <> A
//   ae_op = A eps<> a      ae_dag = a+ eps<> A*
//   r_op  = (1/2) a eps<> a,  r_dag = (1/2) a+ eps<> a+
//   s_op  = a+ <> a - omega/2
template <class R>
struct BosonizedFamily {
  const ModeSet* modes = nullptr;
  FockOperator<R> a_op, a_dag, ae_op, ae_dag, r_op, r_dag, s_op;

  static BosonizedFamily build(const ModeSet& ms, const ParameterFunction<R>& par) {
    par.check_odd();
    BosonizedFamily f;
    f.modes = &ms;
    f.a_op = FockOperator<R>::zero(ms);
    f.a_dag = f.ae_op = f.ae_dag = f.a_op;
    ParameterFunction<R> star = par.star();
    for (int m = 0; m < ms.modes(); ++m) {
      R w = R::from_rational(ms.weight(m));
      f.a_op = f.a_op + FockOperator<R>::ladder(ms, m, false).left_mul(star.at(m).scaled(w));
      f.a_dag = f.a_dag + FockOperator<R>::from_right_coeff(ms, {{m, true}}, par.at(m).scaled(w));
    }
    for (int k = 0; k < ms.k_count; ++k)
      for (int r = 0; r < ms.spin_count; ++r)
        for (int s = 0; s < ms.spin_count; ++s) {
          R e = ring_from_cq<R>(ms.eps_at(r, s));
          if (e.is_zero()) continue;
          R ew = e * R::from_rational(ms.weight_k(k));
          f.ae_op = f.ae_op + FockOperator<R>::ladder(ms, ms.mode(k, s), false)
                                  .left_mul(par.at(ms.mode(k, r)).scaled(ew));
          f.ae_dag = f.ae_dag + FockOperator<R>::from_right_coeff(
                                    ms, {{ms.mode(k, r), true}}, star.at(ms.mode(k, s)).scaled(ew));
        }
    f.r_op = pair_lowering(ms);
    f.r_dag = pair_raising(ms);
    f.s_op = number_sym(ms);
    return f;
  }

  static FockOperator<R> pair_lowering(const ModeSet& ms) {
    FockOperator<R> op = FockOperator<R>::zero(ms);
    for (int k = 0; k < ms.k_count; ++k)
      for (int r = 0; r < ms.spin_count; ++r)
        for (int s = 0; s < ms.spin_count; ++s) {
          R e = ring_from_cq<R>(ms.eps_at(r, s));
          if (e.is_zero()) continue;
          R half = e * R::from_rational(ms.weight_k(k) / 2);
          op = op + FockOperator<R>::from_term(
                        ms, GrassmannElement<R>::scalar(half),
                        {{ms.mode(k, r), false}, {ms.mode(k, s), false}});
        }
    return op;
  }

  static FockOperator<R> pair_raising(const ModeSet& ms) {
    FockOperator<R> op = FockOperator<R>::zero(ms);
    for (int k = 0; k < ms.k_count; ++k)
      for (int r = 0; r < ms.spin_count; ++r)
        for (int s = 0; s < ms.spin_count; ++s) {
          R e = ring_from_cq<R>(ms.eps_at(r, s));
          if (e.is_zero()) continue;
          R half = e * R::from_rational(ms.weight_k(k) / 2);
          op = op + FockOperator<R>::from_term(
                        ms, GrassmannElement<R>::scalar(half),
                        {{ms.mode(k, r), true}, {ms.mode(k, s), true}});
        }
    return op;
  }

  static FockOperator<R> number_sym(const ModeSet& ms) {
    FockOperator<R> op = FockOperator<R>::zero(ms);
    for (int m = 0; m < ms.modes(); ++m)
      op = op + FockOperator<R>::from_term(
                    ms, GrassmannElement<R>::scalar(R::from_rational(ms.weight(m))),
                    {{m, true}, {m, false}});
    return op - FockOperator<R>::identity(ms).scaled(R::from_rational(ms.omega() / 2));
  }
};

namespace detail {

template <class R>
CheckResult op_check(const std::string& name, const FockOperator<R>& lhs,
                     const FockOperator<R>& rhs) {
  bool ok = op_equal(lhs, rhs);
  return make_check(name, ok, ok ? "" : (lhs - rhs).text());
}

}  // namespace detail

// The canonical anticommutation relations over every mode pair, as exact
// operator identities on the full Fock space.
template <class R>
CheckList car_checks(const ModeSet& ms) {
  FockOperator<R> id = FockOperator<R>::identity(ms);
  FockOperator<R> zero = FockOperator<R>::zero(ms);
  bool ann = true, cre = true, mixed = true;
  for (int r = 0; r < ms.modes(); ++r)
    for (int s = 0; s < ms.modes(); ++s) {
      FockOperator<R> ar = FockOperator<R>::ladder(ms, r, false);
      FockOperator<R> as = FockOperator<R>::ladder(ms, s, false);
      FockOperator<R> cr = FockOperator<R>::ladder(ms, r, true);
      FockOperator<R> cs = FockOperator<R>::ladder(ms, s, true);
      ann = ann && op_is_zero(anticommutator(ar, as));
      cre = cre && op_is_zero(anticommutator(cr, cs));
      mixed = mixed && op_equal(anticommutator(ar, cs), r == s ? id : zero);
    }
  CheckList out;
  out.push_back(make_check("{a_r, a_s} = 0", ann));
  out.push_back(make_check("{a+_r, a+_s} = 0", cre));
  out.push_back(make_check("{a_r, a+_s} = delta_rs 1", mixed));
  return out;
}

// The anticommutator table for the Bogoliubov pairs, all modes, exact.
template <class R>
CheckList bogoliubov_table(const ModeSet& ms) {
  BogoliubovSet<R> b = BogoliubovSet<R>::build(ms);
  FockOperator<R> id = FockOperator<R>::identity(ms), zero = FockOperator<R>::zero(ms);
  CheckList out;
  bool gg = true, hh = true, gdgd = true, hdhd = true, gh = true, gdhd = true;
  bool ggd = true, hhd = true, ghd = true, hgd = true, gddg = true;
  for (int m = 0; m < ms.modes(); ++m)
    for (int n = 0; n < ms.modes(); ++n) {
      bool same_k = ms.k_of(m) == ms.k_of(n);
      R e = same_k ? ring_from_cq<R>(ms.eps_at(ms.s_of(m), ms.s_of(n))) : R::zero();
      FockOperator<R> ie = id.scaled(R::i() * e);
      FockOperator<R> de = (m == n) ? id : zero;
      gg = gg && op_equal(anticommutator(b.g[m], b.g[n]), zero);
      hh = hh && op_equal(anticommutator(b.h[m], b.h[n]), zero);
      gdgd = gdgd && op_equal(anticommutator(b.g_dag[m], b.g_dag[n]), zero);
      hdhd = hdhd && op_equal(anticommutator(b.h_dag[m], b.h_dag[n]), zero);
      gh = gh && op_equal(anticommutator(b.g[m], b.h[n]), ie);
      gdhd = gdhd && op_equal(anticommutator(b.g_dag[m], b.h_dag[n]), ie);
      ggd = ggd && op_equal(anticommutator(b.g[m], b.g_dag[n]), de);
      hhd = hhd && op_equal(anticommutator(b.h[m], b.h_dag[n]), de);
      ghd = ghd && op_equal(anticommutator(b.g[m], b.h_dag[n]), zero);
      hgd = hgd && op_equal(anticommutator(b.h[m], b.g_dag[n]), zero);
    }
  // daggered pair relations g+ = i eps h, h+ = -i eps g
  for (int m = 0; m < ms.modes(); ++m) {
    int k = ms.k_of(m), s = ms.s_of(m);
    FockOperator<R> gh_rel = FockOperator<R>::zero(ms), hg_rel = gh_rel;
    for (int r = 0; r < ms.spin_count; ++r) {
      R e = ring_from_cq<R>(ms.eps_at(s, r));
      if (e.is_zero()) continue;
      gh_rel = gh_rel + b.h[ms.mode(k, r)].scaled(R::i() * e);
      hg_rel = hg_rel - b.g[ms.mode(k, r)].scaled(R::i() * e);
    }
    gddg = gddg && op_equal(b.g_dag[m], gh_rel) && op_equal(b.h_dag[m], hg_rel);
  }
  out.push_back(make_check("{g,g} = {g+,g+} = 0", gg && gdgd));
  out.push_back(make_check("{h,h} = {h+,h+} = 0", hh && hdhd));
  out.push_back(make_check("{g_r,h_s} = {g+_r,h+_s} = i eps_rs", gh && gdhd));
  out.push_back(make_check("{g_r,g+_s} = {h_r,h+_s} = delta_rs", ggd && hhd));
  out.push_back(make_check("{g_r,h+_s} = {h_r,g+_s} = 0", ghd && hgd));
  out.push_back(make_check("g+ = i eps h, h+ = -i eps g", gddg));
  return out;
}

// The full commutator table of the bosonized family on two generic spectral
// functions: scalar-valued brackets, operator-valued brackets, and the number
// operator column.
template <class R>
CheckList commutator_table(const ModeSet& ms, const ParameterFunction<R>& A,
                           const ParameterFunction<R>& B) {
  BosonizedFamily<R> fa = BosonizedFamily<R>::build(ms, A);
  BosonizedFamily<R> fb = BosonizedFamily<R>::build(ms, B);
  FockOperator<R> id = FockOperator<R>::identity(ms), zero = FockOperator<R>::zero(ms);
  auto scalar_id = [&](const GrassmannElement<R>& v) { return id.left_mul(v); };
  CheckList out;
  out.push_back(detail::op_check("[A,B] = [A+,B+] = 0",
                                 commutator(fa.a_op, fb.a_op) + commutator(fa.a_dag, fb.a_dag),
                                 zero));
  out.push_back(detail::op_check("[A,B+] = A*<>B", commutator(fa.a_op, fb.a_dag),
                                 scalar_id(contract(A.star(), B))));
  out.push_back(detail::op_check("[Ae,B+] = A e<>B", commutator(fa.ae_op, fb.a_dag),
                                 scalar_id(contract_eps(A, B))));
  out.push_back(detail::op_check("[A,Be+] = A* e<>B*", commutator(fa.a_op, fb.ae_dag),
                                 scalar_id(contract_eps(A.star(), B.star()))));
  out.push_back(detail::op_check("[Ae,Be+] = -B*<>A", commutator(fa.ae_op, fb.ae_dag),
                                 scalar_id(-contract(B.star(), A))));
  out.push_back(detail::op_check("[A,R+] = Ae+", commutator(fa.a_op, fa.r_dag), fa.ae_dag));
  out.push_back(detail::op_check("[R,Ae+] = -A", commutator(fa.r_op, fa.ae_dag), -fa.a_op));
  out.push_back(detail::op_check("[R,A+] = Ae", commutator(fa.r_op, fa.a_dag), fa.ae_op));
  out.push_back(detail::op_check("[Ae,R+] = -A+", commutator(fa.ae_op, fa.r_dag), -fa.a_dag));
  out.push_back(detail::op_check("[R,R+] = -s", commutator(fa.r_op, fa.r_dag), -fa.s_op));
  out.push_back(detail::op_check("[A,s] = A", commutator(fa.a_op, fa.s_op), fa.a_op));
  out.push_back(detail::op_check("[Ae,s] = Ae", commutator(fa.ae_op, fa.s_op), fa.ae_op));
  out.push_back(detail::op_check("[R,s] = 2R", commutator(fa.r_op, fa.s_op),
                                 fa.r_op.scaled(R::from_int(2))));
  out.push_back(detail::op_check("[s,A+] = A+", commutator(fa.s_op, fa.a_dag), fa.a_dag));
  out.push_back(detail::op_check("[s,Ae+] = Ae+", commutator(fa.s_op, fa.ae_dag), fa.ae_dag));
  out.push_back(detail::op_check("[s,R+] = 2R+", commutator(fa.s_op, fa.r_dag),
                                 fa.r_dag.scaled(R::from_int(2))));
  return out;
}

namespace detail {

// Compare the map psi -> exp(X) Y exp(-X) psi against the operator rhs on all
// basis states and on theta-times basis states; conclusive for graded maps
// composed of term applications.
template <class R>
CheckResult conj_check(const std::string& name, const FockOperator<R>& x,
                       const FockOperator<R>& y, const FockOperator<R>& rhs,
                       const GrassmannElement<R>& theta) {
  const ModeSet& ms = *y.modes;
  for (Occ n = 0; n < (Occ(1) << ms.modes()); ++n)
    for (int graded = 0; graded < 2; ++graded) {
      FockState<R> psi = FockState<R>::basis(ms, n);
      if (graded) psi = psi.left_mul(theta);
      FockState<R> lhs = op_exp_apply(x, y.apply(op_exp_apply(-x, psi)));
      FockState<R> want = rhs.apply(psi);
      if (!(lhs == want))
        return make_check(name, false, (lhs - want).text());
    }
  return make_check(name, true);
}

// Same with exp(c s) sandwiches realized as exact base powers of the unit u.
template <class R>
CheckResult sandwich_check(const std::string& name, const R& base, const FockOperator<R>& y,
                           const FockOperator<R>& rhs, const GrassmannElement<R>& theta,
                           const Rational& omega) {
  const ModeSet& ms = *y.modes;
  for (Occ n = 0; n < (Occ(1) << ms.modes()); ++n)
    for (int graded = 0; graded < 2; ++graded) {
      FockState<R> psi = FockState<R>::basis(ms, n);
      if (graded) psi = psi.left_mul(theta);
      FockState<R> lhs =
          scale_by_number(y.apply(scale_by_number(psi, base.inv(), omega)), base, omega);
      FockState<R> want = rhs.apply(psi);
      if (!(lhs == want))
        return make_check(name, false, (lhs - want).text());
    }
  return make_check(name, true);
}

}  // namespace detail

// Every exponential-conjugation identity of the bosonized algebra, with the
// scalar c kept formal: a polynomial variable for the nilpotent-argument
// identities, an opaque exponential unit u = e^c for the number-operator
// sandwiches.
inline CheckList exp_conjugation_table(const ModeSet& ms, unsigned seed) {
  CheckList out;
  std::mt19937_64 rng(seed);
  {
    using R = EpsRing;
    Workspace ws;
    auto A = ParameterFunction<R>::random(ws, ms, "A", rng);
    auto B = ParameterFunction<R>::random(ws, ms, "B", rng);
    ws.fresh("th");
    GrassmannElement<R> theta = GrassmannElement<R>::generator(ws, ws.size() - 1);
    auto fa = BosonizedFamily<R>::build(ms, A);
    auto fb = BosonizedFamily<R>::build(ms, B);
    R c = R::eps();
    auto id = FockOperator<R>::identity(ms);
    auto cs = [&](const GrassmannElement<R>& v) { return id.left_mul(v.scaled(c)); };
    out.push_back(detail::conj_check<R>("e^{cA} B+ e^{-cA} = B+ + c A*<>B", fa.a_op.scaled(c),
                                        fb.a_dag, fb.a_dag + cs(contract(A.star(), B)), theta));
    out.push_back(detail::conj_check<R>("e^{cAe} B+ e^{-cAe} = B+ + c A e<>B",
                                        fa.ae_op.scaled(c), fb.a_dag,
                                        fb.a_dag + cs(contract_eps(A, B)), theta));
    out.push_back(detail::conj_check<R>("e^{cA} Be+ e^{-cA} = Be+ + c A* e<>B*",
                                        fa.a_op.scaled(c), fb.ae_dag,
                                        fb.ae_dag + cs(contract_eps(A.star(), B.star())), theta));
    out.push_back(detail::conj_check<R>("e^{cAe} Be+ e^{-cAe} = Be+ - c B*<>A",
                                        fa.ae_op.scaled(c), fb.ae_dag,
                                        fb.ae_dag - cs(contract(B.star(), A)), theta));
    out.push_back(detail::conj_check<R>("e^{cR} A+ e^{-cR} = A+ + c Ae", fa.r_op.scaled(c),
                                        fa.a_dag, fa.a_dag + fa.ae_op.scaled(c), theta));
    out.push_back(detail::conj_check<R>("e^{cR} Ae+ e^{-cR} = Ae+ - c A", fa.r_op.scaled(c),
                                        fa.ae_dag, fa.ae_dag - fa.a_op.scaled(c), theta));
    out.push_back(detail::conj_check<R>(
        "e^{cA} R+ e^{-cA} = R+ + c Ae+ + (c^2/2) A* e<>A*", fa.a_op.scaled(c), fa.r_dag,
        fa.r_dag + fa.ae_dag.scaled(c) +
            id.left_mul(contract_eps(A.star(), A.star()).scaled(c * c * R::from_rational(rat(1, 2)))),
        theta));
    out.push_back(detail::conj_check<R>(
        "e^{cAe} R+ e^{-cAe} = R+ - c A+ - (c^2/2) A e<>A", fa.ae_op.scaled(c), fa.r_dag,
        fa.r_dag - fa.a_dag.scaled(c) -
            id.left_mul(contract_eps(A, A).scaled(c * c * R::from_rational(rat(1, 2)))),
        theta));
    out.push_back(detail::conj_check<R>("e^{cR} R+ e^{-cR} = R+ - c s - c^2 R",
                                        fa.r_op.scaled(c), fa.r_dag,
                                        fa.r_dag - fa.s_op.scaled(c) - fa.r_op.scaled(c * c),
                                        theta));
    out.push_back(detail::conj_check<R>("e^{cA} s e^{-cA} = s + c A", fa.a_op.scaled(c), fa.s_op,
                                        fa.s_op + fa.a_op.scaled(c), theta));
    out.push_back(detail::conj_check<R>("e^{cAe} s e^{-cAe} = s + c Ae", fa.ae_op.scaled(c),
                                        fa.s_op, fa.s_op + fa.ae_op.scaled(c), theta));
    out.push_back(detail::conj_check<R>("e^{cR} s e^{-cR} = s + 2c R", fa.r_op.scaled(c),
                                        fa.s_op, fa.s_op + fa.r_op.scaled(c + c), theta));
  }
  {
    using R = ExpUnitRing;
    Workspace ws;
    auto A = ParameterFunction<R>::random(ws, ms, "A", rng);
    ws.fresh("th");
    GrassmannElement<R> theta = GrassmannElement<R>::generator(ws, ws.size() - 1);
    auto fa = BosonizedFamily<R>::build(ms, A);
    R u = R::unit(1), u2 = R::unit(2);
    Rational omega = ms.omega();
    out.push_back(detail::sandwich_check<R>("e^{cs} A+ e^{-cs} = e^c A+", u, fa.a_dag,
                                            fa.a_dag.scaled(u), theta, omega));
    out.push_back(detail::sandwich_check<R>("e^{cs} Ae+ e^{-cs} = e^c Ae+", u, fa.ae_dag,
                                            fa.ae_dag.scaled(u), theta, omega));
    out.push_back(detail::sandwich_check<R>("e^{cs} R+ e^{-cs} = e^{2c} R+", u, fa.r_dag,
                                            fa.r_dag.scaled(u2), theta, omega));
  }
  return out;
}

}  // namespace fphase
