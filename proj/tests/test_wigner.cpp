#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "fphase/wigner.hpp"

using namespace fphase;
using R = CQS2;
using G = GrassmannElement<R>;
using PF = ParameterFunction<R>;

namespace {

void require_all(const CheckList& cl) {
  for (const auto& c : cl) {
    INFO(c.name << (c.residual.empty() ? "" : " | " + c.residual));
    REQUIRE(c.pass);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Oriented functional measure.
// ---------------------------------------------------------------------------

TEST_CASE("oriented measure: the ascending product integrates to +1") {
  for (int kp = 1; kp <= 2; ++kp) {
    ModeSet ms = ModeSet::pauli_y(kp);
    Workspace ws;
    auto f = PF::fresh(ws, ms, "f");
    G prod = G::one();
    for (int m = 0; m < ms.modes(); ++m) prod = prod * f.at(m);
    REQUIRE(functional_integral(prod, f) == G::one());
  }
}

TEST_CASE("oriented measure: delta sifting carries no sign at even mode count") {
  ModeSet ms = ModeSet::pauli_y(1);
  Workspace ws;
  std::mt19937_64 rng(11);
  auto f = PF::fresh(ws, ms, "f");
  auto g = PF::random(ws, ms, "g", rng);
  // W[f] with terms of every parity
  G w = G::one() + f.at(0).scaled(R::from_gaussian(rat(1, 3), rat(2, 1))) +
        (f.at(0) * f.at(1)).scaled(R::i());
  std::map<GenId, G> to_g;
  auto ids = param_generator_ids(f);
  for (size_t m = 0; m < ids.size(); ++m) to_g[ids[m]] = g.at((int)m);
  G sifted = functional_integral(w * grassmann_delta(detail::param_sub(f, g)), f);
  REQUIRE(sifted == w.substitute(to_g));
}

TEST_CASE("oriented measure: exponential kernel integrates to the orthogonality "
          "constant times a delta") {
  ModeSet ms = ModeSet::pauli_y(1);
  Workspace ws;
  R lam = orthogonality_constant_formula<R>(ms);
  auto a = PF::fresh(ws, ms, "a");
  auto b = PF::fresh(ws, ms, "b");
  G val = functional_integral(contract(a, b).exp_nilpotent(), a).scaled(lam.inv());
  REQUIRE(val == grassmann_delta(b).scaled(lam));
}

// ---------------------------------------------------------------------------
// Orthogonality constant.
// ---------------------------------------------------------------------------

TEST_CASE("completeness integral: measured constant matches (-i)^{Omega/2} for "
          "M = 2 and M = 4, both bases") {
  for (int kp = 1; kp <= 2; ++kp) {
    ModeSet ms = ModeSet::pauli_y(kp);
    R formula = orthogonality_constant_formula<R>(ms);
    REQUIRE(measure_orthogonality_constant<R>(ms, BogoKind::g) == formula);
    REQUIRE(measure_orthogonality_constant<R>(ms, BogoKind::g_bar) == formula);
  }
}

TEST_CASE("completeness integral rejects non-unit weights") {
  ModeSet ms = ModeSet::pauli_y(1);
  ms.weights[0] = Rational(2);
  ms.validate();
  REQUIRE_THROWS_AS(measure_orthogonality_constant<R>(ms), Error);
  REQUIRE_THROWS_AS(orthogonality_constant_formula<R>(ms), Error);
}

// ---------------------------------------------------------------------------
// Full check suites at M = 2.
// ---------------------------------------------------------------------------

TEST_CASE("quadrature bases: eigen-structure, adjoints, unbiasedness, "
          "orthogonality, spectral resolutions (M = 2)") {
  std::mt19937_64 rng(101);
  require_all(quadrature_basis_checks<R>(ModeSet::pauli_y(1), rng));
}

TEST_CASE("quadrature bases at M = 4") {
  std::mt19937_64 rng(202);
  require_all(quadrature_basis_checks<R>(ModeSet::pauli_y(2), rng));
}

TEST_CASE("completeness and identity-resolution sandwiches (M = 2)") {
  require_all(completeness_checks<R>(ModeSet::pauli_y(1)));
}

TEST_CASE("phase-space symbols of elementary operators (M = 2)") {
  std::mt19937_64 rng(303);
  require_all(wigner_symbol_checks<R>(ModeSet::pauli_y(1), rng));
}

TEST_CASE("Weyl reconstruction roundtrips (M = 2)") {
  std::mt19937_64 rng(404);
  require_all(weyl_checks<R>(ModeSet::pauli_y(1), rng));
}

TEST_CASE("functional Fourier and characteristic functional (M = 2)") {
  std::mt19937_64 rng(505);
  require_all(fourier_checks<R>(ModeSet::pauli_y(1), rng));
}

TEST_CASE("double functional Fourier transform is the identity up to six modes") {
  for (int kp = 2; kp <= 3; ++kp) {
    std::mt19937_64 rng(606 + kp);
    require_all(fourier_checks<R>(ModeSet::pauli_y(kp), rng));
  }
}

TEST_CASE("star products match operator products (M = 2)") {
  std::mt19937_64 rng(707);
  require_all(star_checks<R>(ModeSet::pauli_y(1), rng));
}

TEST_CASE("phase-space trace integrals (M = 2)") {
  std::mt19937_64 rng(808);
  require_all(trace_checks<R>(ModeSet::pauli_y(1), rng));
}

// ---------------------------------------------------------------------------
// Targeted facts backing the suites.
// ---------------------------------------------------------------------------

TEST_CASE("Weyl reconstruction is exact on each elementary operator class") {
  ModeSet ms = ModeSet::pauli_y(1);
  R lam = orthogonality_constant_formula<R>(ms);
  auto roundtrip = [&](const FockOperator<R>& op) {
    Workspace ws;
    PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
    auto w = wigner_transform(ws, ps, op, lam);
    return op_equal(weyl_transform(ws, ps, w, lam), op);
  };
  REQUIRE(roundtrip(FockOperator<R>::ladder(ms, 0, true)));
  REQUIRE(roundtrip(FockOperator<R>::ladder(ms, 0, false)));
  REQUIRE(roundtrip(FockOperator<R>::ladder(ms, 1, true)));
  REQUIRE(roundtrip(FockOperator<R>::ladder(ms, 0, true) *
                    FockOperator<R>::ladder(ms, 0, false)));
  REQUIRE(roundtrip(matrix_unit<R>(ms, 1, 3)));
  REQUIRE(roundtrip(matrix_unit<R>(ms, 0, 3)));
}

TEST_CASE("phase-space trace of occupation projectors alternates with parity") {
  // The trace integral realizes the parity-weighted trace: the plain-trace
  // reading would need the Berezin volume of the constant functional to be
  // 2^M, but that volume vanishes identically.
  ModeSet ms = ModeSet::pauli_y(1);
  R lam = measure_orthogonality_constant<R>(ms);
  Workspace ws;
  PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
  std::vector<R> expect = {R::one(), R::from_int(-1), R::from_int(-1), R::one()};
  for (Occ n = 0; n < 4; ++n) {
    auto w = wigner_transform(ws, ps, matrix_unit<R>(ms, n, n), lam);
    REQUIRE(phase_space_trace(ws, ps, w, lam) == expect[n]);
  }
}

TEST_CASE("matrix units act exactly on the occupation basis") {
  ModeSet ms = ModeSet::pauli_y(1);
  for (Occ a = 0; a < 4; ++a)
    for (Occ b = 0; b < 4; ++b) {
      FockOperator<R> u = matrix_unit<R>(ms, a, b);
      for (Occ n = 0; n < 4; ++n) {
        FockState<R> img = u.apply(FockState<R>::basis(ms, n));
        if (n == b) {
          REQUIRE(img == FockState<R>::basis(ms, a));
        } else {
          REQUIRE(img.is_zero());
        }
      }
    }
}

TEST_CASE("star2 composes to star3 on symbols with mixed parity") {
  ModeSet ms = ModeSet::pauli_y(1);
  R lam = orthogonality_constant_formula<R>(ms);
  Workspace ws;
  PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
  FockOperator<R> A = FockOperator<R>::ladder(ms, 0, true);
  FockOperator<R> B = FockOperator<R>::ladder(ms, 1, false);
  FockOperator<R> C = FockOperator<R>::ladder(ms, 0, true) *
                      FockOperator<R>::ladder(ms, 1, true);
  auto wa = wigner_transform(ws, ps, A, lam);
  auto wb = wigner_transform(ws, ps, B, lam);
  auto wc = wigner_transform(ws, ps, C, lam);
  auto lhs = star2(ws, ps, star2(ws, ps, wa, wb, lam), wc, lam);
  auto rhs = star3(ws, ps, wa, wb, wc, lam);
  REQUIRE(lhs.value == rhs.value);
  REQUIRE(lhs.value == wigner_transform(ws, ps, A * B * C, lam).value);
}

TEST_CASE("full phase-space layer at M = 2 under a second seed") {
  std::mt19937_64 rng(20260815);
  require_all(wigner_layer_checks<R>(ModeSet::pauli_y(1), rng));
}
