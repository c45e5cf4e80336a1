#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "fphase/scenario.hpp"

using namespace fphase;
using R = CQS2;
using G = GrassmannElement<R>;

// ---------------------------------------------------------------------------
// Ring and element text roundtrips.
// ---------------------------------------------------------------------------

TEST_CASE("coefficients with both parts print and reparse") {
  // regression: a sum like 1+(-4)i must reparse past the inner sign
  for (auto [re, im] : {std::pair{1LL, -4LL}, {0LL, 3LL}, {-2LL, 0LL}, {7LL, 5LL}}) {
    CQ c = CQ::from_gaussian(rat(re), rat(im));
    TextCursor cur(std::string_view{});
    std::string t = c.text();
    TextCursor c2(t);
    REQUIRE(CQ::parse(c2) == c);
    REQUIRE(c2.done());
  }
  CQS2 z = CQS2::from_gaussian(rat(1), rat(-4)) + CQS2::sqrt2().inv();
  std::string t = z.text();
  TextCursor cur(t);
  REQUIRE(CQS2::parse(cur) == z);
  REQUIRE(cur.done());
}

TEST_CASE("element with three generators roundtrips") {
  Workspace ws;
  auto ids = ws.fresh_set("t", 3, GenClass::aux);
  G e = G::generator(ws, ids[0]) * G::generator(ws, ids[1]) -
        G::generator(ws, ids[2]).scaled(R::from_rational(rat(1, 2)));
  REQUIRE(G::parse(ws, e.text()) == e);
  REQUIRE(G::parse(ws, G().text()) == G());
}

TEST_CASE("operator text roundtrips over the exact rings") {
  ModeSet ms = ModeSet::pauli_y(1);
  Workspace ws;
  std::mt19937_64 rng(11);
  for (int s = 0; s < 20; ++s) {
    FockOperator<R> op = random_fock_operator<R>(ms, rng, 4);
    REQUIRE(op_equal(parse_operator<R>(ws, ms, op.text()), op));
  }
  // identity term (empty word) and zero
  FockOperator<R> id = FockOperator<R>::identity(ms).scaled(R::i());
  REQUIRE(op_equal(parse_operator<R>(ws, ms, id.text()), id));
  REQUIRE(op_is_zero(parse_operator<R>(ws, ms, FockOperator<R>::zero(ms).text())));
  // a Laurent-coefficient operator
  FockOperator<EpsRing> ep =
      FockOperator<EpsRing>::ladder(ms, 0, true).scaled(EpsRing::eps().inv() + EpsRing::one());
  Workspace ws2;
  REQUIRE(op_equal(parse_operator<EpsRing>(ws2, ms, ep.text()), ep));
}

TEST_CASE("rendered pair-basis state roundtrips") {
  ModeSet ms = ModeSet::pauli_y(1);
  Workspace ws;
  auto f = ParameterFunction<R>::fresh(ws, ms, "f");
  FockState<R> st = render_right<R>(ms, BogoKind::g, f);
  REQUIRE(parse_state<R>(ws, ms, st.text()) == st);
  REQUIRE(parse_state<R>(ws, ms, "0").is_zero());
}

TEST_CASE("float operator text reparses within 1e-12") {
  ModeSet ms = ModeSet::pauli_y(1);
  Workspace ws;
  FockOperator<Cf64> op = FockOperator<Cf64>::ladder(ms, 0, true).scaled(Cf64(std::complex<double>{1.0 / 3.0, 0.0})) +
                          FockOperator<Cf64>::identity(ms).scaled(Cf64(std::complex<double>{0.0, 0.1}));
  FockOperator<Cf64> back = parse_operator<Cf64>(ws, ms, op.text());
  FockState<Cf64> d = (op - back).apply(FockState<Cf64>::vacuum(ms));
  for (const auto& [n, amp] : d.amp)
    REQUIRE(std::abs(amp.coefficient(Mono(0)).v) < 1e-12);
}

TEST_CASE("phase-space functional text roundtrips") {
  ModeSet ms = ModeSet::pauli_y(1);
  Workspace ws;
  PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
  const R lam = orthogonality_constant_formula<R>(ms);
  std::mt19937_64 rng(5);
  for (int s = 0; s < 5; ++s) {
    PhaseSpaceFunctional<R> w = wigner_transform(ws, ps, random_fock_operator<R>(ms, rng, 3), lam);
    PhaseSpaceFunctional<R> back = parse_functional<R>(ws, functional_text(w));
    REQUIRE(back.value == w.value);
    REQUIRE(back.q_vars == w.q_vars);
    REQUIRE(back.p_vars == w.p_vars);
  }
}

TEST_CASE("parse errors carry a location") {
  ModeSet ms = ModeSet::pauli_y(1);
  Workspace ws;
  auto expect_parse_error = [&](auto fn) {
    try {
      fn();
      FAIL("expected a parse error");
    } catch (const Error& e) {
      REQUIRE(e.kind == ErrorKind::parse);
      REQUIRE(std::string(e.what()).find("offset") != std::string::npos);
    }
  };
  expect_parse_error([&] { parse_state<R>(ws, ms, "[(1)|01>"); });
  expect_parse_error([&] { parse_state<R>(ws, ms, "[(1)]|01> junk"); });
  expect_parse_error([&] { parse_operator<R>(ws, ms, "[(1)] a+9"); });
  expect_parse_error([&] { parse_operator<R>(ws, ms, "[(1] a+1"); });
  expect_parse_error([&] { parse_functional<R>(ws, "W{q: g0; p: g1; value: (1)"); });
  expect_parse_error([&] { G::parse(ws, "(1) g99"); });
}

// ---------------------------------------------------------------------------
// Scenario runs.
// ---------------------------------------------------------------------------

TEST_CASE("default scenario: every exact suite passes on two modes") {
  Scenario sc;
  RunReport rep = run_scenario(sc);
  REQUIRE(rep.all_pass());
  REQUIRE(rep.failed == 0);
  REQUIRE(rep.scenario.suites ==
          std::vector<std::string>{"car", "bogoliubov", "bosonized-commutators", "exp-conjugation",
                                   "eigenstates", "majorana", "disentangle", "overlaps",
                                   "quadrature", "wigner", "fourier", "star"});
  for (const CheckRecord& r : rep.checks) {
    REQUIRE(r.pass);
    REQUIRE(r.residual.empty());
  }
}

TEST_CASE("float ring runs the ODE suite with small residuals") {
  Scenario sc;
  sc.ring = "float";
  RunReport rep = run_scenario(sc);
  REQUIRE(rep.scenario.suites == std::vector<std::string>{"h-odes"});
  REQUIRE(rep.checks.size() == 4);
  for (const CheckRecord& r : rep.checks) {
    REQUIRE(r.pass);
    REQUIRE(r.residual.find("max") != std::string::npos);
  }
}

TEST_CASE("laurent ring runs the regulated suite and reports the order table") {
  Scenario sc;
  sc.ring = "laurent-eps";
  sc.suites = {"delta"};
  RunReport rep = run_scenario(sc);
  REQUIRE(rep.all_pass());
  REQUIRE(!rep.checks.empty());
  for (const CheckRecord& r : rep.checks) {
    REQUIRE(r.laurent_orders.find("Lambda order e^{-2}") != std::string::npos);
    REQUIRE(r.laurent_orders.find("projection kernel leading order e^{-2}") != std::string::npos);
  }
}

TEST_CASE("scenario config errors") {
  auto expect_config = [](Scenario sc, const char* what) {
    try {
      run_scenario(sc);
      FAIL("expected a config error for " << what);
    } catch (const Error& e) {
      REQUIRE(e.kind == ErrorKind::config);
    }
  };
  Scenario sc;
  sc.spins = 3;
  expect_config(sc, "three spin components without a pairing matrix");
  sc = Scenario{};
  sc.k_points = 7;
  expect_config(sc, "mode guard");
  sc = Scenario{};
  sc.suites = {"no-such-suite"};
  expect_config(sc, "unknown suite");
  sc = Scenario{};
  sc.suites = {"delta"};
  expect_config(sc, "regulated suite over the default ring");
  sc = Scenario{};
  sc.ring = "decimal";
  expect_config(sc, "unknown ring");
  sc = Scenario{};
  sc.weights = {rat(1), rat(1)};
  expect_config(sc, "weight count mismatch");
  sc = Scenario{};
  sc.spins = 1;
  sc.suites = {"bogoliubov"};
  expect_config(sc, "pairing suite without pairing");
}

TEST_CASE("worker cap comes from the environment") {
  setenv("FPHASE_WORKERS", "1", 1);
  Scenario sc;
  sc.suites = {"car", "majorana"};
  RunReport one = run_scenario(sc);
  REQUIRE(one.all_pass());
  setenv("FPHASE_WORKERS", "zebra", 1);
  try {
    run_scenario(sc);
    FAIL("expected a config error for a malformed worker cap");
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrorKind::config);
  }
  unsetenv("FPHASE_WORKERS");
}

TEST_CASE("reports are bit-for-bit reproducible for a fixed seed") {
  Scenario sc;
  sc.seed = 42;
  std::string first = canonical_report(run_scenario(sc));
  std::string second = canonical_report(run_scenario(sc));
  REQUIRE(first == second);
  setenv("FPHASE_WORKERS", "1", 1);
  std::string serial = canonical_report(run_scenario(sc));
  unsetenv("FPHASE_WORKERS");
  REQUIRE(serial == first);
}

TEST_CASE("scenario json roundtrip and errors") {
  Scenario sc;
  sc.k_points = 2;
  sc.spins = 2;
  sc.weights = {rat(1), rat(3, 2)};
  sc.ring = "rational";
  sc.suites = {"car"};
  sc.seed = 77;
  Scenario back = scenario_from_json(scenario_to_json(sc));
  REQUIRE(back.k_points == sc.k_points);
  REQUIRE(back.spins == sc.spins);
  REQUIRE(back.weights == sc.weights);
  REQUIRE(back.ring == sc.ring);
  REQUIRE(back.suites == sc.suites);
  REQUIRE(back.seed == sc.seed);

  Scenario mixed = scenario_from_json_text(
      R"({"modes":{"k_points":2,"spins":2,"weights":["3/2",1]},"seed":5})");
  REQUIRE(mixed.weights == std::vector<Rational>{rat(3, 2), rat(1)});
  REQUIRE(mixed.seed == 5);

  try {
    scenario_from_json_text("{broken");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrorKind::parse);
  }
  try {
    scenario_from_json_text(R"({"rng":3})");
    FAIL("expected a config error");
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrorKind::config);
  }
  try {
    scenario_from_json_text(R"({"seed":"soon"})");
    FAIL("expected a config error");
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrorKind::config);
  }
}

TEST_CASE("golden report matches the committed file") {
  Scenario sc;  // defaults: one k point, two spins, rational-sqrt2, seed 1
  RunReport rep = run_scenario(sc);
  std::ifstream in(std::string(FPHASE_GOLDEN_DIR) + "/default_m2.json", std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  REQUIRE(canonical_report(rep) == buf.str());
}

TEST_CASE("report file is written when requested") {
  Scenario sc;
  sc.suites = {"car"};
  sc.output = "scenario_report_tmp.json";
  RunReport rep = run_scenario(sc);
  REQUIRE(rep.all_pass());
  std::ifstream in(sc.output);
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  REQUIRE(j["summary"]["all_pass"].get<bool>());
  REQUIRE(j["checks"].size() == 3);
  REQUIRE(j["checks"][0].contains("suite_wall_ms"));
  std::remove(sc.output.c_str());
}
