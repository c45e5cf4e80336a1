// Command-line front end: scenario verification runs plus small one-off
// computations (overlap closed forms, phase-space symbols, star products).
//
// Exit codes: 0 all requested checks pass, 1 at least one check fails,
// 2 configuration or input errors.

#include <cstdint>
#include <iostream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "fphase/scenario.hpp"

namespace {

using namespace fphase;

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::registry_mismatch: return "registry mismatch";
    case ErrorKind::ring_mismatch: return "ring mismatch";
    case ErrorKind::nilpotency: return "nilpotency";
    case ErrorKind::parity: return "parity";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::parse: return "parse";
    case ErrorKind::config: return "config";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

// "--modes K,S": number of paired momenta and spin components per momentum.
void apply_modes(Scenario& sc, const std::string& modes) {
  TextCursor cur{std::string_view(modes)};
  long long k = cur.integer();
  cur.skip_ws();
  cur.expect(',');
  long long s = cur.integer();
  cur.skip_ws();
  if (!cur.done()) cur.fail_here("unexpected trailing input");
  sc.k_points = static_cast<int>(k);
  sc.spins = static_cast<int>(s);
}

std::vector<Rational> parse_weight_list(const std::string& text) {
  std::vector<Rational> out;
  std::string_view rest = text;
  for (;;) {
    size_t comma = rest.find(',');
    out.push_back(parse_rational_full(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

int run_verify(const Scenario& sc) {
  RunReport rep = run_scenario(sc);
  std::cout << report_text(rep);
  if (!sc.output.empty()) std::cout << "report written to " << sc.output << "\n";
  return rep.all_pass() ? 0 : 1;
}

int run_suite_listing() {
  for (const SuiteSpec& s : suite_registry()) {
    std::string rings;
    for (const auto& r : s.rings) rings += (rings.empty() ? "" : ", ") + r;
    std::cout << s.name << (s.needs_pairing ? "  [needs spins = 2]" : "") << "\n    " << s.summary
              << "\n    rings: " << rings << "\n";
  }
  return 0;
}

int run_overlap(int c1, int c2, const std::string& t_text) {
  using R = CQS2;
  if ((c1 != 1 && c1 != -1) || (c2 != 1 && c2 != -1))
    fail(ErrorKind::config, "pair signs c1, c2 must be +1 or -1");
  const Rational t_rat = parse_rational_full(t_text);
  const R t = R::from_rational(t_rat);
  const HSystem<R> h = h_closed_form<R>(c1, c2, t);
  std::cout << "pair signs c1 = " << (c1 > 0 ? "+1" : "-1") << ", c2 = " << (c2 > 0 ? "+1" : "-1")
            << ", t = " << rat_text(t_rat) << "\n";
  std::cout << "h0 coefficients: A*<>B: " << h.h0_ab.text() << "; B eps<>B: " << h.h0_bb.text()
            << "; A* eps<>A*: " << h.h0_aa.text() << "\n";
  std::cout << "h1 = " << h.h1.text() << "  h2 = " << h.h2.text() << "  h3 = " << h.h3.text()
            << "\n";
  std::cout << "h5 = " << h.h5.text() << "  h6 = " << h.h6.text() << "  h7 = " << h.h7.text()
            << "\n";
  std::cout << "exp(h4) = 1/(" << h.denom.text() << ")\n";

  // Cross-check the closed form against the directly expanded vacuum
  // sandwich on the smallest paired mode set.
  ModeSet ms = ModeSet::pauli_y(1);
  Workspace ws;
  std::mt19937_64 rng(20260815);
  auto As = ParameterFunction<R>::random(ws, ms, "A", rng);
  auto B = ParameterFunction<R>::random(ws, ms, "B", rng);
  const bool match =
      overlap_direct(ms, c1, c2, As, B, t) == overlap_analytic(ms, c1, c2, As, B, t);
  std::cout << "closed form equals direct vacuum sandwich (2 modes, random smearings): "
            << (match ? "yes" : "NO") << "\n";
  return match ? 0 : 1;
}

int run_wigner(const std::string& modes, const std::string& expr) {
  using R = CQS2;
  Scenario sc;
  apply_modes(sc, modes);
  ModeSet ms = scenario_modes(sc);
  Workspace ws;
  FockOperator<R> op = parse_operator<R>(ws, ms, expr);
  PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
  const R lam = orthogonality_constant_formula<R>(ms);
  PhaseSpaceFunctional<R> w = wigner_transform(ws, ps, op, lam);
  std::cout << "operator: " << op.text() << "\n";
  std::cout << "symbol:   " << functional_text(w) << "\n";
  const bool match = op_equal(weyl_transform(ws, ps, w, lam), op);
  std::cout << "inverse transform reproduces the operator: " << (match ? "yes" : "NO") << "\n";
  return match ? 0 : 1;
}

int run_star(const std::string& modes, const std::string& ops_text) {
  using R = CQS2;
  std::vector<std::string> exprs;
  {
    std::string_view rest = ops_text;
    for (;;) {
      size_t comma = rest.find(',');
      exprs.push_back(std::string(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  if (exprs.size() != 2 && exprs.size() != 3)
    fail(ErrorKind::config, "--ops takes two or three comma-separated operators");
  Scenario sc;
  apply_modes(sc, modes);
  ModeSet ms = scenario_modes(sc);
  Workspace ws;
  std::vector<FockOperator<R>> ops;
  for (const auto& e : exprs) ops.push_back(parse_operator<R>(ws, ms, e));
  PhaseSpace<R> ps = PhaseSpace<R>::allocate(ws, ms);
  const R lam = orthogonality_constant_formula<R>(ms);
  std::vector<PhaseSpaceFunctional<R>> ws_syms;
  for (size_t i = 0; i < ops.size(); ++i) {
    ws_syms.push_back(wigner_transform(ws, ps, ops[i], lam));
    std::cout << "symbol " << i + 1 << ": " << functional_text(ws_syms[i]) << "\n";
  }
  PhaseSpaceFunctional<R> prod =
      exprs.size() == 2 ? star2(ws, ps, ws_syms[0], ws_syms[1], lam)
                        : star3(ws, ps, ws_syms[0], ws_syms[1], ws_syms[2], lam);
  std::cout << "star product: " << functional_text(prod) << "\n";
  FockOperator<R> op_prod = ops[0] * ops[1];
  if (exprs.size() == 3) op_prod = op_prod * ops[2];
  const bool match = prod.value == wigner_transform(ws, ps, op_prod, lam).value;
  std::cout << "equals the symbol of the operator product: " << (match ? "yes" : "NO") << "\n";
  return match ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact fermionic phase-space verification engine"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run check suites and report");
  std::vector<std::string> opt_suites;
  std::string opt_modes, opt_weights, opt_ring, opt_out, opt_config;
  std::uint64_t opt_seed = 0;
  verify->add_option("--suite", opt_suites, "suite name (repeatable; default: all for the ring)");
  verify->add_option("--modes", opt_modes, "mode set as K,S (k points, spins); default 1,2");
  verify->add_option("--weights", opt_weights, "per-k-point weights, comma-separated rationals");
  verify->add_option("--ring", opt_ring,
                     "coefficient ring: rational, rational-sqrt2, laurent-eps, float");
  verify->add_option("--seed", opt_seed, "seed for the randomized checks");
  verify->add_option("--out", opt_out, "write the JSON report to this file");
  verify->add_option("--config", opt_config, "JSON scenario file; explicit flags override it");

  // overlap
  auto* overlap = app.add_subcommand("overlap", "closed-form overlap coefficients at given signs");
  int opt_c1 = 1, opt_c2 = 1;
  std::string opt_t = "1/2";
  overlap->add_option("--c1", opt_c1, "left pair sign, +1 or -1")->required();
  overlap->add_option("--c2", opt_c2, "right pair sign, +1 or -1")->required();
  overlap->add_option("--t", opt_t, "coupling as a rational, e.g. 1/3")->required();

  // wigner
  auto* wigner = app.add_subcommand("wigner", "phase-space symbol of an operator");
  std::string opt_op, opt_wmodes = "1,2";
  wigner->add_option("--op", opt_op, "operator text, e.g. \"[(1)] a+1 a2\"")->required();
  wigner->add_option("--modes", opt_wmodes, "mode set as K,S; default 1,2");

  // star
  auto* star = app.add_subcommand("star", "star product of two or three operator symbols");
  std::string opt_ops, opt_smodes = "1,2";
  star->add_option("--ops", opt_ops, "comma-separated operator texts")->required();
  star->add_option("--modes", opt_smodes, "mode set as K,S; default 1,2");

  // suites
  app.add_subcommand("suites", "list the available check suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("verify")) {
      Scenario sc;
      if (!opt_config.empty()) sc = load_scenario_file(opt_config);
      if (!opt_suites.empty()) sc.suites = opt_suites;
      if (!opt_modes.empty()) apply_modes(sc, opt_modes);
      if (!opt_weights.empty()) sc.weights = parse_weight_list(opt_weights);
      if (!opt_ring.empty()) sc.ring = opt_ring;
      if (verify->count("--seed")) sc.seed = opt_seed;
      if (!opt_out.empty()) sc.output = opt_out;
      return run_verify(sc);
    }
    if (app.got_subcommand("overlap")) return run_overlap(opt_c1, opt_c2, opt_t);
    if (app.got_subcommand("wigner")) return run_wigner(opt_wmodes, opt_op);
    if (app.got_subcommand("star")) return run_star(opt_smodes, opt_ops);
    if (app.got_subcommand("suites")) return run_suite_listing();
  } catch (const Error& e) {
    std::cerr << "error (" << kind_name(e.kind) << "): " << e.what() << "\n";
    return 2;
  }
  return 0;
}
