#pragma once

// Scenario layer: named check suites over a configurable mode set, ring, and
// seed, run through a small work pool and assembled into a deterministic
// report.  Reports for exact rings are bit-for-bit reproducible for a fixed
// seed once timing fields are stripped (see report_json / canonical_report).

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fphase/serialize.hpp"

namespace fphase {

inline constexpr const char* kEngineName = "fphase";
inline constexpr const char* kEngineVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Configuration.

struct Scenario {
  int k_points = 1;
  int spins = 2;                   // 2 -> pauli-y pairing, 1 -> no pairing
  std::vector<Rational> weights;   // per k point; empty means all 1
  std::string ring = "rational-sqrt2";
  std::vector<std::string> suites; // empty means every suite the ring supports
  std::uint64_t seed = 1;
  std::string output;              // optional report file (JSON)
};

enum class RingKind { rational, rational_sqrt2, laurent_eps, floating };

inline const std::vector<std::pair<std::string, RingKind>>& ring_names() {
  static const std::vector<std::pair<std::string, RingKind>> t = {
      {"rational", RingKind::rational},
      {"rational-sqrt2", RingKind::rational_sqrt2},
      {"laurent-eps", RingKind::laurent_eps},
      {"float", RingKind::floating},
  };
  return t;
}

inline RingKind ring_from_name(const std::string& name) {
  for (const auto& [n, k] : ring_names())
    if (n == name) return k;
  fail(ErrorKind::config, "unknown ring \"" + name +
                              "\" (expected rational, rational-sqrt2, laurent-eps, or float)");
}

inline Rational parse_rational_full(std::string_view s) {
  TextCursor cur(s);
  Rational r = rat_parse(cur);
  cur.skip_ws();
  if (!cur.done()) cur.fail_here("unexpected trailing input");
  return r;
}

// ---------------------------------------------------------------------------
// Report.

struct CheckRecord {
  std::string suite;
  std::string anchor;    // the identity the check verifies, stated as a formula
  bool pass = false;
  std::string residual;  // empty on exact passes; diagnostic summary otherwise
  std::string laurent_orders;  // order table, only for the regulated suite
  double suite_wall_ms = 0;    // wall clock of the suite this record belongs to
};

struct RunReport {
  Scenario scenario;  // with the resolved suite list
  std::vector<CheckRecord> checks;
  int passed = 0;
  int failed = 0;
  double wall_ms = 0;
  bool all_pass() const { return failed == 0; }
};

// ---------------------------------------------------------------------------
// Suite registry.

struct SuiteResult {
  CheckList checks;
  std::string laurent_orders;
};

struct SuiteSpec {
  std::string name;
  std::string summary;
  std::vector<std::string> rings;  // ring names the suite supports
  bool needs_pairing;              // requires the built-in spin pairing (spins = 2)
  std::function<SuiteResult(RingKind, const ModeSet&, std::uint64_t)> run;
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t suite_seed(std::uint64_t scenario_seed, std::string_view suite) {
  return scenario_seed ^ fnv1a(suite);
}

// Measured order table for the regulated layer: the projection kernel's
// leading Laurent order next to the divergent constant it must cancel.
inline std::string laurent_order_table(const ModeSet& ms) {
  Workspace ws;
  auto f = ParameterFunction<EpsRing>::fresh(ws, ms, "z");
  const int kernel_lo = min_laurent_order(regularized_delta(ms, f));
  const int lambda_lo = lambda_constant(ms.omega()).order();
  return "projection kernel leading order e^{" + std::to_string(kernel_lo) +
         "}; Lambda order e^{" + std::to_string(lambda_lo) + "}; finite constant order e^{0}";
}

}  // namespace detail

inline const std::vector<SuiteSpec>& suite_registry() {
  using R2 = CQS2;
  static const std::vector<SuiteSpec> reg = {
      {"car", "canonical anticommutation relations over every mode pair",
       {"rational", "rational-sqrt2"}, false,
       [](RingKind rk, const ModeSet& ms, std::uint64_t) -> SuiteResult {
         if (rk == RingKind::rational) return {car_checks<CQ>(ms), ""};
         return {car_checks<R2>(ms), ""};
       }},
      {"bogoliubov", "anticommutator table of the paired-mode operator family",
       {"rational-sqrt2"}, true,
       [](RingKind, const ModeSet& ms, std::uint64_t) -> SuiteResult {
         return {bogoliubov_table<R2>(ms), ""};
       }},
      {"bosonized-commutators", "commutators of the smeared bilinear family, random smearings",
       {"rational", "rational-sqrt2"}, true,
       [](RingKind rk, const ModeSet& ms, std::uint64_t seed) -> SuiteResult {
         std::mt19937_64 rng(seed);
         if (rk == RingKind::rational) {
           Workspace ws;
           auto A = ParameterFunction<CQ>::random(ws, ms, "A", rng);
           auto B = ParameterFunction<CQ>::random(ws, ms, "B", rng);
           return {commutator_table(ms, A, B), ""};
         }
         Workspace ws;
         auto A = ParameterFunction<R2>::random(ws, ms, "A", rng);
         auto B = ParameterFunction<R2>::random(ws, ms, "B", rng);
         return {commutator_table(ms, A, B), ""};
       }},
      {"exp-conjugation", "exponential conjugation moves the bilinear family as stated",
       {"rational", "rational-sqrt2", "laurent-eps"}, true,
       [](RingKind, const ModeSet& ms, std::uint64_t seed) -> SuiteResult {
         return {exp_conjugation_table(ms, static_cast<unsigned>(seed & 0xffffffffu)), ""};
       }},
      {"eigenstates", "eigen-relations, adjoint pairing, spin transport, and solution structure",
       {"rational-sqrt2"}, true,
       [](RingKind, const ModeSet& ms, std::uint64_t seed) -> SuiteResult {
         std::mt19937_64 rng(seed);
         SuiteResult r;
         {
           Workspace ws;
           r.checks = eigen_equation_checks<R2>(ws, ms, rng);
         }
         {
           Workspace ws;
           CheckList more = adjoint_relation_checks<R2>(ws, ms);
           r.checks.insert(r.checks.end(), more.begin(), more.end());
         }
         {
           Workspace ws;
           CheckList more = spin_transform_checks<R2>(ws, ms, rng);
           r.checks.insert(r.checks.end(), more.begin(), more.end());
         }
         {
           Workspace ws;
           CheckList more = generic_solution_checks<R2>(ws, ms, rng);
           r.checks.insert(r.checks.end(), more.begin(), more.end());
         }
         return r;
       }},
      {"majorana", "single self-conjugate mode: eigenpairs, unbiasedness, multimode obstruction",
       {"rational-sqrt2"}, false,
       [](RingKind, const ModeSet&, std::uint64_t) -> SuiteResult {
         Workspace ws;
         return {majorana_checks<R2>(ws), ""};
       }},
      {"disentangle", "factored form of the two-family exponential, exact coefficients",
       {"rational-sqrt2"}, true,
       [](RingKind, const ModeSet& ms, std::uint64_t seed) -> SuiteResult {
         std::mt19937_64 rng(seed);
         Workspace ws;
         return {disentangle_checks<R2>(ws, ms, rng), ""};
       }},
      {"overlaps", "pair-basis overlaps: analytic form, common-sign closed forms, unbiasedness",
       {"rational-sqrt2"}, true,
       [](RingKind, const ModeSet& ms, std::uint64_t) -> SuiteResult {
         Workspace ws;
         return {mub_overlap_checks<R2>(ws, ms), ""};
       }},
      {"h-odes", "overlap coefficient functions solve their ODE system on [0, 0.9]",
       {"float"}, false,
       [](RingKind, const ModeSet&, std::uint64_t) -> SuiteResult {
         SuiteResult r;
         for (int c1 : {+1, -1})
           for (int c2 : {+1, -1}) {
             OdeReport o = h_ode_check(c1, c2);
             char buf[128];
             std::snprintf(buf, sizeof(buf), "max %.3e; rk4 %.3e; mutated %.3e", o.max_residual,
                           o.rk4_deviation, o.mutation_residual);
             bool pass = o.max_residual < 1e-10 && o.rk4_deviation < 1e-8 &&
                         o.mutation_residual > 1e-6;
             std::string name = "dh/dt system holds, RK4 endpoint agrees, mutation breaks (c1=" +
                                std::string(c1 > 0 ? "+1" : "-1") + ", c2=" +
                                std::string(c2 > 0 ? "+1" : "-1") + ")";
             // keep the residual table even on a pass: it is the result here
             r.checks.push_back(CheckResult{name, pass, buf});
           }
         return r;
       }},
      {"delta", "regulated overlaps reduce to one shared constant times delta functionals",
       {"laurent-eps"}, true,
       [](RingKind, const ModeSet& ms, std::uint64_t seed) -> SuiteResult {
         SuiteResult r;
         {
           Workspace ws;
           r.checks = named_overlap_checks(ws, ms);
         }
         {
           Workspace ws;
           std::mt19937_64 rng(seed);
           CheckList more = delta_measure_checks<EpsRing>(ws, ms, rng);
           r.checks.insert(r.checks.end(), more.begin(), more.end());
         }
         r.laurent_orders = detail::laurent_order_table(ms);
         return r;
       }},
      {"quadrature", "quadrature bases: eigen-structure, orthogonality constant, completeness",
       {"rational-sqrt2"}, true,
       [](RingKind, const ModeSet& ms, std::uint64_t seed) -> SuiteResult {
         std::mt19937_64 rng(seed);
         SuiteResult r;
         r.checks = quadrature_basis_checks<R2>(ms, rng);
         CheckList more = completeness_checks<R2>(ms);
         r.checks.insert(r.checks.end(), more.begin(), more.end());
         return r;
       }},
      {"wigner", "phase-space symbols, operator reconstruction, and the trace pairing",
       {"rational-sqrt2"}, true,
       [](RingKind, const ModeSet& ms, std::uint64_t seed) -> SuiteResult {
         std::mt19937_64 rng(seed);
         SuiteResult r;
         r.checks = wigner_symbol_checks<R2>(ms, rng);
         CheckList more = weyl_checks<R2>(ms, rng);
         r.checks.insert(r.checks.end(), more.begin(), more.end());
         more = trace_checks<R2>(ms, rng);
         r.checks.insert(r.checks.end(), more.begin(), more.end());
         return r;
       }},
      {"fourier", "functional Fourier pair and the characteristic-functional roundtrip",
       {"rational-sqrt2"}, true,
       [](RingKind, const ModeSet& ms, std::uint64_t seed) -> SuiteResult {
         std::mt19937_64 rng(seed);
         return {fourier_checks<R2>(ms, rng), ""};
       }},
      {"star", "noncommutative products of symbols match operator products",
       {"rational-sqrt2"}, true,
       [](RingKind, const ModeSet& ms, std::uint64_t seed) -> SuiteResult {
         std::mt19937_64 rng(seed);
         return {star_checks<R2>(ms, rng), ""};
       }},
  };
  return reg;
}

inline const SuiteSpec* find_suite(const std::string& name) {
  for (const auto& s : suite_registry())
    if (s.name == name) return &s;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Execution.

namespace detail {

inline bool suite_supports(const SuiteSpec& s, const std::string& ring) {
  for (const auto& r : s.rings)
    if (r == ring) return true;
  return false;
}

inline int worker_count(int tasks) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("FPHASE_WORKERS")) {
    long long cap = 0;
    try {
      TextCursor cur{std::string_view(env)};
      cap = cur.integer();
      cur.skip_ws();
      if (!cur.done()) cap = 0;
    } catch (const Error&) {
      cap = 0;
    }
    if (cap < 1) fail(ErrorKind::config, "FPHASE_WORKERS must be a positive integer");
    n = std::min<long long>(n, cap);
  }
  return std::max(1, std::min(n, tasks));
}

}  // namespace detail

// Builds the mode set a scenario describes, or raises a config error.
inline ModeSet scenario_modes(const Scenario& sc) {
  if (sc.k_points < 1) fail(ErrorKind::config, "k_points must be at least 1");
  if (sc.spins != 1 && sc.spins != 2)
    fail(ErrorKind::config, "spin count " + std::to_string(sc.spins) +
                                " needs a custom pairing matrix; built-ins cover spins = 1 "
                                "(no pairing) and spins = 2 (pauli-y)");
  if (sc.k_points * sc.spins > 12)
    fail(ErrorKind::config, "mode guard: k_points*spins = " +
                                std::to_string(sc.k_points * sc.spins) + " exceeds 12");
  ModeSet ms = sc.spins == 2 ? ModeSet::pauli_y(sc.k_points) : ModeSet::spinless(sc.k_points);
  if (!sc.weights.empty()) {
    if (static_cast<int>(sc.weights.size()) != sc.k_points)
      fail(ErrorKind::config, "expected " + std::to_string(sc.k_points) + " weights, got " +
                                  std::to_string(sc.weights.size()));
    ms.weights = sc.weights;
  }
  ms.validate();
  return ms;
}

// Resolves the suite list: explicit names must exist and be compatible with
// the ring and pairing; an empty list selects every compatible suite.
inline std::vector<const SuiteSpec*> resolve_suites(const Scenario& sc) {
  std::vector<const SuiteSpec*> chosen;
  if (sc.suites.empty()) {
    for (const auto& s : suite_registry())
      if (detail::suite_supports(s, sc.ring) && (!s.needs_pairing || sc.spins == 2))
        chosen.push_back(&s);
    return chosen;
  }
  for (const auto& name : sc.suites) {
    const SuiteSpec* s = find_suite(name);
    if (!s) fail(ErrorKind::config, "unknown suite \"" + name + "\"");
    if (!detail::suite_supports(*s, sc.ring)) {
      std::string rings;
      for (const auto& r : s->rings) rings += (rings.empty() ? "" : ", ") + r;
      fail(ErrorKind::config,
           "suite \"" + name + "\" does not run over ring \"" + sc.ring + "\" (supported: " +
               rings + ")");
    }
    if (s->needs_pairing && sc.spins != 2)
      fail(ErrorKind::config, "suite \"" + name + "\" needs the built-in spin pairing (spins = 2)");
    chosen.push_back(s);
  }
  return chosen;
}

nlohmann::json report_json(const RunReport& rep, bool with_timing);
void write_report_file(const RunReport& rep, const std::string& path);

// Runs every selected suite (work pool, one task per suite) and assembles the
// records in registry order.  Raises config errors before any suite runs.
inline RunReport run_scenario(const Scenario& sc) {
  const auto t_start = std::chrono::steady_clock::now();
  RingKind ring = ring_from_name(sc.ring);
  ModeSet ms = scenario_modes(sc);
  std::vector<const SuiteSpec*> chosen = resolve_suites(sc);

  RunReport rep;
  rep.scenario = sc;
  rep.scenario.suites.clear();
  for (const SuiteSpec* s : chosen) rep.scenario.suites.push_back(s->name);
  if (rep.scenario.weights.empty())
    rep.scenario.weights.assign(static_cast<size_t>(sc.k_points), rat(1));

  struct Slot {
    SuiteResult res;
    double wall_ms = 0;
    bool errored = false;
    ErrorKind kind = ErrorKind::internal;
    std::string message;
  };
  std::vector<Slot> slots(chosen.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= chosen.size()) return;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        slots[i].res = chosen[i]->run(ring, ms, detail::suite_seed(sc.seed, chosen[i]->name));
      } catch (const Error& e) {
        slots[i].errored = true;
        slots[i].kind = e.kind;
        slots[i].message = e.what();
      }
      slots[i].wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const int workers = detail::worker_count(static_cast<int>(chosen.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (size_t i = 0; i < chosen.size(); ++i)
    if (slots[i].errored)
      fail(slots[i].kind, "suite \"" + chosen[i]->name + "\": " + slots[i].message);

  for (size_t i = 0; i < chosen.size(); ++i) {
    for (const CheckResult& c : slots[i].res.checks) {
      CheckRecord r;
      r.suite = chosen[i]->name;
      r.anchor = c.name;
      r.pass = c.pass;
      r.residual = c.residual;
      r.laurent_orders = slots[i].res.laurent_orders;
      r.suite_wall_ms = slots[i].wall_ms;
      rep.checks.push_back(std::move(r));
      ++(c.pass ? rep.passed : rep.failed);
    }
  }
  rep.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start).count();
  if (!sc.output.empty()) write_report_file(rep, sc.output);
  return rep;
}

// ---------------------------------------------------------------------------
// JSON forms.

inline nlohmann::json scenario_to_json(const Scenario& sc) {
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& w : sc.weights) weights.push_back(rat_text(w));
  return nlohmann::json{
      {"modes",
       {{"k_points", sc.k_points}, {"spins", sc.spins}, {"weights", std::move(weights)}}},
      {"ring", sc.ring},
      {"suites", sc.suites},
      {"seed", sc.seed},
  };
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorKind::config, "scenario must be a JSON object");
  Scenario sc;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "modes") {
        if (!value.is_object()) fail(ErrorKind::config, "\"modes\" must be an object");
        for (const auto& [mk, mv] : value.items()) {
          if (mk == "k_points")
            sc.k_points = mv.get<int>();
          else if (mk == "spins")
            sc.spins = mv.get<int>();
          else if (mk == "weights") {
            sc.weights.clear();
            for (const auto& w : mv) {
              if (w.is_number_integer())
                sc.weights.push_back(rat(w.get<long long>()));
              else
                sc.weights.push_back(parse_rational_full(w.get<std::string>()));
            }
          } else
            fail(ErrorKind::config, "unknown key \"modes." + mk + "\" in scenario");
        }
      } else if (key == "ring")
        sc.ring = value.get<std::string>();
      else if (key == "suites")
        sc.suites = value.get<std::vector<std::string>>();
      else if (key == "seed")
        sc.seed = value.get<std::uint64_t>();
      else if (key == "output")
        sc.output = value.get<std::string>();
      else
        fail(ErrorKind::config, "unknown key \"" + key + "\" in scenario");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::config, std::string("bad scenario value: ") + e.what());
  }
  return sc;
}

inline Scenario scenario_from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::parse, std::string("scenario JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

inline Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::config, "cannot open scenario file \"" + path + "\"");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return scenario_from_json_text(text);
}

// The full report; with_timing=false yields the canonical form used for
// bit-for-bit comparison (wall-clock fields stripped, everything else kept).
inline nlohmann::json report_json(const RunReport& rep, bool with_timing = true) {
  nlohmann::json j;
  j["engine"] = {{"name", kEngineName}, {"version", kEngineVersion}};
  j["scenario"] = scenario_to_json(rep.scenario);
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckRecord& r : rep.checks) {
    nlohmann::json c{
        {"suite", r.suite},
        {"anchor", r.anchor},
        {"status", r.pass ? "pass" : "fail"},
        {"residual", r.residual},
    };
    if (!r.laurent_orders.empty()) c["laurent_orders"] = r.laurent_orders;
    if (with_timing) c["suite_wall_ms"] = r.suite_wall_ms;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  j["summary"] = {
      {"total", rep.passed + rep.failed},
      {"passed", rep.passed},
      {"failed", rep.failed},
      {"all_pass", rep.all_pass()},
  };
  if (with_timing) j["summary"]["wall_ms"] = rep.wall_ms;
  return j;
}

inline std::string canonical_report(const RunReport& rep) {
  return report_json(rep, false).dump(2) + "\n";
}

inline void write_report_file(const RunReport& rep, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::config, "cannot open report file \"" + path + "\" for writing");
  out << report_json(rep, true).dump(2) << "\n";
}

// One human-readable line per check plus a summary line.
inline std::string report_text(const RunReport& rep) {
  std::string out;
  for (const CheckRecord& r : rep.checks) {
    out += std::string(r.pass ? "[pass] " : "[FAIL] ") + r.suite + " :: " + r.anchor;
    if (!r.residual.empty()) out += "  (" + r.residual + ")";
    out += "\n";
  }
  out += "suites: ";
  for (size_t i = 0; i < rep.scenario.suites.size(); ++i)
    out += (i ? ", " : "") + rep.scenario.suites[i];
  out += "\n";
  char buf[160];
  std::snprintf(buf, sizeof(buf), "checks: %d passed, %d failed, %.0f ms total\n",
                rep.passed, rep.failed, rep.wall_ms);
  out += buf;
  return out;
}

}  // namespace fphase
