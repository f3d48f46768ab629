// Command-line surface: measure states, run the verification suites,
// benchmark the fast vs. brute-force tangle evaluation, factor states.
// Structured output is JSON on stdout; exit 0 = pass, 1 = fail, 2 = usage.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tangle/concurrence.hpp"
#include "tangle/invariants.hpp"
#include "tangle/qstate.hpp"
#include "tangle/qstate_io.hpp"
#include "tangle/slocc.hpp"

using nlohmann::json;
using namespace tangle;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TANGLE_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 12345;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

QState parse_named(const std::string& name) {
  const auto colon = name.find(':');
  if (colon == std::string::npos) {
    throw CLI::ValidationError("--named", "expected ghz:N, w:N or dicke:L,N");
  }
  const std::string kind = name.substr(0, colon);
  const std::string args = name.substr(colon + 1);
  try {
    if (kind == "ghz") return ghz(std::stoi(args));
    if (kind == "w") return w(std::stoi(args));
    if (kind == "dicke") {
      const auto comma = args.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("dicke needs L,N");
      return dicke(std::stoi(args.substr(0, comma)), std::stoi(args.substr(comma + 1)));
    }
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--named", e.what());
  }
  throw CLI::ValidationError("--named", "unknown state family: " + kind);
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw CLI::ValidationError("--n", "empty list");
  return out;
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

// ---------------------------------------------------------------- measure

int cmd_measure(const std::string& named, const std::string& file, bool no_timing,
                bool require_tangle) {
  json out;
  QState state;
  if (!named.empty()) {
    state = parse_named(named);
    out["state"] = named;
  } else {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      std::cerr << "measure: cannot open " << file << "\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    state = from_spec(spec_from_json(json::parse(buf.str())));
    std::ostringstream hash;
    hash << std::hex << fnv1a(buf.str());
    out["state"] = "file:" + hash.str();
  }
  out["n"] = state.n;

  json timings = json::object();
  if (state.n % 2 == 0) {
    double t0 = now_seconds();
    const Complex s0v = invariant_s0(state);
    const Complex istar = i_star(state, IStarForm::pairform);
    const double tp = tau_prime(state);
    const FastTangle ft = n_tangle_fast(state);
    timings["invariants"] = now_seconds() - t0;
    out["invariants"] = {
        {"s0", complex_json(s0v)},
        {"i_star", complex_json(istar)},
        {"tau_prime", tp},
        {"n_tangle", ft.tau},
        {"mult_count", {{"sum", ft.sum_mults}, {"final", ft.final_ops}}},
    };
  } else {
    if (require_tangle) {
      std::cerr << "measure: tangle quantities require even n (got n=" << state.n
                << ")\n";
      return 2;
    }
    out["invariants"] = nullptr;
    out["note"] = "tangle fields omitted: no degree-2 invariant at odd n";
  }

  double t0 = now_seconds();
  const ConcurrenceReport rep = residual_tangle(state);
  timings["concurrence"] = now_seconds() - t0;
  out["concurrence"] = {
      {"c_one_rest", rep.c_one_rest},       {"c_one_rest_sq", rep.c_one_rest_sq},
      {"c_pairs", rep.c_pairs},             {"residual", rep.residual},
      {"monogamy_slack", rep.monogamy_slack},
  };
  if (!no_timing) out["timings"] = timings;
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ----------------------------------------------------------------- verify

struct SuiteResult {
  std::string name;
  int n = 0;
  bool pass = true;
  double max_gap = 0.0;
  std::string detail;
};

class SuiteRunner {
 public:
  SuiteRunner(int trials, std::uint64_t seed) : trials_(trials), seed_(seed) {}

  std::vector<SuiteResult> results;

  void check(const std::string& name, int n, double gap, double tol,
             const std::string& detail = "") {
    auto& r = slot(name, n);
    r.max_gap = std::max(r.max_gap, gap);
    if (!(gap <= tol)) r.pass = false;
    if (!detail.empty()) r.detail = detail;
  }

  void fail(const std::string& name, int n, const std::string& detail) {
    auto& r = slot(name, n);
    r.pass = false;
    r.detail = detail;
  }

  int trials() const { return trials_; }
  std::uint64_t seed(int salt) const { return seed_ * 1000003ull + std::uint64_t(salt); }

  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }

 private:
  SuiteResult& slot(const std::string& name, int n) {
    for (auto& r : results)
      if (r.name == name && r.n == n) return r;
    results.push_back({name, n});
    return results.back();
  }

  int trials_;
  std::uint64_t seed_;
};

void run_suites(SuiteRunner& run, int n, bool quick_quartic) {
  const bool even = (n % 2 == 0);
  const int t = run.trials();

  if (even) {
    // degree-2 form agreement (four routes to the same invariant)
    for (int i = 0; i < t; ++i) {
      const QState s = random_pure(n, run.seed(i));
      const Complex ref = invariant_s0(s);
      double gap = 0.0;
      for (auto f : {IStarForm::grouped, IStarForm::pairform, IStarForm::folded}) {
        gap = std::max(gap, std::abs(i_star(s, f) - ref));
      }
      run.check("forms", n, gap, 1e-12);
    }

    // quartic reduction identities
    const int tq = quick_quartic ? std::min(t, 25) : t;
    if (n <= 12) {
      for (int i = 0; i < tq; ++i) {
        const ReductionReport rep = verify_reduction(random_pure(n, run.seed(1000 + i)));
        run.check("reduction_s_2s0sq", n, rep.gap_s_2s0sq, 1e-10);
        run.check("reduction_s1_s0", n, rep.gap_s1_plus_s0, 1e-12);
        run.check("reduction_case1", n, rep.case1_partial, 1e-12);
      }
    }

    // SLOCC covariance
    for (int i = 0; i < t; ++i) {
      const QState s = random_pure(n, run.seed(2000 + i));
      const LocalOperatorSet ops = random_invertible_set(n, run.seed(3000 + i));
      const CovarianceReport rep = covariance_check(s, ops);
      run.check("covariance_istar", n, rep.rel_error, 1e-8);
      run.check("covariance_tau", n, rep.tau_rel_error, 1e-7);
    }

    // permutation invariance of tau and |I*|
    {
      std::mt19937_64 rng(run.seed(4000));
      for (int i = 0; i < t; ++i) {
        const QState s = random_pure(n, run.seed(4000 + i));
        const double tau = n_tangle_fast(s).tau;
        const double ia = std::abs(i_star(s, IStarForm::pairform));
        std::vector<int> perm(size_t(n), 0);
        for (int k = 0; k < n; ++k) perm[size_t(k)] = k + 1;
        for (int rep = 0; rep < 5; ++rep) {
          std::shuffle(perm.begin(), perm.end(), rng);
          const QState p = permute_qubits(s, perm);
          run.check("permutation_tau", n, std::abs(n_tangle_fast(p).tau - tau), 1e-12);
          run.check("permutation_istar", n,
                    std::abs(std::abs(i_star(p, IStarForm::pairform)) - ia), 1e-12);
        }
      }
    }

    // tau multiplicativity over even x even products
    for (int i = 0; i < t; ++i) {
      const MultiplicativityReport rep = multiplicativity_check(
          random_pure(n, run.seed(5000 + i)), random_pure(n, run.seed(6000 + i)));
      run.check("multiplicativity", n, rep.gap, 1e-10);
    }

    // C^2 >= tau certificate
    if (n >= 4 && n <= 10) {
      for (int i = 0; i < t; ++i) {
        const Result3Certificate cert = result3_certificate(random_pure(n, run.seed(7000 + i)));
        run.check("result3_blocks", n, cert.block_gap, 1e-11);
        if (!cert.tau_within_bound) run.fail("result3_zbound", n, "tau above Z bound");
        run.check("result3_pairs", n, std::max(0.0, -cert.worst_pair_margin), 1e-12);
        if (!cert.headline) run.fail("result3_headline", n, "C^2 < tau");
      }
    }
  }

  // concurrence form agreement (holds for any n)
  for (int i = 0; i < t; ++i) {
    const QState s = random_pure(n, run.seed(8000 + i));
    const double gap = std::abs(c_one_rest(s, COneForm::det_form).c_squared -
                                c_one_rest(s, COneForm::sum_form).c_squared);
    run.check("result1_forms", n, gap, 1e-11);
  }

  // factorization biconditional
  for (int i = 0; i < t; ++i) {
    const QState prod =
        tensor(random_pure(1, run.seed(9000 + i)), random_pure(n - 1, run.seed(9500 + i)));
    const FactorResult f = factor_one_rest(prod, 1e-8);
    if (!f.is_product) {
      run.fail("result2_products", n, "product not factored");
    } else {
      run.check("result2_products", n, 1.0 - f.fidelity, 1e-9);
    }
    QState ent = random_pure(n, run.seed(10000 + i));
    while (c_one_rest(ent, COneForm::sum_form).c < 1e-3) {
      ent = random_pure(n, run.seed(10000 + i) * 7 + 1);
    }
    if (factor_one_rest(ent, 1e-8).is_product) {
      run.fail("result2_entangled", n, "entangled state claimed product");
    } else {
      run.check("result2_entangled", n, 0.0, 1.0);
    }
  }

  // monogamy: residual must not go negative
  if (n >= 3) {
    for (int i = 0; i < t; ++i) {
      const double residual = residual_tangle(random_pure(n, run.seed(11000 + i))).residual;
      run.check("monogamy", n, std::max(0.0, -residual), 1e-9);
    }
  }

  // partial-measure laws for product states
  if (n >= 4) {
    for (int i = 0; i < std::min(t, 25); ++i) {
      const PartialMeasureReport rep = partial_measure_check(
          random_pure(n - 2, run.seed(12000 + i)), random_pure(2, run.seed(12500 + i)));
      run.check("partial_measure_c", n, rep.c_gap, 1e-10);
      run.check("partial_measure_pairs", n,
                std::max(rep.pair_gap_kept, rep.pair_max_cross), 1e-10);
      run.check("partial_measure_residual", n, rep.residual_gap, 1e-9);
    }
  }
}

int cmd_verify(const std::string& n_list, int trials, std::uint64_t seed,
               const std::string& file, bool experiment_odd_tangle) {
  SuiteRunner run(trials, seed);
  for (int n : parse_n_list(n_list)) {
    if (n < 2) {
      std::cerr << "verify: n must be >= 2\n";
      return 2;
    }
    run_suites(run, n, /*quick_quartic=*/trials > 25);
  }

  if (!file.empty()) {
    try {
      const QState s = load_state_file(file);
      const double gap = std::abs(c_one_rest(s, COneForm::det_form).c_squared -
                                  c_one_rest(s, COneForm::sum_form).c_squared);
      run.check("result1_forms_input", s.n, gap, 1e-11);
      if (s.n >= 3) {
        run.check("monogamy_input", s.n,
                  std::max(0.0, -residual_tangle(s).residual), 1e-9);
      }
    } catch (const std::exception& e) {
      run.fail("input", 0, e.what());
    }
  }

  json out;
  out["suites"] = json::array();
  for (const auto& r : run.results) {
    out["suites"].push_back({{"name", r.name},
                             {"n", r.n},
                             {"pass", r.pass},
                             {"max_gap", r.max_gap},
                             {"detail", r.detail}});
  }

  if (experiment_odd_tangle) {
    // Non-contractual experiment: does tau = |2 S0|^2 survive at n = 3?
    json exp = json::array();
    auto degree2 = [](const QState& s) {
      Complex acc = 0.0;
      const std::int64_t dim = s.dim();
      for (std::int64_t k = 0; k < dim / 2; ++k) {
        acc += double(popcount_sign(std::uint64_t(k), s.n)) * s.amps[k] *
               s.amps[dim - 1 - k];
      }
      return acc;
    };
    for (const auto& [label, s] :
         std::vector<std::pair<std::string, QState>>{{"ghz3", ghz(3)},
                                                     {"w3", w(3)},
                                                     {"random3", random_pure(3, seed)}}) {
      const double tau_oracle = n_tangle_oracle(s, OracleMode::raw).tau;
      const double tau_deg2 = std::norm(2.0 * degree2(s));
      exp.push_back({{"state", label},
                     {"tau_oracle", tau_oracle},
                     {"tau_degree2_sq", tau_deg2},
                     {"gap", std::abs(tau_oracle - tau_deg2)}});
    }
    out["experiment_odd_tangle"] = exp;
  }

  out["passed"] = run.all_pass();
  std::cout << out.dump(2) << "\n";
  return run.all_pass() ? 0 : 1;
}

// ------------------------------------------------------------------ bench

int cmd_bench(const std::string& n_list, const std::string& methods_csv, int trials,
              std::uint64_t seed) {
  std::vector<std::string> methods;
  {
    std::stringstream ss(methods_csv);
    std::string m;
    while (std::getline(ss, m, ',')) methods.push_back(m);
  }
  for (const auto& m : methods) {
    if (m != "fast" && m != "constrained" && m != "raw") {
      std::cerr << "bench: unknown method " << m << "\n";
      return 2;
    }
  }

  json records = json::array();
  std::ostringstream table;
  table << "  n  method       trials   mean_s       min_s        mults      tau_gap\n";
  bool ok = true;

  for (int n : parse_n_list(n_list)) {
    if (n % 2 != 0) {
      std::cerr << "bench: even n only (got " << n << ")\n";
      return 2;
    }
    const QState s = random_pure(n, seed + std::uint64_t(n));
    const double tau_fast = n_tangle_fast(s).tau;
    for (const auto& m : methods) {
      if (m == "raw" && n > 4) {
        std::cerr << "bench: raw oracle budget is n <= 4\n";
        return 2;
      }
      if (m == "constrained" && n > 12) {
        std::cerr << "bench: constrained oracle budget is n <= 12\n";
        return 2;
      }
      double mean = 0.0, mn = 1e300, tau = 0.0;
      long mults = 0;
      for (int tr = 0; tr < trials; ++tr) {
        const double t0 = now_seconds();
        if (m == "fast") {
          const FastTangle ft = n_tangle_fast(s);
          tau = ft.tau;
          mults = ft.sum_mults;
        } else {
          const OracleResult orc = n_tangle_oracle(
              s, m == "raw" ? OracleMode::raw : OracleMode::constrained);
          tau = orc.tau;
          mults = orc.mult_count;
        }
        const double dt = now_seconds() - t0;
        mean += dt;
        mn = std::min(mn, dt);
      }
      mean /= trials;
      const double gap = std::abs(tau - tau_fast);
      if (gap > 1e-10) ok = false;
      records.push_back({{"n", n},
                         {"method", m},
                         {"trials", trials},
                         {"mean_s", mean},
                         {"min_s", mn},
                         {"mult_count", mults},
                         {"tau_gap_vs_fast", gap}});
      char line[160];
      std::snprintf(line, sizeof line, "%3d  %-12s %6d   %-12.3e %-12.3e %-10ld %.3e\n",
                    n, m.c_str(), trials, mean, mn, mults, gap);
      table << line;
    }
  }

  json out;
  out["records"] = records;
  out["agreement_ok"] = ok;
  std::cout << out.dump(2) << "\n";
  std::cerr << table.str();
  return ok ? 0 : 1;
}

// ----------------------------------------------------------------- factor

int cmd_factor(const std::string& file, double tol) {
  QState state;
  try {
    state = load_state_file(file);
  } catch (const std::exception& e) {
    std::cerr << "factor: " << e.what() << "\n";
    return 2;
  }
  const FactorResult f = factor_one_rest(state, tol);
  json out;
  out["is_product"] = f.is_product;
  out["c_one_rest"] = f.c_value;
  if (f.is_product) {
    out["case"] = f.case_branch;
    out["fidelity"] = f.fidelity;
    out["qubit_factor"] = state_to_json(f.qubit_factor);
    out["rest"] = state_to_json(f.rest);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiqubit entanglement invariants: n-tangle, SLOCC degree-2 "
               "invariant, concurrences, residual entanglement"};
  app.require_subcommand(1);

  std::string named, file, n_list = "4", methods = "fast,constrained";
  int trials = 100;
  std::uint64_t seed = default_seed();
  bool no_timing = false, require_tangle = false, experiment_odd = false;
  double tol = 1e-8;

  auto* measure = app.add_subcommand("measure", "invariants of one state");
  auto* opt_named = measure->add_option("--named", named, "ghz:N | w:N | dicke:L,N");
  auto* opt_file = measure->add_option("--file", file, "StateSpec JSON file");
  opt_named->excludes(opt_file);
  measure->add_flag("--no-timing", no_timing, "omit timings (byte-stable output)");
  measure->add_flag("--require-tangle", require_tangle, "error on odd n");

  auto* verify = app.add_subcommand("verify", "run the identity/property suites");
  verify->add_option("--n", n_list, "comma list of qubit counts");
  verify->add_option("--trials", trials, "random trials per suite");
  verify->add_option("--seed", seed, "ensemble seed (default $TANGLE_SEED)");
  verify->add_option("--file", file, "extra state to pass through the suites");
  verify->add_flag("--experiment-odd-tangle", experiment_odd,
                   "report (not assert) the odd-n tau identity at n=3");

  auto* bench = app.add_subcommand("bench", "fast vs. brute-force evaluation");
  bench->add_option("--n", n_list, "comma list of even qubit counts");
  bench->add_option("--methods", methods, "subset of fast,constrained,raw");
  bench->add_option("--trials", trials, "timing repetitions");
  bench->add_option("--seed", seed, "state seed");

  auto* factor = app.add_subcommand("factor", "qubit-1 factorization test");
  factor->add_option("--file", file, "StateSpec JSON file")->required();
  factor->add_option("--tol", tol, "concurrence threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (measure->parsed()) {
      if (named.empty() && file.empty()) {
        std::cerr << "measure: need --named or --file\n";
        return 2;
      }
      return cmd_measure(named, file, no_timing, require_tangle);
    }
    if (verify->parsed()) return cmd_verify(n_list, trials, seed, file, experiment_odd);
    if (bench->parsed()) return cmd_bench(n_list, methods, trials, seed);
    if (factor->parsed()) return cmd_factor(file, tol);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
