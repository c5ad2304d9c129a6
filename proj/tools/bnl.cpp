// Command-line front end: exact bounds, membership tests, quantum searches,
// sweeps and the reproduction suite.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bnl/json_io.hpp"
#include "bnl/optimize.hpp"
#include "bnl/polytopes.hpp"
#include "bnl/quantum.hpp"
#include "bnl/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUserError = 1;
constexpr int kUnsupported = 2;
constexpr int kVerificationFailed = 3;

struct Options {
  std::string ineq;
  std::string model = "BL";
  std::optional<int> n;
  double t = 0.7853981633974483;
  int grid = 50;
  int restarts = 64;
  std::uint64_t seed = 1;
  std::string mode = "paper";
  std::string out;
  std::string json;
  std::string behavior;
  std::string params;
  std::string suite = "paper";
  std::vector<std::string> only;
  double tol = 1e-7;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw bnl::StructuralError("cannot write " + path);
  out << text;
}

bnl::SearchConfig search_config(const Options& o) {
  bnl::SearchConfig config;
  config.restarts = o.restarts;
  config.seed = o.seed;
  if (o.mode == "paper") {
    config.mode = bnl::SearchMode::PaperParametrization;
  } else if (o.mode == "general") {
    config.mode = bnl::SearchMode::GeneralPerParty;
  } else {
    throw bnl::StructuralError("--mode must be 'paper' or 'general'");
  }
  return config;
}

int run_bounds(const Options& o) {
  const auto expr = bnl::expression_from_spec(o.ineq, o.n);
  const auto model = bnl::parse_model(o.model);
  const auto result = bnl::bound(expr, model);
  std::printf("%.12f\n", result.value);
  if (!o.out.empty()) bnl::write_json_file(o.out, bnl::behavior_to_json(result.witness));
  return kOk;
}

int run_vertices(const Options& o) {
  const auto model = bnl::parse_model(o.model);
  const int n = o.n.value_or(model.kind == bnl::ModelKind::OneWay ? 2 : 3);
  const auto set = bnl::enumerate_vertices(model, bnl::Scenario(n));
  std::printf("%s n=%d: %zu vertices\n", bnl::to_string(model).c_str(), n, set.vertices.size());
  if (!o.out.empty()) bnl::write_json_file(o.out, bnl::vertex_set_to_json(set));
  return kOk;
}

int run_membership(const Options& o) {
  if (o.behavior.empty()) throw bnl::StructuralError("--behavior <file> is required");
  const auto behavior = bnl::read_behavior_file(o.behavior);
  const auto report = bnl::validate(behavior);
  if (!report.ok) throw bnl::StructuralError("behavior does not validate: " + report.problems.front());
  const auto model = bnl::parse_model(o.model);
  const auto result = bnl::membership(behavior, model, o.tol);
  if (result.member) {
    std::printf("member of %s (%zu vertices with nonzero weight, reconstruction error %.3e)\n",
                bnl::to_string(model).c_str(), result.weights.size(), result.reconstruction_error);
  } else {
    std::printf("not a member of %s (certificate value %.12f, vertex maximum %.12f, gap %.12f)\n",
                bnl::to_string(model).c_str(), result.certificate_value, result.vertex_maximum,
                result.gap);
  }
  if (!o.json.empty()) {
    bnl::write_json_file(o.json, bnl::membership_to_json(result, behavior.scenario()));
  }
  return kOk;
}

int run_qmax(const Options& o) {
  const auto expr = bnl::expression_from_spec(o.ineq, o.n);
  const int n = expr.scenario().num_parties();
  const auto config = search_config(o);
  std::printf("# seed %llu, restarts %d, mode %s\n", static_cast<unsigned long long>(o.seed),
              o.restarts, o.mode.c_str());
  const auto best = bnl::maximize(expr, n, o.t, config);
  std::printf("%.12f\n", best.value);
  std::printf("parameters:");
  for (double p : best.parameters) std::printf(" %.12f", p);
  std::printf("\n");
  if (!o.json.empty()) {
    nlohmann::json j = {{"ineq", o.ineq}, {"n", n}, {"t", o.t}, {"seed", o.seed},
                        {"value", best.value}, {"parameters", best.parameters}};
    if (config.mode == bnl::SearchMode::PaperParametrization) {
      j["params"] = bnl::params_to_json(best.measurement_params());
    }
    bnl::write_json_file(o.json, j);
  }
  return kOk;
}

int run_sweep(const Options& o) {
  const auto expr = bnl::expression_from_spec(o.ineq, o.n);
  const int n = expr.scenario().num_parties();
  if (o.grid < 1) throw bnl::StructuralError("--grid must be positive");
  const auto curve = bnl::sweep(expr, n, bnl::default_grid(o.grid), search_config(o));
  const std::string csv = bnl::curve_to_csv(curve);
  if (o.out.empty()) {
    std::printf("# seed %llu, restarts %d, mode %s\n%s", static_cast<unsigned long long>(o.seed),
                o.restarts, o.mode.c_str(), csv.c_str());
  } else {
    write_text(o.out, csv);
    std::printf("# seed %llu: wrote %zu points to %s\n", static_cast<unsigned long long>(o.seed),
                curve.points.size(), o.out.c_str());
  }
  return kOk;
}

int run_born(const Options& o) {
  if (o.params.empty()) throw bnl::StructuralError("--params <file> is required");
  std::ifstream in(o.params);
  if (!in) throw bnl::StructuralError("cannot open " + o.params);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw bnl::StructuralError(std::string("cannot parse parameters: ") + e.what());
  }
  const auto params = bnl::params_from_json(j);
  const int n = static_cast<int>(params.phi.size());
  const auto behavior = bnl::born_behavior(bnl::ghz_state(n, o.t), bnl::settings_from_params(params));
  if (!o.ineq.empty()) {
    std::printf("%.12f\n", bnl::evaluate(bnl::expression_from_spec(o.ineq, n), behavior));
  }
  if (!o.out.empty()) bnl::write_json_file(o.out, bnl::behavior_to_json(behavior));
  return kOk;
}

int run_ghz_anonymity(const Options& o) {
  const int n = o.n.value_or(3);
  if (n < 3 || n > bnl::kMaxParties) {
    throw bnl::StructuralError("--n must be between 3 and " + std::to_string(bnl::kMaxParties));
  }
  bool ok = true;
  const auto reproduced = bnl::broadcast_reproduction(n);
  const auto ghz = bnl::ghz_paper_correlation(n);
  double worst = 0.0;
  for (std::size_t i = 0; i < ghz.table().size(); ++i) {
    worst = std::max(worst, std::abs(reproduced.table()[i] - ghz.table()[i]));
  }
  const bool equal = worst <= 1e-12;
  ok &= equal;
  std::printf("[%s] (N-2)-event broadcast model reproduces the GHZ correlation (max diff %.3e)\n",
              equal ? "PASS" : "FAIL", worst);
  if (n != 3) {
    std::printf("[SKIP] Mermin and BC1 membership checks run at n = 3 only\n");
    return ok ? kOk : kUserError;
  }
  const double mermin = bnl::evaluate(bnl::builtin("Mermin3"), ghz);
  const bool nonlocal = std::abs(mermin - 4.0) <= 1e-12;
  ok &= nonlocal;
  std::printf("[%s] Mermin3 = %.12f > 2 (local bound), so the correlation is nonlocal\n",
              nonlocal ? "PASS" : "FAIL", mermin);
  for (int j = 0; j < 3; ++j) {
    const auto model = bnl::ModelClass::broadcast(j);
    const auto result = bnl::membership(ghz, model);
    ok &= result.member;
    std::printf("[%s] reproducible with party %d broadcasting first (%s)\n",
                result.member ? "PASS" : "FAIL", j + 1, bnl::to_string(model).c_str());
  }
  return ok ? kOk : kUserError;
}

int run_verify(const Options& o) {
  if (o.suite != "paper") throw bnl::StructuralError("unknown suite '" + o.suite + "'");
  bnl::VerifyOptions options;
  options.seed = o.seed;
  options.restarts = o.restarts;
  options.only = o.only;
  const auto start = std::chrono::steady_clock::now();
  const auto report = bnl::run_paper_suite(options);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s", report.to_table().c_str());
  std::printf("# %zu checks in %.1f s (seed %llu)\n", report.checks.size(), seconds,
              static_cast<unsigned long long>(o.seed));
  if (!o.json.empty()) bnl::write_json_file(o.json, report.to_json());
  return report.passed() ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-type inequality bounds over local, bilocal and broadcasting polytopes"};
  app.require_subcommand(1);
  Options o;

  auto* bounds = app.add_subcommand("bounds", "Exact bound of an inequality over a model class");
  bounds->add_option("--ineq", o.ineq, "Built-in name (S3, Sprime, I, R3, RN, T, B, Mermin3) or expression text")
      ->required();
  bounds->add_option("--model", o.model, "Local, BL, TOBL, NSBL, BC1, BC1[k], OneWay(s,r)");
  bounds->add_option("--n", o.n, "Number of parties");
  bounds->add_option("--out", o.out, "Write the maximising vertex as behavior JSON");

  auto* vertices = app.add_subcommand("vertices", "Enumerate the vertices of a model class");
  vertices->add_option("--model", o.model)->required();
  vertices->add_option("--n", o.n);
  vertices->add_option("--out", o.out, "Write the vertex list as a JSON array of behaviors");

  auto* member = app.add_subcommand("membership", "LP membership test with certificate");
  member->add_option("--behavior", o.behavior, "Behavior JSON file")->required();
  member->add_option("--model", o.model);
  member->add_option("--tol", o.tol, "Feasibility tolerance");
  member->add_option("--json", o.json, "Write weights or certificate as JSON");

  auto* qmax = app.add_subcommand("qmax", "Maximise a quantum value over measurements");
  qmax->add_option("--ineq", o.ineq)->required();
  qmax->add_option("--n", o.n);
  qmax->add_option("--t", o.t, "GHZ-like state angle");
  qmax->add_option("--restarts", o.restarts);
  qmax->add_option("--seed", o.seed);
  qmax->add_option("--mode", o.mode, "paper or general");
  qmax->add_option("--json", o.json);

  auto* sweep = app.add_subcommand("sweep", "Maximise over a grid of state angles (CSV output)");
  sweep->add_option("--ineq", o.ineq)->required();
  sweep->add_option("--n", o.n);
  sweep->add_option("--grid", o.grid, "Number of grid points in (0, pi/4]");
  sweep->add_option("--restarts", o.restarts);
  sweep->add_option("--seed", o.seed);
  sweep->add_option("--mode", o.mode, "paper or general");
  sweep->add_option("--out", o.out, "CSV output file");

  auto* born = app.add_subcommand("born", "Born-rule behavior of a GHZ-like state");
  born->add_option("--params", o.params, "Measurement parameters JSON")->required();
  born->add_option("--t", o.t);
  born->add_option("--ineq", o.ineq, "Also print this expression's value");
  born->add_option("--out", o.out, "Write the behavior JSON");

  auto* anon = app.add_subcommand("ghz-anonymity", "Broadcast reproduction of the GHZ correlation");
  anon->add_option("--n", o.n)->required();

  auto* verify = app.add_subcommand("verify", "Run the reproduction checks");
  verify->add_option("--suite", o.suite);
  verify->add_option("--seed", o.seed);
  verify->add_option("--restarts", o.restarts);
  verify->add_option("--only", o.only, "Criteria to run, e.g. C1 C4")->delimiter(',');
  verify->add_option("--json", o.json, "Write the machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUserError;
  }

  try {
    if (*bounds) return run_bounds(o);
    if (*vertices) return run_vertices(o);
    if (*member) return run_membership(o);
    if (*qmax) return run_qmax(o);
    if (*sweep) return run_sweep(o);
    if (*born) return run_born(o);
    if (*anon) return run_ghz_anonymity(o);
    if (*verify) return run_verify(o);
  } catch (const bnl::UnsupportedError& e) {
    std::fprintf(stderr, "unsupported: %s\n", e.what());
    return kUnsupported;
  } catch (const bnl::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUserError;
  }
  return kUserError;
}
