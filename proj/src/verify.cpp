#include "bnl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "bnl/optimize.hpp"
#include "bnl/polytopes.hpp"
#include "bnl/quantum.hpp"

namespace bnl {

namespace {

constexpr double kPi = std::numbers::pi;

bool compare(Comparison kind, double expected, double actual, double tol) {
  switch (kind) {
    case Comparison::Within: return std::abs(actual - expected) <= tol;
    case Comparison::GreaterThan: return actual > expected;
    case Comparison::LessThan: return actual < expected;
  }
  return false;
}

const char* comparison_name(Comparison kind) {
  switch (kind) {
    case Comparison::Within: return "within";
    case Comparison::GreaterThan: return "greater_than";
    case Comparison::LessThan: return "less_than";
  }
  return "?";
}

class Runner {
 public:
  explicit Runner(const VerifyOptions& options) : options_(options) {
    report_.suite = "paper";
    report_.seed = options.seed;
  }

  void add(const std::string& criterion, const std::string& name, double expected, double actual,
           double tol, Comparison kind = Comparison::Within) {
    report_.checks.push_back(
        {criterion, name, expected, actual, tol, kind, compare(kind, expected, actual, tol)});
  }

  // Runs `body`; an exception becomes a failed check instead of aborting.
  void guarded(const std::string& criterion, const std::string& name,
               const std::function<void()>& body) {
    if (!enabled(criterion)) return;
    try {
      body();
    } catch (const std::exception& e) {
      report_.checks.push_back({criterion, name + " (error: " + e.what() + ")", 0.0, NAN, 0.0,
                                Comparison::Within, false});
    }
  }

  bool enabled(const std::string& criterion) const {
    return options_.only.empty() ||
           std::find(options_.only.begin(), options_.only.end(), criterion) != options_.only.end();
  }

  const VerifyOptions& options() const { return options_; }
  VerifyReport take() { return std::move(report_); }

 private:
  VerifyOptions options_;
  VerifyReport report_;
};

std::vector<int> bc1_families(const VerifyOptions& options) {
  std::vector<int> families;
  for (int j = 0; j < 3; ++j) {
    if (!options.drop_bc1_family || *options.drop_bc1_family != j) families.push_back(j);
  }
  return families;
}

double class_bound(const Expression& expr, const ModelClass& model, const VerifyOptions& options) {
  if (model.kind != ModelKind::BC1 || !options.drop_bc1_family) return bound(expr, model).value;
  double best = -INFINITY;
  for (int j : bc1_families(options)) {
    best = std::max(best, bound(expr, ModelClass::broadcast(j)).value);
  }
  return best;
}

VertexSet class_vertices(const ModelClass& model, const VerifyOptions& options) {
  if (model.kind != ModelKind::BC1 || !options.drop_bc1_family) {
    return enumerate_vertices(model, Scenario(3));
  }
  VertexSet set{model, Scenario(3), {}};
  for (int j : bc1_families(options)) {
    auto part = enumerate_vertices(ModelClass::broadcast(j), Scenario(3));
    set.vertices.insert(set.vertices.end(), part.vertices.begin(), part.vertices.end());
  }
  return set;
}

// Seeded random tripartite functional: 1..8 terms over random nonempty party
// subsets with coefficients in [-1, 1].
Expression random_expression(std::uint64_t seed) {
  std::uint64_t state = seed;
  auto next = [&state]() {
    state = split_seed(state, 7);
    return state;
  };
  auto uniform = [&]() { return static_cast<double>(next() >> 11) * 0x1.0p-53; };
  const int count = 1 + static_cast<int>(next() % 8);
  std::vector<Term> terms;
  for (int k = 0; k < count; ++k) {
    const PartyMask parties = 1 + static_cast<PartyMask>(next() % 7);
    Term t;
    t.coefficient = std::round((2.0 * uniform() - 1.0) * 1000.0) / 1000.0;
    for (int i = 0; i < 3; ++i) {
      if (!((parties >> i) & 1u)) continue;
      const auto bits = next();
      t.factors.push_back({i, static_cast<int>(bits & 1u), (bits & 2u) ? -1 : 1});
    }
    terms.push_back(std::move(t));
  }
  return Expression("random", Scenario(3), std::move(terms));
}

void exact_bounds(Runner& run) {
  struct Case {
    const char* expr;
    ModelClass model;
    double expected;
  };
  const Case cases[] = {
      {"S3", ModelClass::bilocal(), 4},     {"S3", ModelClass::broadcast(), 4},
      {"Sprime", ModelClass::bilocal(), 1}, {"Sprime", ModelClass::broadcast(), 2},
      {"I", ModelClass::bilocal(), 5},      {"I", ModelClass::broadcast(), 6},
      {"R3", ModelClass::broadcast(), 0},   {"R3", ModelClass::bilocal(), 1},
      {"T", ModelClass::broadcast(), 2},    {"T", ModelClass::bilocal(), 4},
  };
  for (const auto& c : cases) {
    const std::string name = std::string("bound(") + c.expr + ", " + to_string(c.model) + ")";
    run.guarded("C1", name, [&] {
      run.add("C1", name, c.expected, class_bound(builtin(c.expr), c.model, run.options()), 1e-9);
    });
  }
}

void quantum_point_values(Runner& run) {
  run.guarded("C2", "Svetlichny settings", [&] {
    const auto [t, params] = svetlichny_settings();
    const auto behavior = born_behavior(ghz_state(3, t), settings_from_params(params));
    run.add("C2", "I at Svetlichny settings", 4 * std::sqrt(2.0) + 0.5,
            evaluate(builtin("I"), behavior), 1e-6);
    run.add("C2", "S3 at Svetlichny settings", 4 * std::sqrt(2.0),
            evaluate(builtin("S3"), behavior), 1e-6);
  });
}

void r3_maximum(Runner& run) {
  run.guarded("C3", "maximize(R3, 3, pi/4)", [&] {
    SearchConfig config;
    config.restarts = run.options().restarts;
    config.seed = run.options().seed;
    const auto best = maximize(builtin("R3"), 3, kPi / 4, config);
    run.add("C3", "maximize(R3, 3, pi/4) in [0.0359, 0.0369]", 0.0364, best.value, 5e-4);
  });
}

void appendix_checks(Runner& run) {
  run.guarded("C4", "branch 1 vs Born rule", [&] {
    const auto r3 = builtin("R3");
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double t = 0.04 * (k + 1);
      const double chi = 0.37 * k - 2.0;
      const double gamma = 1.3 - 0.21 * k;
      MeasurementParams p{kPi / 2, kPi / 2, gamma, {chi - 0.4 - 0.1 * k, 0.4, 0.1 * k}};
      const double born = quantum_value(r3, ghz_state(3, t), settings_from_params(p));
      worst = std::max(worst, std::abs(born - appendix_branch1(t, chi, gamma)));
    }
    run.add("C4", "max |branch1 - Born R3| on 20 points", 0.0, worst, 1e-9);
  });
  run.guarded("C4", "threshold", [&] {
    const double thr = r3_threshold();
    run.add("C4", "r3_threshold", 0.6187, thr, 1e-3);
    run.add("C4", "branch1 above threshold", 0.0, appendix_branch1(thr + 0.01, 1.3807, 1.0472),
            0.0, Comparison::GreaterThan);
    run.add("C4", "branch1 below threshold", 0.0, appendix_branch1(thr - 0.01, 1.3807, 1.0472),
            0.0, Comparison::LessThan);
  });
  run.guarded("C4", "branch 2", [&] {
    const auto r3 = builtin("R3");
    double worst = 0.0;
    char name[64];
    for (int k = 1; k <= 13; ++k) {
      const double t = 0.05 * k;
      const double value = appendix_branch2(t);
      const double born =
          quantum_value(r3, ghz_state(3, t), settings_from_params(appendix_branch2_params(t)));
      worst = std::max(worst, std::abs(value - born));
      std::snprintf(name, sizeof name, "branch2(%.2f) > 0", t);
      run.add("C4", name, 0.0, value, 0.0, Comparison::GreaterThan);
    }
    run.add("C4", "max |branch2 - Born R3|", 0.0, worst, 1e-7);
  });
}

void fig2_positivity(Runner& run) {
  const auto grid = default_grid(50);
  for (int n = 3; n <= 6; ++n) {
    const std::string name = "min sweep(RN, " + std::to_string(n) + ") over t >= 0.02";
    run.guarded("C5", name, [&] {
      SearchConfig config;
      config.restarts = run.options().restarts;
      config.seed = run.options().seed;
      const auto curve = sweep(builtin("RN", n), n, grid, config);
      double lowest = INFINITY;
      for (const auto& p : curve.points) {
        if (p.t >= 0.02) lowest = std::min(lowest, p.value);
      }
      run.add("C5", name, 0.0, lowest, 0.0, Comparison::GreaterThan);
    });
  }
}

void ghz_anonymity(Runner& run) {
  for (int n = 3; n <= 6; ++n) {
    const std::string name = "broadcast_reproduction(" + std::to_string(n) + ") = GHZ correlation";
    run.guarded("C6", name, [&] {
      const auto a = broadcast_reproduction(n);
      const auto b = ghz_paper_correlation(n);
      double worst = 0.0;
      for (std::size_t i = 0; i < a.table().size(); ++i) {
        worst = std::max(worst, std::abs(a.table()[i] - b.table()[i]));
      }
      run.add("C6", name, 0.0, worst, 1e-12);
    });
  }
  run.guarded("C6", "Mermin3", [&] {
    run.add("C6", "Mermin3(GHZ correlation)", 4.0,
            evaluate(builtin("Mermin3"), ghz_paper_correlation(3)), 1e-12);
  });
  for (int j = 0; j < 3; ++j) {
    const auto model = ModelClass::broadcast(j);
    const std::string name = "GHZ correlation member of " + to_string(model);
    run.guarded("C6", name, [&] {
      const bool dropped = run.options().drop_bc1_family == j;
      const bool member =
          !dropped && membership(ghz_paper_correlation(3), model).member;
      run.add("C6", name, 1.0, member ? 1.0 : 0.0, 0.0);
    });
  }
}

void structure_properties(Runner& run) {
  const VerifyOptions& options = run.options();
  run.guarded("C7", "inclusion chain", [&] {
    std::vector<Expression> exprs;
    for (const char* name : {"S3", "Sprime", "I", "R3", "RN", "T", "B", "Mermin3"}) {
      exprs.push_back(builtin(name, 3));
    }
    for (int k = 0; k < options.random_expressions; ++k) {
      exprs.push_back(random_expression(split_seed(options.seed, 5000 + k)));
    }
    double worst = -INFINITY;  // largest violation of any ordering
    for (const auto& e : exprs) {
      const double local = class_bound(e, ModelClass::local(), options);
      const double nsbl = class_bound(e, ModelClass::no_signaling_bilocal(), options);
      const double tobl = class_bound(e, ModelClass::time_ordered_bilocal(), options);
      const double bl = class_bound(e, ModelClass::bilocal(), options);
      const double bc = class_bound(e, ModelClass::broadcast(), options);
      worst = std::max({worst, local - nsbl, nsbl - tobl, tobl - bl, tobl - bc});
    }
    run.add("C7", "inclusion chain violation (builtins + random)", 0.0, std::max(worst, 0.0), 1e-9);
  });
  run.guarded("C7", "strict BC1 over TOBL", [&] {
    const auto sp = builtin("Sprime");
    run.add("C7", "bound(Sprime, BC1) - bound(Sprime, TOBL)", 0.0,
            class_bound(sp, ModelClass::broadcast(), options) -
                class_bound(sp, ModelClass::time_ordered_bilocal(), options),
            0.0, Comparison::GreaterThan);
  });
  const ModelClass classes[] = {ModelClass::local(), ModelClass::no_signaling_bilocal(),
                                ModelClass::time_ordered_bilocal(), ModelClass::bilocal(),
                                ModelClass::broadcast()};
  for (const auto& model : classes) {
    const std::string name = "vertices of " + to_string(model) + " outside their own class";
    run.guarded("C7", name, [&] {
      const auto set = class_vertices(model, options);
      std::size_t failures = 0;
      for (const auto& v : set.vertices) {
        if (!membership(v, set).member) ++failures;
      }
      run.add("C7", name, 0.0, static_cast<double>(failures), 0.0);
    });
    const std::string lp_name = "max |bound - LP optimum| over builtins, " + to_string(model);
    run.guarded("C7", lp_name, [&] {
      const auto set = class_vertices(model, options);
      double worst = 0.0;
      for (const char* name : {"S3", "Sprime", "I", "R3", "T", "B", "Mermin3"}) {
        const auto e = builtin(name);
        worst = std::max(worst, std::abs(lp_bound(e, set) - class_bound(e, model, options)));
      }
      run.add("C7", lp_name, 0.0, worst, 1e-7);
    });
  }
  run.guarded("C7", "GHZ at Svetlichny settings not BL", [&] {
    const auto [t, params] = svetlichny_settings();
    const auto behavior = born_behavior(ghz_state(3, t), settings_from_params(params));
    const auto vertices = class_vertices(ModelClass::bilocal(), options);
    const auto result = membership(behavior, vertices);
    run.add("C7", "BL membership of GHZ at Svetlichny settings", 0.0, result.member ? 1.0 : 0.0,
            0.0);
    // Recheck the certificate independently of the LP.
    double cert_value = 0.0, vertex_max = -INFINITY;
    if (!result.member) {
      for (std::size_t e = 0; e < result.certificate.size(); ++e) {
        cert_value += result.certificate[e] * behavior.table()[e];
      }
      for (const auto& v : vertices.vertices) {
        double s = 0.0;
        for (std::size_t e = 0; e < result.certificate.size(); ++e) {
          s += result.certificate[e] * v.table()[e];
        }
        vertex_max = std::max(vertex_max, s);
      }
    }
    run.add("C7", "BL separating certificate gap", 1e-7, cert_value - vertex_max, 0.0,
            Comparison::GreaterThan);
  });
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"criterion", c.criterion},
                           {"name", c.name},
                           {"expected", c.expected},
                           {"actual", c.actual},
                           {"tolerance", c.tolerance},
                           {"comparison", comparison_name(c.comparison)},
                           {"passed", c.passed}});
  }
  return {{"suite", suite}, {"seed", seed}, {"passed", passed()}, {"checks", checks_json}};
}

std::string VerifyReport::to_table() const {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-4s %-58s %16s %16s %10s  %s\n", "crit", "check", "expected",
                "actual", "tol", "result");
  out += line;
  for (const auto& c : checks) {
    const char* op = c.comparison == Comparison::GreaterThan ? ">"
                     : c.comparison == Comparison::LessThan  ? "<"
                                                             : "";
    std::snprintf(line, sizeof line, "%-4s %-58.58s %s%15.10f %16.10f %10.1e  %s\n",
                  c.criterion.c_str(), c.name.c_str(), op[0] ? op : " ", c.expected, c.actual,
                  c.tolerance, c.passed ? "PASS" : "FAIL");
    out += line;
  }
  out += passed() ? "overall: PASS\n" : "overall: FAIL\n";
  return out;
}

VerifyReport run_paper_suite(const VerifyOptions& options) {
  Runner run(options);
  if (run.enabled("C1")) exact_bounds(run);
  if (run.enabled("C2")) quantum_point_values(run);
  if (run.enabled("C3")) r3_maximum(run);
  if (run.enabled("C4")) appendix_checks(run);
  if (run.enabled("C5")) fig2_positivity(run);
  if (run.enabled("C6")) ghz_anonymity(run);
  if (run.enabled("C7")) structure_properties(run);
  return run.take();
}

}  // namespace bnl
