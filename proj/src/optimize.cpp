#include "bnl/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

namespace bnl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform doubles in [0, 1) from a splitmix64 stream; identical on every platform.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}
  double uniform() { return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

std::size_t parameter_count(SearchMode mode, int n) {
  return mode == SearchMode::PaperParametrization ? static_cast<std::size_t>(n) + 3
                                                  : 4 * static_cast<std::size_t>(n);
}

ObservableSet observables_for(SearchMode mode, std::span<const double> x) {
  if (mode == SearchMode::GeneralPerParty) return settings_from_bloch_angles(x);
  MeasurementParams p;
  p.alpha = x[0];
  p.beta = x[1];
  p.gamma = x[2];
  p.phi.assign(x.begin() + 3, x.end());
  return settings_from_params(p);
}

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

}  // namespace

MeasurementParams SearchResult::measurement_params() const {
  MeasurementParams p;
  if (mode != SearchMode::PaperParametrization || parameters.size() < 3) return p;
  p.alpha = parameters[0];
  p.beta = parameters[1];
  p.gamma = parameters[2];
  p.phi.assign(parameters.begin() + 3, parameters.end());
  return p;
}

ObservableSet SearchResult::observables() const { return observables_for(mode, parameters); }

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master ^ (0xD1B54A32D192ED03ull * (index + 1));
  splitmix64(state);
  return splitmix64(state);
}

LocalSearchResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                              std::vector<double> x0, double step, double tol,
                              int max_iterations) {
  const std::size_t k = x0.size();
  std::vector<std::vector<double>> simplex(k + 1, x0);
  for (std::size_t i = 0; i < k; ++i) simplex[i + 1][i] += step;
  std::vector<double> values(k + 1);
  for (std::size_t i = 0; i <= k; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(k + 1);
  std::vector<double> centroid(k), trial(k), trial2(k);
  int it = 0;
  for (; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[k - 1];
    if (values[worst] - values[best] <= tol) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= k; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < k; ++d) centroid[d] += simplex[i][d] / static_cast<double>(k);
    }
    auto along = [&](double coef, std::vector<double>& out) {
      for (std::size_t d = 0; d < k; ++d) {
        out[d] = centroid[d] + coef * (simplex[worst][d] - centroid[d]);
      }
      return f(out);
    };

    const double fr = along(-1.0, trial);
    if (fr < values[best]) {
      const double fe = along(-2.0, trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    // Outside contraction if the reflection beat the worst point, else inside.
    const bool outside = fr < values[worst];
    const double fc = along(outside ? -0.5 : 0.5, trial2);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= k; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < k; ++d) {
        simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
      }
      values[i] = f(simplex[i]);
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], it};
}

SearchResult maximize(const Expression& expr, int n, double t, const SearchConfig& config,
                      std::span<const double> warm_start) {
  if (expr.scenario().num_parties() != n) {
    throw StructuralError("expression arity does not match n");
  }
  if (config.restarts < 1 || !(config.convergence_tol > 0.0)) {
    throw StructuralError("search needs restarts >= 1 and a positive tolerance");
  }
  const StateVector state = ghz_state(n, t);
  const std::size_t dims = parameter_count(config.mode, n);
  auto objective = [&](std::span<const double> x) {
    return -quantum_value(expr, state, observables_for(config.mode, x));
  };

  // Each start runs a coarse search, then re-seeds the simplex around the
  // incumbent with smaller edges to polish.
  auto local = [&](std::vector<double> x0) {
    LocalSearchResult r{std::move(x0), 0.0, 0};
    for (double step : {0.6, 0.1, 0.01}) {
      r = nelder_mead(objective, std::move(r.x), step, config.convergence_tol,
                      config.max_iterations);
    }
    return r;
  };

  SearchResult best;
  best.mode = config.mode;
  best.value = -INFINITY;
  auto consider = [&](const LocalSearchResult& r) {
    if (-r.f > best.value) {
      best.value = -r.f;
      best.parameters = r.x;
    }
  };

  if (!warm_start.empty()) {
    if (warm_start.size() != dims) throw StructuralError("warm start has the wrong dimension");
    consider(local(std::vector<double>(warm_start.begin(), warm_start.end())));
  }
  for (int r = 0; r < config.restarts; ++r) {
    Stream stream(split_seed(config.seed, static_cast<std::uint64_t>(r)));
    std::vector<double> x0(dims);
    for (auto& v : x0) v = kTwoPi * stream.uniform();
    consider(local(std::move(x0)));
  }
  for (auto& p : best.parameters) p = wrap_angle(p);
  return best;
}

std::vector<double> default_grid(int points) {
  std::vector<double> grid;
  for (int k = 1; k <= points; ++k) grid.push_back(k * (std::numbers::pi / 4) / points);
  return grid;
}

Curve sweep(const Expression& expr, int n, std::span<const double> t_grid,
            const SearchConfig& config) {
  if (t_grid.empty()) throw StructuralError("sweep grid is empty");
  Curve curve;
  curve.n = n;
  curve.mode = config.mode;
  double previous = 0.0;
  std::vector<double> warm;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    if (!(t > 0.0) || t > std::numbers::pi / 4 + 1e-12 || (i > 0 && !(t > previous))) {
      throw StructuralError("sweep grid must be strictly increasing within (0, pi/4]");
    }
    previous = t;
    SearchConfig point_config = config;
    point_config.seed = split_seed(config.seed, 1000 + i);
    const auto result = maximize(expr, n, t, point_config, warm);
    warm = result.parameters;
    curve.points.push_back({t, result.value, result.parameters});
  }
  return curve;
}

std::string curve_to_csv(const Curve& curve) {
  std::string out = "t,value";
  if (curve.mode == SearchMode::PaperParametrization) {
    out += ",alpha,beta,gamma";
    for (int i = 1; i <= curve.n; ++i) out += ",phi" + std::to_string(i);
  } else {
    for (int i = 1; i <= curve.n; ++i) {
      const auto s = std::to_string(i);
      out += ",theta0_" + s + ",phi0_" + s + ",theta1_" + s + ",phi1_" + s;
    }
  }
  out += '\n';
  char buf[48];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%.12f,%.12f", p.t, p.value);
    out += buf;
    for (double v : p.parameters) {
      std::snprintf(buf, sizeof buf, ",%.12f", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

double appendix_branch1(double t, double chi, double gamma) {
  return std::sin(2 * t) / 8 *
             (std::cos(chi) - 3 * std::cos(chi + gamma) - 3 * std::cos(chi + 2 * gamma)) -
         5.0 / 8.0;
}

namespace {

struct Branch2Angles {
  double cos_a;
  double cos_b;
};

Branch2Angles branch2_angles(double t) {
  const double w = 2 * t - t * t;
  if (!(w >= 0.0)) throw DomainError("branch 2 needs 2t - t^2 >= 0");
  const double s2 = std::sin(2 * t);
  const double denom =
      2 * t * std::cos(2 * t) + 4 * std::sin(t) * std::sin(t) + (w + 2 * std::sqrt(w)) * s2;
  const double cos_b = w * std::cos(2 * t) / denom;
  if (!(std::abs(cos_b) <= 1.0)) throw DomainError("branch 2 needs |cos b| <= 1");
  const double cos_a = t - 1;
  if (std::abs(cos_a) > 1.0) throw DomainError("branch 2 needs |t - 1| <= 1");
  return {cos_a, cos_b};
}

}  // namespace

double appendix_branch2(double t) {
  const auto [cos_a, cb] = branch2_angles(t);
  (void)cos_a;
  const double w = 2 * t - t * t;
  const double sb = std::sqrt(1 - cb * cb);
  const double s = std::sin(t), c = std::cos(t);
  const double u = t - 2;
  return s * s / 8 * (3 * (cb - 1) * u * u + 3 * (cb + 1) * (cb + 1) * u - u * u * u) -
         c * c / 8 * (3 * t * t * (cb + 1) + 3 * t * (cb - 1) * (cb - 1) - t * t * t) -
         std::sin(2 * t) / 8 * (std::pow(w, 1.5) - 3 * sb * w - 3 * sb * sb * std::sqrt(w));
}

MeasurementParams appendix_branch2_params(double t, int n) {
  const auto [cos_a, cos_b] = branch2_angles(t);
  MeasurementParams p;
  p.alpha = -std::acos(cos_a);
  p.beta = -std::acos(cos_b);
  p.gamma = 0.0;
  p.phi.assign(static_cast<std::size_t>(n), 0.0);
  return p;
}

double r3_threshold() { return 0.5 * std::asin(0.625 / 0.6614); }

}  // namespace bnl
