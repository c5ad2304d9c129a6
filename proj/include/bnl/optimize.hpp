#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bnl/expressions.hpp"
#include "bnl/quantum.hpp"

namespace bnl {

enum class SearchMode {
  // alpha, beta, gamma, phi_1..phi_N (N + 3 parameters)
  PaperParametrization,
  // independent (theta0, phi0, theta1, phi1) per party (4N parameters)
  GeneralPerParty,
};

struct SearchConfig {
  int restarts = 64;
  std::uint64_t seed = 1;
  double convergence_tol = 1e-8;
  int max_iterations = 2000;
  SearchMode mode = SearchMode::PaperParametrization;
};

struct SearchResult {
  double value = 0.0;
  std::vector<double> parameters;
  SearchMode mode = SearchMode::PaperParametrization;

  // Only meaningful in paper mode.
  MeasurementParams measurement_params() const;
  ObservableSet observables() const;
};

// Deterministic stream seed for work item `index` derived from a master seed.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

// Nelder-Mead minimisation of f from x0 with initial simplex edge `step`.
struct LocalSearchResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
};
LocalSearchResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                              std::vector<double> x0, double step, double tol, int max_iterations);

// Multi-start maximisation of the Born-rule value of `expr` on the GHZ-like
// state with angle t. `warm_start`, when given, is searched in addition to the
// random restarts.
SearchResult maximize(const Expression& expr, int n, double t, const SearchConfig& config,
                      std::span<const double> warm_start = {});

struct CurvePoint {
  double t = 0.0;
  double value = 0.0;
  std::vector<double> parameters;
};

struct Curve {
  int n = 0;
  SearchMode mode = SearchMode::PaperParametrization;
  std::vector<CurvePoint> points;
};

// `points` uniform values k * (pi/4) / points, k = 1..points.
std::vector<double> default_grid(int points = 50);

Curve sweep(const Expression& expr, int n, std::span<const double> t_grid,
            const SearchConfig& config);

// CSV with header t,value,alpha,beta,gamma,phi1..phiN (paper mode) or
// t,value,theta0_1,phi0_1,theta1_1,phi1_1,... (general mode).
std::string curve_to_csv(const Curve& curve);

// R3 for alpha = beta = pi/2 as a function of t, chi = sum phi_i and gamma.
double appendix_branch1(double t, double chi, double gamma);

// R3 at cos(alpha') = t - 1 with the accompanying cos(beta') ratio and
// phi_i = gamma = 0. Throws DomainError outside its domain.
double appendix_branch2(double t);

// Measurement angles that realise appendix_branch2(t) on the GHZ-like state:
// polar angles -alpha', -beta' (x components negated), phi_i = gamma = 0.
MeasurementParams appendix_branch2_params(double t, int n = 3);

// Smallest t for which branch 1 at its optimal (chi, gamma) is positive:
// asin(0.625 / 0.6614) / 2.
double r3_threshold();

}  // namespace bnl
