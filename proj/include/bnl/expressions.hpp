#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bnl/scenario.hpp"

namespace bnl {

// One party's part of a joint event: measuring `setting` gives `sign`.
struct Factor {
  int party;    // 0-based
  int setting;  // 0 or 1
  int sign;     // +1 or -1

  friend bool operator==(const Factor&, const Factor&) = default;
};

// coefficient * P(factors). Factors may cover any nonempty subset of parties.
struct Term {
  double coefficient = 1.0;
  std::vector<Factor> factors;
};

// Linear functional over behaviors: the left-hand side of a Bell-type inequality.
class Expression {
 public:
  Expression(std::string name, Scenario scenario, std::vector<Term> terms);

  const std::string& name() const { return name_; }
  const Scenario& scenario() const { return scenario_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool has_partial_terms() const;
  // Sum of positive coefficients; no behavior can exceed it.
  double algebraic_maximum() const;

 private:
  std::string name_;
  Scenario scenario_;
  std::vector<Term> terms_;
};

Expression operator+(const Expression& lhs, const Expression& rhs);

// Coefficients over table entries equivalent to `expr`. Parties missing from a
// term are evaluated at setting 0 with their outcomes summed out.
std::vector<double> dense_functional(const Expression& expr);

// Table-level evaluation with the setting-0 completion and no signaling check.
// Well defined for every table, including signaling vertices.
double evaluate_table(const Expression& expr, const Behavior& behavior);

// Evaluates expr on a behavior. Partial terms need a no-signaling behavior
// (within tol); otherwise SignalingError is thrown.
double evaluate(const Expression& expr, const Behavior& behavior,
                double tol = kNumericTolerance);

// Built-in functionals: S3, Sprime, I, R3, RN, T, B, Mermin3.
// RN takes 3 <= n <= 8; T and B accept n = 2 or 3; the rest are tripartite.
Expression builtin(std::string_view name, int n = 3);
std::vector<std::string> builtin_names();

// Parses text such as "P(a1^0+,a2^1-) - 0.5*<a1^0 a2^1 a3^0>". When n is not
// given the scenario size is the largest party index mentioned (at least 2).
Expression parse_expression(std::string_view text, std::optional<int> n = std::nullopt,
                            std::string name = "custom");

// Canonical text form accepted by parse_expression.
std::string render(const Expression& expr);

// Resolves a built-in name (optionally "RN:4"-style arity) or expression text.
Expression expression_from_spec(std::string_view spec, std::optional<int> n = std::nullopt);

}  // namespace bnl
