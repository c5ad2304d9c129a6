#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bnl {

enum class Comparison {
  Within,       // |actual - expected| <= tolerance
  GreaterThan,  // actual > expected
  LessThan,     // actual < expected
};

struct Check {
  std::string criterion;  // e.g. "C1"
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::Within;
  bool passed = false;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 1;
  std::vector<Check> checks;

  bool passed() const;
  nlohmann::json to_json() const;
  std::string to_table() const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int restarts = 64;
  int random_expressions = 100;
  // Fault injection: drop the BC1 vertices whose first-measured party is this
  // one (0-based) from every BC1 computation.
  std::optional<int> drop_bc1_family;
  // Criteria to run ("C1".."C7"); empty runs all.
  std::vector<std::string> only;
};

// Runs the reproduction checks. Individual failures are recorded, never thrown.
VerifyReport run_paper_suite(const VerifyOptions& options = {});

}  // namespace bnl
