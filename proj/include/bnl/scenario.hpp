#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bnl/errors.hpp"

namespace bnl {

inline constexpr int kMaxParties = 8;
inline constexpr double kExactTolerance = 1e-12;
inline constexpr double kNumericTolerance = 1e-9;

// Settings and outcomes of all parties packed into N-bit integers. Bit i
// belongs to party i (0-based). For outcomes a clear bit is "+" (+1) and a
// set bit is "-" (-1).
using SettingsMask = std::uint32_t;
using OutcomeMask = std::uint32_t;
using PartyMask = std::uint32_t;

inline int outcome_sign(OutcomeMask outcomes, int party) {
  return ((outcomes >> party) & 1u) ? -1 : +1;
}

inline int setting_of(SettingsMask settings, int party) {
  return static_cast<int>((settings >> party) & 1u);
}

// N-party scenario with two dichotomic measurements per party.
class Scenario {
 public:
  // 1 <= n <= kMaxParties. Single-party scenarios only arise as marginals.
  explicit Scenario(int num_parties);

  int num_parties() const { return n_; }
  std::size_t num_settings() const { return std::size_t{1} << n_; }
  std::size_t num_outcomes() const { return std::size_t{1} << n_; }
  std::size_t table_size() const { return num_settings() * num_outcomes(); }
  std::size_t index(SettingsMask settings, OutcomeMask outcomes) const {
    return (static_cast<std::size_t>(settings) << n_) | outcomes;
  }
  PartyMask all_parties() const { return (PartyMask{1} << n_) - 1; }

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  int n_;
};

// Full conditional probability table P(outcomes | settings).
class Behavior {
 public:
  Behavior(Scenario scenario, std::vector<double> table);

  struct Entry {
    SettingsMask settings;
    OutcomeMask outcomes;
    double p;
  };
  // Builds a table from explicit entries. Every (settings, outcomes) pair must
  // appear exactly once; missing keys raise StructuralError listing them.
  static Behavior from_entries(Scenario scenario, std::span<const Entry> entries);

  static Behavior uniform(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  int num_parties() const { return scenario_.num_parties(); }
  std::span<const double> table() const { return table_; }
  double p(SettingsMask settings, OutcomeMask outcomes) const {
    return table_[scenario_.index(settings, outcomes)];
  }

  friend bool operator==(const Behavior&, const Behavior&) = default;

 private:
  Scenario scenario_;
  std::vector<double> table_;
};

// q * first + (1 - q) * second.
Behavior mix(double q, const Behavior& first, const Behavior& second);

struct ValidationReport {
  bool ok = true;
  double max_normalization_deviation = 0.0;
  double max_range_violation = 0.0;
  std::vector<std::string> problems;

  double deviation() const {
    return max_normalization_deviation > max_range_violation ? max_normalization_deviation
                                                             : max_range_violation;
  }
};

ValidationReport validate(const Behavior& behavior, double tol = kNumericTolerance);

struct NoSignalingReport {
  bool is_no_signaling = true;
  double max_deviation = 0.0;
  // Worst marginal: the parties kept, and their settings.
  PartyMask worst_parties = 0;
  SettingsMask worst_settings = 0;

  std::string describe() const;
};

NoSignalingReport no_signaling_report(const Behavior& behavior, double tol = kNumericTolerance);

// Largest change of the marginal on `parties` when the settings of the other
// parties vary.
double marginal_dependence(const Behavior& behavior, PartyMask parties,
                           SettingsMask* worst_settings = nullptr);

class SignalingError : public Error {
 public:
  SignalingError(const std::string& what, NoSignalingReport report)
      : Error(what + ": " + report.describe()), report_(report) {}
  const NoSignalingReport& report() const { return report_; }

 private:
  NoSignalingReport report_;
};

// Behavior of the sub-scenario formed by `parties` (ascending index order).
// Throws SignalingError when that marginal depends on the other parties'
// settings by more than tol.
Behavior marginal(const Behavior& behavior, PartyMask parties, double tol = kNumericTolerance);

// Sum over outcomes of (product of signs) * P(outcomes | settings).
double correlator(const Behavior& behavior, SettingsMask settings);

PartyMask party_mask(std::initializer_list<int> parties);

}  // namespace bnl
