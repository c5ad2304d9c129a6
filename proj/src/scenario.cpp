#include "bnl/scenario.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "bits.hpp"

namespace bnl {

using detail::deposit_bits;
using detail::extract_bits;

Scenario::Scenario(int num_parties) : n_(num_parties) {
  if (num_parties < 1 || num_parties > kMaxParties) {
    throw StructuralError("number of parties must be in [1, " + std::to_string(kMaxParties) +
                          "], got " + std::to_string(num_parties));
  }
}

Behavior::Behavior(Scenario scenario, std::vector<double> table)
    : scenario_(scenario), table_(std::move(table)) {
  if (table_.size() != scenario_.table_size()) {
    throw StructuralError("behavior table has " + std::to_string(table_.size()) +
                          " entries, expected " + std::to_string(scenario_.table_size()));
  }
}

Behavior Behavior::from_entries(Scenario scenario, std::span<const Entry> entries) {
  std::vector<double> table(scenario.table_size(), 0.0);
  std::vector<char> seen(scenario.table_size(), 0);
  const auto limit = static_cast<std::uint32_t>(scenario.num_settings());
  for (const auto& e : entries) {
    if (e.settings >= limit || e.outcomes >= limit) {
      throw StructuralError("table entry out of range for n = " +
                            std::to_string(scenario.num_parties()));
    }
    const auto idx = scenario.index(e.settings, e.outcomes);
    if (seen[idx]) {
      throw StructuralError("duplicate table entry for settings " + std::to_string(e.settings) +
                            ", outcomes " + std::to_string(e.outcomes));
    }
    seen[idx] = 1;
    table[idx] = e.p;
  }
  std::ostringstream missing;
  std::size_t count = 0;
  for (SettingsMask s = 0; s < limit; ++s) {
    for (OutcomeMask o = 0; o < limit; ++o) {
      if (seen[scenario.index(s, o)]) continue;
      if (count < 16) {
        missing << (count ? ", " : "") << "(settings=" << s << ", outcomes=" << o << ")";
      }
      ++count;
    }
  }
  if (count) {
    throw StructuralError("behavior is missing " + std::to_string(count) +
                          " table entries: " + missing.str() + (count > 16 ? ", ..." : ""));
  }
  return Behavior(scenario, std::move(table));
}

Behavior Behavior::uniform(Scenario scenario) {
  const double p = 1.0 / static_cast<double>(scenario.num_outcomes());
  return Behavior(scenario, std::vector<double>(scenario.table_size(), p));
}

Behavior mix(double q, const Behavior& first, const Behavior& second) {
  if (!(first.scenario() == second.scenario())) {
    throw StructuralError("cannot mix behaviors of different scenarios");
  }
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("mixing weight must lie in [0, 1]");
  std::vector<double> table(first.table().size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i] = q * first.table()[i] + (1.0 - q) * second.table()[i];
  }
  return Behavior(first.scenario(), std::move(table));
}

ValidationReport validate(const Behavior& behavior, double tol) {
  ValidationReport report;
  const auto& sc = behavior.scenario();
  for (SettingsMask s = 0; s < sc.num_settings(); ++s) {
    double sum = 0.0;
    for (OutcomeMask o = 0; o < sc.num_outcomes(); ++o) {
      const double p = behavior.p(s, o);
      if (!std::isfinite(p)) {
        report.max_range_violation = INFINITY;
        report.problems.push_back("non-finite entry at settings " + std::to_string(s));
        continue;
      }
      const double below = -p;
      const double above = p - 1.0;
      report.max_range_violation = std::max({report.max_range_violation, below, above});
      sum += p;
    }
    const double dev = std::abs(sum - 1.0);
    if (dev > tol) {
      std::ostringstream msg;
      msg << "settings " << s << " sum to " << sum;
      report.problems.push_back(msg.str());
    }
    report.max_normalization_deviation = std::max(report.max_normalization_deviation, dev);
  }
  if (report.max_range_violation > tol) {
    report.problems.push_back("entries outside [0, 1] by " +
                              std::to_string(report.max_range_violation));
  }
  report.ok = report.problems.empty();
  return report;
}

double marginal_dependence(const Behavior& behavior, PartyMask parties,
                           SettingsMask* worst_settings) {
  const auto& sc = behavior.scenario();
  const PartyMask rest = sc.all_parties() & ~parties;
  const int k = std::popcount(parties);
  const std::size_t kept = std::size_t{1} << k;
  const std::size_t free_settings = std::size_t{1} << std::popcount(rest);

  double worst = 0.0;
  std::vector<double> lo(kept), hi(kept), acc(kept);
  for (SettingsMask ks = 0; ks < kept; ++ks) {
    std::fill(lo.begin(), lo.end(), INFINITY);
    std::fill(hi.begin(), hi.end(), -INFINITY);
    for (SettingsMask rs = 0; rs < free_settings; ++rs) {
      const SettingsMask s = deposit_bits(ks, parties) | deposit_bits(rs, rest);
      std::fill(acc.begin(), acc.end(), 0.0);
      for (OutcomeMask o = 0; o < sc.num_outcomes(); ++o) {
        acc[extract_bits(o, parties)] += behavior.p(s, o);
      }
      for (std::size_t j = 0; j < kept; ++j) {
        lo[j] = std::min(lo[j], acc[j]);
        hi[j] = std::max(hi[j], acc[j]);
      }
    }
    for (std::size_t j = 0; j < kept; ++j) {
      if (hi[j] - lo[j] > worst) {
        worst = hi[j] - lo[j];
        if (worst_settings) *worst_settings = deposit_bits(ks, parties);
      }
    }
  }
  return worst;
}

std::string NoSignalingReport::describe() const {
  std::ostringstream os;
  os << (is_no_signaling ? "no-signaling" : "signaling") << ", max deviation " << max_deviation;
  if (worst_parties) {
    os << " on marginal of parties {";
    bool first = true;
    for (int i = 0; i < kMaxParties; ++i) {
      if (!((worst_parties >> i) & 1u)) continue;
      os << (first ? "" : ",") << (i + 1) << ":X=" << setting_of(worst_settings, i);
      first = false;
    }
    os << "}";
  }
  return os.str();
}

NoSignalingReport no_signaling_report(const Behavior& behavior, double tol) {
  NoSignalingReport report;
  const PartyMask all = behavior.scenario().all_parties();
  for (PartyMask subset = 1; subset < all; ++subset) {
    SettingsMask ws = 0;
    const double dev = marginal_dependence(behavior, subset, &ws);
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_parties = subset;
      report.worst_settings = ws;
    }
  }
  report.is_no_signaling = report.max_deviation <= tol;
  return report;
}

Behavior marginal(const Behavior& behavior, PartyMask parties, double tol) {
  const auto& sc = behavior.scenario();
  if (parties == 0 || (parties & ~sc.all_parties())) {
    throw StructuralError("marginal requires a nonempty subset of the scenario's parties");
  }
  SettingsMask ws = 0;
  const double dev = marginal_dependence(behavior, parties, &ws);
  if (dev > tol) {
    NoSignalingReport report;
    report.is_no_signaling = false;
    report.max_deviation = dev;
    report.worst_parties = parties;
    report.worst_settings = ws;
    throw SignalingError("marginal depends on the settings of the remaining parties", report);
  }
  const Scenario sub(std::popcount(parties));
  std::vector<double> table(sub.table_size(), 0.0);
  for (SettingsMask ks = 0; ks < sub.num_settings(); ++ks) {
    // Remaining parties are pinned to setting 0.
    const SettingsMask s = deposit_bits(ks, parties);
    for (OutcomeMask o = 0; o < sc.num_outcomes(); ++o) {
      table[sub.index(ks, extract_bits(o, parties))] += behavior.p(s, o);
    }
  }
  return Behavior(sub, std::move(table));
}

double correlator(const Behavior& behavior, SettingsMask settings) {
  double value = 0.0;
  for (OutcomeMask o = 0; o < behavior.scenario().num_outcomes(); ++o) {
    const double sign = (std::popcount(o) & 1) ? -1.0 : 1.0;
    value += sign * behavior.p(settings, o);
  }
  return value;
}

PartyMask party_mask(std::initializer_list<int> parties) {
  PartyMask m = 0;
  for (int p : parties) {
    if (p < 0 || p >= kMaxParties) throw StructuralError("party index out of range");
    m |= PartyMask{1} << p;
  }
  return m;
}

}  // namespace bnl
