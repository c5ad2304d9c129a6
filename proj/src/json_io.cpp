#include "bnl/json_io.hpp"

#include <fstream>

namespace bnl {

using nlohmann::json;

namespace {

json settings_json(SettingsMask s, int n) {
  json arr = json::array();
  for (int i = 0; i < n; ++i) arr.push_back(setting_of(s, i));
  return arr;
}

json outcomes_json(OutcomeMask o, int n) {
  json arr = json::array();
  for (int i = 0; i < n; ++i) arr.push_back(outcome_sign(o, i) > 0 ? "+" : "-");
  return arr;
}

}  // namespace

json behavior_to_json(const Behavior& behavior) {
  const auto& sc = behavior.scenario();
  const int n = sc.num_parties();
  json table = json::array();
  for (SettingsMask s = 0; s < sc.num_settings(); ++s) {
    for (OutcomeMask o = 0; o < sc.num_outcomes(); ++o) {
      table.push_back(
          {{"settings", settings_json(s, n)}, {"outcomes", outcomes_json(o, n)}, {"p", behavior.p(s, o)}});
    }
  }
  return {{"n", n}, {"table", std::move(table)}};
}

Behavior behavior_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    const Scenario sc(n);
    std::vector<Behavior::Entry> entries;
    for (const auto& e : j.at("table")) {
      const auto& settings = e.at("settings");
      const auto& outcomes = e.at("outcomes");
      if (settings.size() != static_cast<std::size_t>(n) ||
          outcomes.size() != static_cast<std::size_t>(n)) {
        throw StructuralError("table entry must list one setting and one outcome per party");
      }
      Behavior::Entry entry{0, 0, e.at("p").get<double>()};
      for (int i = 0; i < n; ++i) {
        const int x = settings[i].get<int>();
        if (x != 0 && x != 1) throw StructuralError("settings must be 0 or 1");
        if (x) entry.settings |= SettingsMask{1} << i;
        const auto sign = outcomes[i].get<std::string>();
        if (sign == "-") entry.outcomes |= OutcomeMask{1} << i;
        else if (sign != "+") throw StructuralError("outcomes must be \"+\" or \"-\"");
      }
      entries.push_back(entry);
    }
    return Behavior::from_entries(sc, entries);
  } catch (const json::exception& e) {
    throw StructuralError(std::string("malformed behavior JSON: ") + e.what());
  }
}

json vertex_set_to_json(const VertexSet& set) {
  json arr = json::array();
  for (const auto& v : set.vertices) arr.push_back(behavior_to_json(v));
  return arr;
}

json membership_to_json(const MembershipResult& result, const Scenario& scenario) {
  json out = {{"member", result.member}, {"gap", result.gap}};
  json weights = json::array();
  for (const auto& [index, q] : result.weights) weights.push_back({{"vertex", index}, {"q", q}});
  out["weights"] = std::move(weights);
  json cert = json::array();
  if (!result.certificate.empty()) {
    const int n = scenario.num_parties();
    for (SettingsMask s = 0; s < scenario.num_settings(); ++s) {
      for (OutcomeMask o = 0; o < scenario.num_outcomes(); ++o) {
        cert.push_back({{"settings", settings_json(s, n)},
                        {"outcomes", outcomes_json(o, n)},
                        {"c", result.certificate[scenario.index(s, o)]}});
      }
    }
    out["certificate_value"] = result.certificate_value;
    out["vertex_maximum"] = result.vertex_maximum;
  } else {
    out["reconstruction_error"] = result.reconstruction_error;
  }
  out["certificate"] = std::move(cert);
  return out;
}

json params_to_json(const MeasurementParams& params) {
  return {{"alpha", params.alpha}, {"beta", params.beta}, {"gamma", params.gamma}, {"phi", params.phi}};
}

MeasurementParams params_from_json(const json& j) {
  try {
    MeasurementParams p;
    p.alpha = j.at("alpha").get<double>();
    p.beta = j.at("beta").get<double>();
    p.gamma = j.at("gamma").get<double>();
    p.phi = j.at("phi").get<std::vector<double>>();
    return p;
  } catch (const json::exception& e) {
    throw StructuralError(std::string("malformed measurement parameters: ") + e.what());
  }
}

Behavior read_behavior_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw StructuralError("cannot parse " + path + ": " + e.what());
  }
  return behavior_from_json(j);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace bnl
