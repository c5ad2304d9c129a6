#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bnl/polytopes.hpp"
#include "bnl/quantum.hpp"
#include "bnl/scenario.hpp"

namespace bnl {

// {"n": N, "table": [{"settings": [0,1,..], "outcomes": ["+","-",..], "p": 0.125}, ...]}
// Entries are listed by settings, then outcomes, in the packed-integer order.
nlohmann::json behavior_to_json(const Behavior& behavior);
// Missing or duplicate entries raise StructuralError; there are no implicit zeros.
Behavior behavior_from_json(const nlohmann::json& j);

nlohmann::json vertex_set_to_json(const VertexSet& set);

// {"member": bool, "gap": .., "weights": [{"vertex": i, "q": ..}],
//  "certificate": [{"settings": .., "outcomes": .., "c": ..}]}
nlohmann::json membership_to_json(const MembershipResult& result, const Scenario& scenario);

// {"alpha": .., "beta": .., "gamma": .., "phi": [..]}
nlohmann::json params_to_json(const MeasurementParams& params);
MeasurementParams params_from_json(const nlohmann::json& j);

Behavior read_behavior_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace bnl
