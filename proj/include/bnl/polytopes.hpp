#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bnl/expressions.hpp"
#include "bnl/lp.hpp"
#include "bnl/scenario.hpp"

namespace bnl {

enum class ModelKind { Local, BL, TOBL, NSBL, BC1, OneWay };

// A correlation class. For BC1, `first_party` optionally restricts the hull
// to the vertices where that party (0-based) is measured first and
// broadcasts. For OneWay, information flows sender -> receiver.
struct ModelClass {
  ModelKind kind = ModelKind::Local;
  int sender = 0;
  int receiver = 1;
  std::optional<int> first_party;

  static ModelClass local() { return {ModelKind::Local, 0, 1, std::nullopt}; }
  static ModelClass bilocal() { return {ModelKind::BL, 0, 1, std::nullopt}; }
  static ModelClass time_ordered_bilocal() { return {ModelKind::TOBL, 0, 1, std::nullopt}; }
  static ModelClass no_signaling_bilocal() { return {ModelKind::NSBL, 0, 1, std::nullopt}; }
  static ModelClass broadcast(std::optional<int> first = std::nullopt) {
    return {ModelKind::BC1, 0, 1, first};
  }
  static ModelClass one_way(int sender, int receiver) {
    return {ModelKind::OneWay, sender, receiver, std::nullopt};
  }

  friend bool operator==(const ModelClass&, const ModelClass&) = default;
};

// Parses "Local", "BL", "TOBL", "NSBL", "BC1", "BC1[2]" (party 2 first) and
// "OneWay(1,2)". Party numbers in the text are 1-based.
ModelClass parse_model(std::string_view text);
std::string to_string(const ModelClass& model);

struct VertexSet {
  ModelClass model;
  Scenario scenario;
  std::vector<Behavior> vertices;
};

// Calls `visit` for every extremal behavior generated by the model's response
// functions, before deduplication. Throws UnsupportedError for (model, n)
// combinations without a vertex model.
void for_each_vertex(const ModelClass& model, const Scenario& scenario,
                     const std::function<void(const Behavior&)>& visit);

// Deduplicated vertex list, in order of first generation.
VertexSet enumerate_vertices(const ModelClass& model, const Scenario& scenario);

// The 24 extremal no-signaling boxes of the bipartite binary scenario: 16
// local deterministic boxes followed by 8 PR-type boxes.
std::vector<Behavior> bipartite_no_signaling_extremal_boxes();

struct BoundResult {
  double value = 0.0;  // rounded to 12 decimals
  double raw_value = 0.0;
  Behavior witness;
  std::size_t witness_index = 0;  // index in generation order
};

// Maximum of the expression over the model's vertices.
BoundResult bound(const Expression& expr, const ModelClass& model);

// Rounds to 12 decimal places.
double round12(double value);

struct MembershipResult {
  bool member = false;
  // (vertex index, weight) for the nonzero weights.
  std::vector<std::pair<std::size_t, double>> weights;
  double reconstruction_error = 0.0;
  // Separating functional over table entries for non-members:
  // certificate . behavior exceeds the maximum over vertices by `gap`.
  std::vector<double> certificate;
  double certificate_value = 0.0;
  double vertex_maximum = 0.0;
  double gap = 0.0;
  std::size_t lp_iterations = 0;
};

MembershipResult membership(const Behavior& behavior, const VertexSet& vertices,
                            double tol = 1e-7);
MembershipResult membership(const Behavior& behavior, const ModelClass& model,
                            double tol = 1e-7);

// Maximum of the expression over the convex hull, solved as an LP over
// (behavior, weights) variables. Independent cross-check of `bound`.
double lp_bound(const Expression& expr, const VertexSet& vertices);

// Constraint system of the membership LP: one row per table entry plus the
// normalization row, one column per vertex.
DenseMatrix membership_matrix(const VertexSet& vertices);

}  // namespace bnl
