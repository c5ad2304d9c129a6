#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bnl/polytopes.hpp"
#include "bnl/quantum.hpp"
#include "test_support.hpp"

using namespace bnl;

namespace {

std::size_t raw_count(const ModelClass& model, int n) {
  std::size_t count = 0;
  for_each_vertex(model, Scenario(n), [&](const Behavior&) { ++count; });
  return count;
}

// Deterministic tripartite behavior from a response function of the settings.
template <class F>
Behavior deterministic(F outcomes) {
  Scenario s(3);
  std::vector<double> table(s.table_size(), 0.0);
  for (SettingsMask x = 0; x < 8; ++x) table[s.index(x, outcomes(x))] = 1.0;
  return Behavior(s, table);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST(Vertices, RawCounts) {
  EXPECT_EQ(raw_count(ModelClass::local(), 3), 64u);
  EXPECT_EQ(raw_count(ModelClass::local(), 2), 16u);
  EXPECT_EQ(raw_count(ModelClass::bilocal(), 3), 3072u);
  EXPECT_EQ(raw_count(ModelClass::time_ordered_bilocal(), 3), 1536u);
  EXPECT_EQ(raw_count(ModelClass::no_signaling_bilocal(), 3), 288u);
  EXPECT_EQ(raw_count(ModelClass::broadcast(), 3), 3072u);
  EXPECT_EQ(raw_count(ModelClass::broadcast(0), 3), 1024u);
  EXPECT_EQ(raw_count(ModelClass::one_way(0, 1), 2), 64u);
}

TEST(Vertices, DedupCounts) {
  EXPECT_EQ(enumerate_vertices(ModelClass::local(), Scenario(3)).vertices.size(), 64u);
  EXPECT_EQ(enumerate_vertices(ModelClass::bilocal(), Scenario(3)).vertices.size(), 2944u);
  EXPECT_EQ(enumerate_vertices(ModelClass::time_ordered_bilocal(), Scenario(3)).vertices.size(),
            1216u);
  EXPECT_EQ(enumerate_vertices(ModelClass::no_signaling_bilocal(), Scenario(3)).vertices.size(),
            160u);
  EXPECT_EQ(enumerate_vertices(ModelClass::broadcast(), Scenario(3)).vertices.size(), 2944u);
}

TEST(Vertices, AllValid) {
  for (const auto& model : {ModelClass::bilocal(), ModelClass::broadcast()}) {
    for_each_vertex(model, Scenario(3), [](const Behavior& b) {
      ASSERT_TRUE(validate(b, 0.0).ok);
    });
  }
}

TEST(Vertices, Unsupported) {
  EXPECT_THROW(enumerate_vertices(ModelClass::bilocal(), Scenario(4)), UnsupportedError);
  EXPECT_THROW(enumerate_vertices(ModelClass::broadcast(), Scenario(4)), UnsupportedError);
  EXPECT_THROW(enumerate_vertices(ModelClass::local(), Scenario(7)), UnsupportedError);
  EXPECT_THROW(enumerate_vertices(ModelClass::one_way(0, 1), Scenario(3)), UnsupportedError);
  EXPECT_THROW(enumerate_vertices(ModelClass::one_way(0, 0), Scenario(2)), UnsupportedError);
}

TEST(NoSignalingBoxes, TwentyFourExtremalBoxes) {
  const auto boxes = bipartite_no_signaling_extremal_boxes();
  ASSERT_EQ(boxes.size(), 24u);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    EXPECT_TRUE(validate(boxes[i], 0.0).ok);
    EXPECT_TRUE(no_signaling_report(boxes[i], 0.0).is_no_signaling);
    VertexSet others{ModelClass::local(), Scenario(2), {}};
    for (std::size_t j = 0; j < boxes.size(); ++j)
      if (j != i) others.vertices.push_back(boxes[j]);
    EXPECT_FALSE(membership(boxes[i], others).member) << "box " << i << " is not extremal";
  }
}

TEST(NoSignalingBoxes, PrBoxesReachChshFour) {
  const auto chsh = parse_expression("<a1^0 a2^0> + <a1^0 a2^1> + <a1^1 a2^0> - <a1^1 a2^1>", 2);
  int at_four = 0;
  for (const auto& b : bipartite_no_signaling_extremal_boxes())
    if (std::abs(evaluate(chsh, b) - 4.0) < 1e-12) ++at_four;
  EXPECT_EQ(at_four, 1);
  EXPECT_EQ(bound(chsh, ModelClass::local()).value, 2.0);
}

TEST(Bounds, PublishedValues) {
  const struct {
    const char* expr;
    ModelClass model;
    double value;
  } cases[] = {
      {"S3", ModelClass::bilocal(), 4},       {"S3", ModelClass::broadcast(), 4},
      {"Sprime", ModelClass::bilocal(), 1},   {"Sprime", ModelClass::broadcast(), 2},
      {"I", ModelClass::bilocal(), 5},        {"I", ModelClass::broadcast(), 6},
      {"R3", ModelClass::broadcast(), 0},     {"R3", ModelClass::bilocal(), 1},
      {"T", ModelClass::broadcast(), 2},      {"T", ModelClass::bilocal(), 4},
      {"R3", ModelClass::local(), 0},         {"Mermin3", ModelClass::local(), 2},
      {"T", ModelClass::local(), 2},          {"B", ModelClass::local(), 2},
  };
  for (const auto& c : cases)
    EXPECT_EQ(bound(builtin(c.expr), c.model).value, c.value)
        << c.expr << " over " << to_string(c.model);
}

TEST(Bounds, OneWayTwoParty) {
  EXPECT_EQ(bound(builtin("T", 2), ModelClass::one_way(0, 1)).value, 2.0);
}

TEST(Bounds, WitnessAttainsBound) {
  const auto e = builtin("I");
  const auto r = bound(e, ModelClass::broadcast());
  EXPECT_NEAR(evaluate_table(e, r.witness), r.raw_value, 1e-12);
}

TEST(Bounds, MatchLpOptimum) {
  const auto set = enumerate_vertices(ModelClass::no_signaling_bilocal(), Scenario(3));
  for (const char* name : {"S3", "Sprime", "I", "R3", "T", "B", "Mermin3"}) {
    const auto e = builtin(name);
    EXPECT_NEAR(lp_bound(e, set), bound(e, ModelClass::no_signaling_bilocal()).raw_value, 1e-7)
        << name;
  }
}

TEST(NamedStrategies, BilocalStrategyGivesR3One) {
  // a answers by its setting; b,c agree iff their settings agree.
  const auto b = deterministic([](SettingsMask x) {
    const OutcomeMask a = (x & 1u) ? 1u : 0u;
    const bool y = x & 2u, z = x & 4u;
    const OutcomeMask bc = (y != z) ? 0b110u : 0u;
    return a | bc;
  });
  EXPECT_EQ(evaluate_table(builtin("R3"), b), 1.0);
  EXPECT_TRUE(membership(b, ModelClass::bilocal()).member);
}

TEST(NamedStrategies, BroadcastStrategyGivesIsix) {
  // a answers by its setting; b and c copy a's outcome.
  const auto b = deterministic([](SettingsMask x) { return (x & 1u) ? 0b111u : 0u; });
  EXPECT_EQ(evaluate_table(builtin("I"), b), 6.0);
  EXPECT_TRUE(membership(b, ModelClass::broadcast()).member);
  EXPECT_FALSE(membership(b, ModelClass::bilocal()).member);
}

TEST(Membership, SampledVerticesAreMembers) {
  const auto set = enumerate_vertices(ModelClass::broadcast(), Scenario(3));
  for (std::size_t i = 0; i < set.vertices.size(); i += 97) {
    const auto r = membership(set.vertices[i], set);
    EXPECT_TRUE(r.member);
    EXPECT_LT(r.reconstruction_error, 1e-9);
  }
}

TEST(Membership, UniformIsLocal) {
  EXPECT_TRUE(membership(Behavior::uniform(Scenario(3)), ModelClass::local()).member);
}

TEST(Membership, GhzCorrelationIsBroadcast) {
  const auto ghz = ghz_paper_correlation(3);
  EXPECT_TRUE(membership(ghz, ModelClass::broadcast()).member);
  for (int j = 0; j < 3; ++j) EXPECT_TRUE(membership(ghz, ModelClass::broadcast(j)).member);
  EXPECT_FALSE(membership(ghz, ModelClass::local()).member);
}

TEST(Membership, SvetlichnyViolationHasValidCertificate) {
  const auto [t, params] = svetlichny_settings();
  const auto b = born_behavior(ghz_state(3, t), settings_from_params(params));
  const auto set = enumerate_vertices(ModelClass::bilocal(), Scenario(3));
  const auto r = membership(b, set);
  ASSERT_FALSE(r.member);
  double vmax = -INFINITY;
  for (const auto& v : set.vertices) vmax = std::max(vmax, dot(r.certificate, v.table()));
  EXPECT_NEAR(vmax, r.vertex_maximum, 1e-9);
  EXPECT_GT(dot(r.certificate, b.table()) - vmax, 1e-7);
  EXPECT_NEAR(r.gap, dot(r.certificate, b.table()) - vmax, 1e-9);
}

TEST(Membership, ViolatingBoundImpliesNonMember) {
  // S3 value above the BL bound of 4 certifies non-membership.
  std::mt19937_64 rng(31);
  const auto set = enumerate_vertices(ModelClass::bilocal(), Scenario(3));
  const auto s3 = builtin("S3");
  const auto [t, params] = svetlichny_settings();
  const auto top = born_behavior(ghz_state(3, t), settings_from_params(params));
  for (double q : {0.9, 0.8}) {
    const auto b = mix(q, top, Behavior::uniform(Scenario(3)));
    ASSERT_GT(evaluate(s3, b), 4.0);
    EXPECT_FALSE(membership(b, set).member);
  }
  EXPECT_TRUE(membership(mix(0.5, top, Behavior::uniform(Scenario(3))), set).member);
}

TEST(Membership, ScenarioMismatch) {
  EXPECT_THROW(membership(Behavior::uniform(Scenario(2)), ModelClass::bilocal()), Error);
}

TEST(ParseModel, RoundTrip) {
  for (const char* text : {"Local", "BL", "TOBL", "NSBL", "BC1", "BC1[2]", "OneWay(1,2)"})
    EXPECT_EQ(to_string(parse_model(text)), text);
  EXPECT_EQ(parse_model("BC1[2]").first_party, 1);
  EXPECT_THROW(parse_model("XYZ"), Error);
}

TEST(Round12, Rounds) {
  EXPECT_EQ(round12(4.0000000000001), 4.0);
  EXPECT_EQ(round12(-0.0000000000001), 0.0);
}
