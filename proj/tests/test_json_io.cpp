#include <gtest/gtest.h>

#include "bnl/json_io.hpp"
#include "test_support.hpp"

using namespace bnl;

TEST(BehaviorJson, RoundTrip) {
  std::mt19937_64 rng(1);
  for (int n = 2; n <= 4; ++n) {
    const auto b = fixtures::random_behavior(n, rng);
    const auto back = behavior_from_json(nlohmann::json::parse(behavior_to_json(b).dump()));
    EXPECT_EQ(back, b);
  }
}

TEST(BehaviorJson, Format) {
  const auto j = behavior_to_json(Behavior::uniform(Scenario(2)));
  EXPECT_EQ(j["n"], 2);
  ASSERT_EQ(j["table"].size(), 16u);
  EXPECT_EQ(j["table"][0]["outcomes"], nlohmann::json::array({"+", "+"}));
}

TEST(BehaviorJson, Errors) {
  auto j = behavior_to_json(Behavior::uniform(Scenario(2)));
  auto missing = j;
  missing["table"].erase(3);
  EXPECT_THROW(behavior_from_json(missing), Error);
  auto duplicate = j;
  duplicate["table"][3] = duplicate["table"][2];
  EXPECT_THROW(behavior_from_json(duplicate), Error);
  auto bad_sign = j;
  bad_sign["table"][0]["outcomes"][0] = "x";
  EXPECT_THROW(behavior_from_json(bad_sign), Error);
  EXPECT_THROW(behavior_from_json(nlohmann::json::object()), Error);
}

TEST(ParamsJson, RoundTrip) {
  MeasurementParams p{0.1, 0.2, 0.3, {0.4, 0.5, 0.6}};
  const auto back = params_from_json(params_to_json(p));
  EXPECT_EQ(back.alpha, p.alpha);
  EXPECT_EQ(back.gamma, p.gamma);
  EXPECT_EQ(back.phi, p.phi);
}

TEST(MembershipJson, MemberAndNonMember) {
  const auto yes = membership(Behavior::uniform(Scenario(3)), ModelClass::local());
  const auto jy = membership_to_json(yes, Scenario(3));
  EXPECT_TRUE(jy["member"].get<bool>());
  EXPECT_FALSE(jy["weights"].empty());

  const auto no = membership(ghz_paper_correlation(3), ModelClass::local());
  const auto jn = membership_to_json(no, Scenario(3));
  EXPECT_FALSE(jn["member"].get<bool>());
  EXPECT_GT(jn["gap"].get<double>(), 0.0);
  EXPECT_FALSE(jn["certificate"].empty());
}
