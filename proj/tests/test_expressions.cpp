#include <gtest/gtest.h>

#include <cmath>

#include "bnl/expressions.hpp"
#include "bnl/quantum.hpp"
#include "test_support.hpp"

using namespace bnl;

TEST(Builtins, UniformValues) {
  const auto u3 = Behavior::uniform(Scenario(3));
  EXPECT_NEAR(evaluate(builtin("S3"), u3), 0.0, 1e-12);
  EXPECT_NEAR(evaluate(builtin("Sprime"), u3), 0.5, 1e-12);
  EXPECT_NEAR(evaluate(builtin("S'"), u3), 0.5, 1e-12);
  EXPECT_NEAR(evaluate(builtin("I"), u3), 0.5, 1e-12);
  EXPECT_NEAR(evaluate(builtin("R3"), u3), -0.625, 1e-12);
  EXPECT_NEAR(evaluate(builtin("T"), u3), 1.0, 1e-12);
  EXPECT_NEAR(evaluate(builtin("B"), u3), 0.0, 1e-12);
  EXPECT_NEAR(evaluate(builtin("Mermin3"), u3), 0.0, 1e-12);
}

TEST(Builtins, R3Shape) {
  const auto r3 = builtin("R3");
  EXPECT_EQ(r3.terms().size(), 7u);
  EXPECT_FALSE(r3.has_partial_terms());
  EXPECT_TRUE(builtin("T", 3).has_partial_terms());
  EXPECT_FALSE(builtin("T", 2).has_partial_terms());
}

TEST(Builtins, RNAtThreeMatchesR3) {
  const auto r3 = builtin("R3");
  const auto rn = builtin("RN", 3);
  ASSERT_EQ(rn.terms().size(), r3.terms().size());
  for (std::size_t i = 0; i < r3.terms().size(); ++i) {
    EXPECT_EQ(rn.terms()[i].coefficient, r3.terms()[i].coefficient);
    EXPECT_EQ(rn.terms()[i].factors, r3.terms()[i].factors);
  }
}

TEST(Builtins, RNTermCount) {
  for (int n = 3; n <= 8; ++n) EXPECT_EQ(builtin("RN", n).terms().size(), std::size_t(2 * n + 1));
  EXPECT_THROW(builtin("RN", 2), Error);
  EXPECT_THROW(builtin("RN", 9), Error);
}

TEST(Builtins, UnknownName) {
  EXPECT_THROW(builtin("Q9"), Error);
  EXPECT_FALSE(builtin_names().empty());
}

TEST(Builtins, MerminOnGhz) {
  EXPECT_NEAR(evaluate(builtin("Mermin3"), ghz_paper_correlation(3)), 4.0, 1e-12);
}

TEST(Builtins, IEqualsS3PlusSprime) {
  std::mt19937_64 rng(2);
  const auto i = builtin("I");
  const auto sum = builtin("S3") + builtin("Sprime");
  for (int k = 0; k < 20; ++k) {
    const auto b = fixtures::random_quantum_behavior(3, rng);
    EXPECT_NEAR(evaluate(i, b), evaluate(sum, b), 1e-12);
  }
}

TEST(Parse, ProbabilityTerm) {
  const auto e = parse_expression("P(a1^0+, a2^1-)", 2);
  ASSERT_EQ(e.terms().size(), 1u);
  EXPECT_EQ(e.terms()[0].factors.size(), 2u);
  EXPECT_EQ(e.terms()[0].factors[1], (Factor{1, 1, -1}));
}

TEST(Parse, CorrelatorExpandsToSignedEvents) {
  const auto e = parse_expression("<a1^0 a2^1 a3^0>", 3);
  EXPECT_EQ(e.terms().size(), 8u);
  EXPECT_NEAR(evaluate(e, ghz_paper_correlation(3)), correlator(ghz_paper_correlation(3), 0b010),
              1e-12);
}

TEST(Parse, Coefficients) {
  const auto e = parse_expression("0.5*P(a1^0+) - 2*P(a2^1-)", 2);
  ASSERT_EQ(e.terms().size(), 2u);
  EXPECT_EQ(e.terms()[0].coefficient, 0.5);
  EXPECT_EQ(e.terms()[1].coefficient, -2.0);
}

TEST(Parse, ChshLocalValueOnUniform) {
  const auto chsh = parse_expression("<a1^0 a2^0> + <a1^0 a2^1> + <a1^1 a2^0> - <a1^1 a2^1>", 2);
  EXPECT_NEAR(evaluate(chsh, Behavior::uniform(Scenario(2))), 0.0, 1e-12);
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    parse_expression("P(a1^0+", 3);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
  EXPECT_THROW(parse_expression("P(a1^2+)", 3), ParseError);
  EXPECT_THROW(parse_expression("P(a1^0*)", 3), ParseError);
  EXPECT_THROW(parse_expression("P(a4^0+)", 3), Error);
  EXPECT_THROW(parse_expression("P(a1^0+, a1^1-)", 3), Error);
  EXPECT_THROW(parse_expression("", 3), ParseError);
}

TEST(Render, RoundTripPreservesValues) {
  std::mt19937_64 rng(9);
  for (const auto& name : {"S3", "Sprime", "I", "R3", "T", "B", "Mermin3"}) {
    const auto e = builtin(name);
    const auto back = parse_expression(render(e), e.scenario().num_parties());
    for (int k = 0; k < 20; ++k) {
      const auto b = fixtures::random_quantum_behavior(3, rng);
      EXPECT_NEAR(evaluate(e, b), evaluate(back, b), 1e-12) << name;
    }
  }
}

TEST(Evaluate, PartialTermsRejectSignaling) {
  Scenario s(3);
  std::vector<double> table(64, 0.0);
  // party 2 copies party 3's setting
  for (SettingsMask x = 0; x < 8; ++x) table[s.index(x, (x & 4u) ? 0b010u : 0u)] = 1.0;
  const Behavior b(s, table);
  EXPECT_THROW(evaluate(builtin("T", 3), b), SignalingError);
  EXPECT_NO_THROW(evaluate(builtin("S3"), b));
  EXPECT_NO_THROW(evaluate_table(builtin("T", 3), b));
}

TEST(Evaluate, ScenarioMismatchThrows) {
  EXPECT_THROW(evaluate(builtin("S3"), Behavior::uniform(Scenario(2))), StructuralError);
}

TEST(Evaluate, LinearInBehavior) {
  std::mt19937_64 rng(4);
  const auto r3 = builtin("R3");
  for (int k = 0; k < 20; ++k) {
    const auto a = fixtures::random_quantum_behavior(3, rng);
    const auto b = fixtures::random_quantum_behavior(3, rng);
    const auto m = mix(0.3, a, b);
    EXPECT_NEAR(evaluate(r3, m), 0.3 * evaluate(r3, a) + 0.7 * evaluate(r3, b), 1e-12);
  }
}

TEST(Evaluate, BoundedByAlgebraicMaximum) {
  std::mt19937_64 rng(6);
  for (const auto& name : {"S3", "Sprime", "I", "R3", "Mermin3"}) {
    const auto e = builtin(name);
    for (int k = 0; k < 20; ++k)
      EXPECT_LE(evaluate_table(e, fixtures::random_behavior(3, rng)), e.algebraic_maximum() + 1e-12);
  }
}

TEST(ExpressionFromSpec, NamesAndText) {
  EXPECT_EQ(expression_from_spec("RN:5").scenario().num_parties(), 5);
  EXPECT_EQ(expression_from_spec("S3").terms().size(), builtin("S3").terms().size());
  EXPECT_EQ(expression_from_spec("P(a1^0+)", 2).scenario().num_parties(), 2);
}
