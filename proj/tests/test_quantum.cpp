#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bnl/quantum.hpp"
#include "test_support.hpp"

using namespace bnl;
using std::numbers::pi;

TEST(State, GhzAmplitudes) {
  const auto s = ghz_state(3, pi / 4);
  EXPECT_NEAR(std::abs(s.amplitudes()[0]), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(std::abs(s.amplitudes()[7]), std::sqrt(0.5), 1e-15);
  const auto p = ghz_state(3, 0.0);
  EXPECT_EQ(p.amplitudes()[0], Complex(1.0, 0.0));
  EXPECT_EQ(p.amplitudes()[7], Complex(0.0, 0.0));
}

TEST(State, Errors) {
  EXPECT_THROW(ghz_state(1, 0.3), Error);
  EXPECT_THROW(ghz_state(9, 0.3), Error);
  EXPECT_THROW(StateVector(2, {1.0, 1.0, 0.0, 0.0}), Error);
  EXPECT_THROW(StateVector(2, {1.0, 0.0}), Error);
}

TEST(Settings, ParamsExample) {
  MeasurementParams p{0.0, pi / 2, 0.0, {0.0, 0.0, 0.0}};
  const auto obs = settings_from_params(p);
  EXPECT_EQ(obs.num_parties(), 3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(obs.direction(i, 0).z, 1.0, 1e-15);
    EXPECT_NEAR(obs.direction(i, 1).x, 1.0, 1e-15);
  }
}

TEST(Settings, UnitNorms) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    const auto a = fixtures::random_angles(4 + 3, rng);
    const auto obs = settings_from_params({a[0], a[1], a[2], {a[3], a[4], a[5], a[6]}});
    for (int i = 0; i < 4; ++i)
      for (int x = 0; x < 2; ++x) EXPECT_NEAR(obs.direction(i, x).norm(), 1.0, 1e-12);
  }
}

TEST(Settings, RejectsNonUnit) {
  EXPECT_THROW(ObservableSet({{BlochVector{0, 0, 2}, BlochVector{}}}), Error);
  const std::vector<double> odd(7, 0.0);
  EXPECT_THROW(settings_from_bloch_angles(odd), Error);
}

TEST(Born, ProductStateIsDeterministic) {
  const auto s = ghz_state(3, 0.0);  // |000>
  const auto b = born_behavior(s, settings_from_params({0.0, 0.0, 0.0, {0.0, 0.0, 0.0}}));
  EXPECT_NEAR(b.p(0, 0), 1.0, 1e-15);
}

TEST(Born, ValidAndNoSignaling) {
  std::mt19937_64 rng(12);
  for (int n = 2; n <= 5; ++n) {
    for (int k = 0; k < 5; ++k) {
      const auto b = fixtures::random_quantum_behavior(n, rng);
      EXPECT_TRUE(validate(b, 1e-12).ok);
      EXPECT_TRUE(no_signaling_report(b, 1e-12).is_no_signaling);
    }
  }
}

TEST(Born, GlobalPhaseInvariance) {
  std::mt19937_64 rng(13);
  const auto s = fixtures::random_state(3, rng);
  std::vector<Complex> rotated(s.amplitudes().begin(), s.amplitudes().end());
  for (auto& a : rotated) a *= std::polar(1.0, 0.77);
  const auto obs = settings_from_bloch_angles(fixtures::random_angles(12, rng));
  const auto b1 = born_behavior(s, obs);
  const auto b2 = born_behavior(StateVector(3, rotated), obs);
  for (std::size_t k = 0; k < b1.table().size(); ++k) EXPECT_NEAR(b1.table()[k], b2.table()[k], 1e-14);
}

TEST(Born, SparseAndDensePathsAgree) {
  std::mt19937_64 rng(14);
  const auto obs = settings_from_bloch_angles(fixtures::random_angles(16, rng));
  const auto dense = fixtures::random_state(4, rng);
  const auto sparse = ghz_state(4, 0.4);
  for (const auto* s : {&dense, &sparse}) {
    const auto b = born_behavior(*s, obs);
    for (SettingsMask x = 0; x < 16; ++x) {
      for (OutcomeMask a = 0; a < 16; ++a) {
        std::vector<Factor> f;
        for (int i = 0; i < 4; ++i) f.push_back({i, setting_of(x, i), outcome_sign(a, i)});
        EXPECT_NEAR(event_probability(*s, obs, f), b.p(x, a), 1e-13);
      }
    }
    // Partial event equals the summed marginal.
    const std::vector<Factor> partial{{1, 1, +1}, {3, 0, -1}};
    double summed = 0.0;
    for (OutcomeMask a = 0; a < 16; ++a)
      if (outcome_sign(a, 1) == 1 && outcome_sign(a, 3) == -1) summed += b.p(0b0010, a);
    EXPECT_NEAR(event_probability(*s, obs, partial), summed, 1e-13);
  }
}

TEST(Ghz, CorrelationExamples) {
  const auto g = ghz_paper_correlation(3);
  EXPECT_NEAR(g.p(0, 0), 0.25, 1e-12);
  EXPECT_NEAR(g.p(0b001, 0), 0.125, 1e-12);
  EXPECT_NEAR(g.p(0b011, 0), 0.0, 1e-12);
}

TEST(Born, GhzXYMeasurementsReproducePaperCorrelation) {
  // sigma_x for setting 0 and sigma_y for setting 1 on every party.
  for (int n = 3; n <= 5; ++n) {
    std::vector<std::array<BlochVector, 2>> dirs(n, {BlochVector{1, 0, 0}, BlochVector{0, 1, 0}});
    const auto b = born_behavior(ghz_state(n, pi / 4), ObservableSet(dirs));
    const auto g = ghz_paper_correlation(n);
    for (std::size_t k = 0; k < g.table().size(); ++k) EXPECT_NEAR(b.table()[k], g.table()[k], 1e-12);
  }
}

TEST(Ghz, UniformMarginals) {
  for (int n = 3; n <= 6; ++n) {
    const auto g = ghz_paper_correlation(n);
    const auto m = marginal(g, (PartyMask{1} << (n - 1)) - 1);
    for (double p : m.table()) EXPECT_NEAR(p, 1.0 / (1u << (n - 1)), 1e-12);
  }
}

TEST(Ghz, BroadcastReproduction) {
  for (int n = 3; n <= 6; ++n) {
    const auto a = broadcast_reproduction(n);
    const auto b = ghz_paper_correlation(n);
    for (std::size_t k = 0; k < a.table().size(); ++k) EXPECT_NEAR(a.table()[k], b.table()[k], 1e-12);
  }
  const auto m = marginal(broadcast_reproduction(4), party_mask({0}));
  for (double p : m.table()) EXPECT_NEAR(p, 0.5, 1e-12);
}

TEST(Svetlichny, Values) {
  const auto [t, params] = svetlichny_settings();
  const auto state = ghz_state(3, t);
  const auto obs = settings_from_params(params);
  EXPECT_NEAR(quantum_value(builtin("S3"), state, obs), 4 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(quantum_value(builtin("I"), state, obs), 4 * std::sqrt(2.0) + 0.5, 1e-9);
  EXPECT_NEAR(quantum_value(builtin("Sprime"), state, obs), 0.5, 1e-9);
}

TEST(QuantumValue, MatchesEvaluateOnBorn) {
  std::mt19937_64 rng(15);
  const auto r3 = builtin("R3");
  for (int k = 0; k < 10; ++k) {
    const auto s = fixtures::random_state(3, rng);
    const auto obs = settings_from_bloch_angles(fixtures::random_angles(12, rng));
    EXPECT_NEAR(quantum_value(r3, s, obs), evaluate(r3, born_behavior(s, obs)), 1e-12);
  }
}
