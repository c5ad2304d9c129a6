#include <gtest/gtest.h>

#include <random>

#include "bnl/lp.hpp"
#include "bnl/polytopes.hpp"

using namespace bnl;

namespace {

DenseMatrix matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> values) {
  DenseMatrix m(rows, cols);
  auto it = values.begin();
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = *it++;
  return m;
}

}  // namespace

TEST(Feasibility, IdentityIsFeasible) {
  const auto a = matrix(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  const std::vector<double> b{0.2, 0.3, 0.5};
  const auto r = lp_feasibility(a, b);
  ASSERT_TRUE(r.feasible);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r.x[i], b[i], 1e-12);
}

TEST(Feasibility, NegativeRhsIsInfeasibleWithCertificate) {
  // x >= 0 cannot produce a negative component.
  const auto a = matrix(2, 2, {1, 1, 0, 1});
  const std::vector<double> b{1.0, -0.5};
  const auto r = lp_feasibility(a, b);
  ASSERT_FALSE(r.feasible);
  ASSERT_EQ(r.certificate.size(), 2u);
  for (std::size_t c = 0; c < 2; ++c) {
    double ya = 0.0;
    for (std::size_t row = 0; row < 2; ++row) ya += r.certificate[row] * a(row, c);
    EXPECT_LE(ya, 1e-9);
  }
  EXPECT_GT(r.certificate[0] * b[0] + r.certificate[1] * b[1], 1e-7);
}

TEST(Feasibility, RandomConeCertificates) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int infeasible = 0;
  for (int trial = 0; trial < 50; ++trial) {
    DenseMatrix a(4, 6);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 6; ++c) a(r, c) = u(rng);
    std::vector<double> b(4);
    for (auto& v : b) v = u(rng);
    const auto res = lp_feasibility(a, b);
    if (res.feasible) {
      for (std::size_t r = 0; r < 4; ++r) {
        double ax = 0.0;
        for (std::size_t c = 0; c < 6; ++c) ax += a(r, c) * res.x[c];
        EXPECT_NEAR(ax, b[r], 1e-7);
      }
      for (double x : res.x) EXPECT_GE(x, 0.0);
    } else {
      ++infeasible;
      double yb = 0.0;
      for (std::size_t r = 0; r < 4; ++r) yb += res.certificate[r] * b[r];
      EXPECT_GT(yb, 1e-7);
      for (std::size_t c = 0; c < 6; ++c) {
        double ya = 0.0;
        for (std::size_t r = 0; r < 4; ++r) ya += res.certificate[r] * a(r, c);
        EXPECT_LE(ya, 1e-9);
      }
    }
  }
  EXPECT_GT(infeasible, 0);
}

TEST(Maximize, SmallProgram) {
  // max x + 2y  s.t. x + y + s1 = 4, y + s2 = 3
  const auto a = matrix(2, 4, {1, 1, 1, 0, 0, 1, 0, 1});
  const std::vector<double> b{4, 3}, c{1, 2, 0, 0};
  const auto r = lp_maximize(a, b, c);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.objective, 7.0, 1e-12);
}

TEST(Maximize, BealeCyclingExampleTerminates) {
  const auto a = matrix(3, 7, {1, 0, 0, 0.25, -8, -1, 9,
                               0, 1, 0, 0.5, -12, -0.5, 3,
                               0, 0, 1, 0, 0, 1, 0});
  const std::vector<double> b{0, 0, 1}, c{0, 0, 0, 0.75, -20, 0.5, -6};
  const auto r = lp_maximize(a, b, c);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.objective, 1.25, 1e-12);
}

TEST(Maximize, Unbounded) {
  const auto a = matrix(1, 2, {1, -1});
  const std::vector<double> b{1}, c{1, 0};
  EXPECT_EQ(lp_maximize(a, b, c).status, LpStatus::Unbounded);
}

TEST(Maximize, Infeasible) {
  const auto a = matrix(1, 2, {1, 1});
  const std::vector<double> b{-1}, c{1, 0};
  const auto r = lp_maximize(a, b, c);
  EXPECT_EQ(r.status, LpStatus::Infeasible);
  EXPECT_FALSE(r.certificate.empty());
}

TEST(Maximize, DimensionErrors) {
  const auto a = matrix(1, 2, {1, 1});
  const std::vector<double> b{1, 2}, c{1, 0};
  EXPECT_THROW(lp_feasibility(a, b), StructuralError);
  const std::vector<double> b1{1}, c3{1, 0, 0};
  EXPECT_THROW(lp_maximize(a, b1, c3), StructuralError);
}

TEST(Membership, MixtureOfBroadcastVerticesReconstructs) {
  const auto set = enumerate_vertices(ModelClass::broadcast(), Scenario(3));
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> pick(0, set.vertices.size() - 1);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> weights(10);
  double total = 0.0;
  for (auto& w : weights) total += w = u(rng);
  std::vector<double> table(set.scenario.table_size(), 0.0);
  for (double w : weights) {
    const auto& v = set.vertices[pick(rng)];
    for (std::size_t k = 0; k < table.size(); ++k) table[k] += w / total * v.table()[k];
  }
  const auto r = membership(Behavior(set.scenario, table), set);
  ASSERT_TRUE(r.member);
  EXPECT_LT(r.reconstruction_error, 1e-9);
}
