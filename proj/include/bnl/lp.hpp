#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bnl/errors.hpp"

namespace bnl {

// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct LpOptions {
  double feasibility_tol = 1e-7;
  double pivot_tol = 1e-9;
  // 0 picks a bound proportional to the instance size.
  std::size_t max_iterations = 0;
};

// Outcome of finding x >= 0 with A x = b.
struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> x;            // when feasible
  std::vector<double> certificate;  // when infeasible: y with y^T A <= 0 and y^T b > tol
  double infeasibility = 0.0;       // optimal phase-1 objective (sum of artificials)
  std::size_t iterations = 0;
};

FeasibilityResult lp_feasibility(const DenseMatrix& a, std::span<const double> b,
                                 const LpOptions& options = {});

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::vector<double> certificate;  // Farkas certificate when infeasible
  std::size_t iterations = 0;
};

// maximize c^T x subject to A x = b, x >= 0 (two-phase simplex, Bland's rule).
LpResult lp_maximize(const DenseMatrix& a, std::span<const double> b, std::span<const double> c,
                     const LpOptions& options = {});

}  // namespace bnl
