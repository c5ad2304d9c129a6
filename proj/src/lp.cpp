#include "bnl/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bnl {

namespace {

// Simplex tableau for  min d^T z  s.t.  [A' | I] z = b',  z >= 0,  where A' and
// b' are A and b with rows flipped so that b' >= 0. Columns n..n+m-1 are the
// artificial variables; the last column is the right-hand side and the last
// row holds reduced costs (rhs slot: minus the objective value).
class Tableau {
 public:
  Tableau(const DenseMatrix& a, std::span<const double> b, const LpOptions& options)
      : m_(a.rows()), n_(a.cols()), width_(n_ + m_ + 1), options_(options),
        cells_((m_ + 1) * width_, 0.0), basis_(m_), row_sign_(m_, 1.0) {
    if (b.size() != m_) throw StructuralError("rhs length does not match constraint rows");
    for (std::size_t r = 0; r < m_; ++r) {
      row_sign_[r] = b[r] < 0 ? -1.0 : 1.0;
      for (std::size_t c = 0; c < n_; ++c) at(r, c) = row_sign_[r] * a(r, c);
      at(r, n_ + r) = 1.0;
      rhs(r) = row_sign_[r] * b[r];
      basis_[r] = n_ + r;
    }
    max_iterations_ = options.max_iterations ? options.max_iterations
                                             : 50 * (m_ + n_) + 10000;
  }

  // Phase 1: minimise the sum of artificials. Returns that minimum.
  double phase_one() {
    for (std::size_t c = 0; c < width_; ++c) cost(c) = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) cost(c) -= at(r, c);
      cost(width_ - 1) -= rhs(r);
    }
    run(n_ + m_);
    return -cost(width_ - 1);
  }

  // Farkas vector in the caller's row orientation, read off the artificial
  // columns' reduced costs after phase 1.
  std::vector<double> phase_one_certificate() const {
    std::vector<double> y(m_);
    for (std::size_t r = 0; r < m_; ++r) y[r] = row_sign_[r] * (1.0 - cost(n_ + r));
    return y;
  }

  // Phase 2 for min cost^T x over the original columns. Returns false when
  // unbounded.
  bool phase_two(std::span<const double> costs) {
    expel_artificials();
    for (std::size_t c = 0; c < width_; ++c) cost(c) = c < n_ ? costs[c] : 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t bc = basis_[r];
      const double cb = bc < n_ ? costs[bc] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) cost(c) -= cb * at(r, c);
    }
    return run(n_);
  }

  std::vector<double> solution() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) x[basis_[r]] = std::max(0.0, rhs(r));
    }
    return x;
  }

  std::size_t iterations() const { return iterations_; }

 private:
  // Bland's rule: lowest-index improving column, lowest-index leaving variable
  // among ratio ties. Columns >= allowed never enter. Returns false if unbounded.
  bool run(std::size_t allowed) {
    while (true) {
      std::size_t enter = allowed;
      for (std::size_t c = 0; c < allowed; ++c) {
        if (cost(c) < -options_.pivot_tol) {
          enter = c;
          break;
        }
      }
      if (enter == allowed) return true;

      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        const double coef = at(r, enter);
        if (coef <= options_.pivot_tol) continue;
        const double ratio = rhs(r) / coef;
        if (leave == m_ || ratio < best - 1e-12) {
          best = ratio;
          leave = r;
        } else if (ratio <= best + 1e-12 && basis_[r] < basis_[leave]) {
          best = std::min(best, ratio);
          leave = r;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
      if (++iterations_ > max_iterations_) {
        throw LpNumericalError("simplex exceeded " + std::to_string(max_iterations_) +
                               " pivots (cycling guard)");
      }
    }
  }

  void expel_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t c = 0; c < n_; ++c) {
        if (std::abs(at(r, c)) > options_.pivot_tol) {
          pivot(r, c);
          break;
        }
      }
      // Rows where no original column is available are redundant; their
      // artificial stays basic at zero and never re-enters.
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    double* prow = &cells_[pr * width_];
    const double inv = 1.0 / prow[pc];
    nonzero_.clear();
    for (std::size_t c = 0; c < width_; ++c) {
      if (prow[c] == 0.0) continue;
      prow[c] *= inv;
      nonzero_.push_back(c);
    }
    prow[pc] = 1.0;
    // Vertex tables are 0/1 data, so pivot rows stay sparse.
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      double* row = &cells_[r * width_];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c : nonzero_) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  double& at(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * width_ + c]; }
  double& rhs(std::size_t r) { return cells_[r * width_ + width_ - 1]; }
  double rhs(std::size_t r) const { return cells_[r * width_ + width_ - 1]; }
  double& cost(std::size_t c) { return cells_[m_ * width_ + c]; }
  double cost(std::size_t c) const { return cells_[m_ * width_ + c]; }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  LpOptions options_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
  std::vector<double> row_sign_;
  std::vector<std::size_t> nonzero_;
  std::size_t iterations_ = 0;
  std::size_t max_iterations_ = 0;
};

}  // namespace

FeasibilityResult lp_feasibility(const DenseMatrix& a, std::span<const double> b,
                                 const LpOptions& options) {
  Tableau tableau(a, b, options);
  FeasibilityResult result;
  result.infeasibility = tableau.phase_one();
  result.iterations = tableau.iterations();
  result.feasible = result.infeasibility <= options.feasibility_tol;
  if (result.feasible) {
    result.x = tableau.solution();
  } else {
    result.certificate = tableau.phase_one_certificate();
  }
  return result;
}

LpResult lp_maximize(const DenseMatrix& a, std::span<const double> b, std::span<const double> c,
                     const LpOptions& options) {
  if (c.size() != a.cols()) throw StructuralError("objective length does not match columns");
  Tableau tableau(a, b, options);
  LpResult result;
  const double infeasibility = tableau.phase_one();
  if (infeasibility > options.feasibility_tol) {
    result.status = LpStatus::Infeasible;
    result.certificate = tableau.phase_one_certificate();
    result.iterations = tableau.iterations();
    return result;
  }
  std::vector<double> negated(c.begin(), c.end());
  for (auto& v : negated) v = -v;
  const bool bounded = tableau.phase_two(negated);
  result.iterations = tableau.iterations();
  if (!bounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x = tableau.solution();
  for (std::size_t j = 0; j < c.size(); ++j) result.objective += c[j] * result.x[j];
  return result;
}

}  // namespace bnl
