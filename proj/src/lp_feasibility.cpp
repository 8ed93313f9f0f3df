#include "ctxprob/lp_feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctxprob/error.hpp"

namespace ctxprob {

namespace {

constexpr double kPivotEps = 1e-12;

// Tableau layout: columns [0, n) original, [n, n + m) artificial, last = rhs.
// Row m holds the phase-one reduced costs, with the negated objective in the
// rhs slot.
class Tableau {
 public:
  Tableau(const DenseMatrix& a, const std::vector<double>& b)
      : m_(a.rows), n_(a.cols), width_(n_ + m_ + 1), t_((m_ + 1) * width_, 0.0),
        flip_(m_, 1.0), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      flip_[i] = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = flip_[i] * a(i, j);
      at(i, n_ + i) = 1.0;
      at(i, rhs()) = flip_[i] * b[i];
      basis_[i] = n_ + i;
    }
    // Reduced costs of the phase-one objective sum(artificials).
    for (std::size_t j = 0; j < width_; ++j) {
      if (j >= n_ && j < n_ + m_) continue;
      double s = 0.0;
      for (std::size_t i = 0; i < m_; ++i) s += at(i, j);
      at(m_, j) = -s;
    }
  }

  void run() {
    // Bland's rule: lowest-index entering column, lowest-index leaving basic.
    const std::size_t max_iter = 50 * (n_ + m_ + 1);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      std::size_t enter = width_;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (at(m_, j) < -kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter == width_) return;
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, enter) > kPivotEps) {
          const double ratio = at(i, rhs()) / at(i, enter);
          if (ratio < best - kPivotEps ||
              (std::abs(ratio - best) <= kPivotEps && leave < m_ && basis_[i] < basis_[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave == m_) return;  // unbounded cannot happen in phase one
      pivot(leave, enter);
    }
    throw Error("simplex iteration limit reached");
  }

  double objective() const { return -at(m_, rhs()); }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, at(i, rhs()));
    }
    return x;
  }

  // y = c_B^T B^{-1}; B^{-1} sits in the artificial columns.
  std::vector<double> dual() const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] >= n_) s += at(i, n_ + k);
      }
      y[k] = s * flip_[k];
    }
    return y;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
  std::size_t rhs() const { return width_ - 1; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(r, j);
    }
    basis_[r] = c;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  std::vector<double> t_;
  std::vector<double> flip_;
  std::vector<std::size_t> basis_;
};

}  // namespace

FeasibilityResult solve_feasibility(const DenseMatrix& a, const std::vector<double>& b,
                                    double tol) {
  if (b.size() != a.rows) throw Error("right-hand side size does not match constraint rows");
  if (a.data.size() != a.rows * a.cols) throw Error("malformed constraint matrix");
  Tableau tableau(a, b);
  tableau.run();

  FeasibilityResult result;
  result.infeasibility = std::max(0.0, tableau.objective());
  result.feasible = result.infeasibility <= tol;
  if (result.feasible) {
    result.x = tableau.primal();
  } else {
    result.y = tableau.dual();
  }
  return result;
}

}  // namespace ctxprob
