#pragma once

#include <cstddef>
#include <vector>

namespace ctxprob {

/// Dense row-major matrix, small.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct FeasibilityResult {
  bool feasible = false;
  /// x >= 0 with A x = b (feasible only).
  std::vector<double> x;
  /// Farkas certificate (infeasible only): y^T A <= 0 column-wise and y^T b > 0.
  std::vector<double> y;
  /// Sum of artificial variables at the phase-one optimum.
  double infeasibility = 0.0;
};

/// Decides {x >= 0 : A x = b} != empty with a phase-one simplex using Bland's
/// rule. `tol` bounds the residual infeasibility accepted as feasible.
FeasibilityResult solve_feasibility(const DenseMatrix& a, const std::vector<double>& b,
                                    double tol = 1e-9);

}  // namespace ctxprob
