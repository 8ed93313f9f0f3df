#pragma once

// Bell functionals on 2x2 correlation tables. Rows are the two contexts acting
// on the first concept (e, g), columns the two acting on the second (f, g).

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctxprob/hilbert.hpp"

namespace ctxprob {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Single-side expectations E(a, p) for the row contexts and E(p, b) for the
/// column contexts.
struct Singles {
  std::array<double, 2> rows{};
  std::array<double, 2> cols{};
};

struct CorrelationTable {
  std::array<std::string, 2> row_contexts{"e", "g"};
  std::array<std::string, 2> col_contexts{"f", "g"};
  Matrix2 joint{};
  std::optional<Singles> singles;

  /// Throws Error naming the first entry outside [-1, 1] (or non-finite).
  void validate() const;
};

CorrelationTable make_table(const Matrix2& joint);

/// |E(e,f) - E(e,g)| + |E(g,f) + E(g,g)|
double bell_value(const CorrelationTable& t);

/// One CHSH form: sum_ab sign[a][b] E(a,b) with an odd number of minus signs.
struct BellForm {
  std::array<std::array<int, 2>, 2> signs{};
  double value = 0.0;

  std::string to_string(const CorrelationTable& t) const;
};

/// The eight odd-parity sign placements, fixed order.
const std::array<BellForm, 8>& bell_forms();

/// Form with the largest value on `t`; first in bell_forms() order on ties.
BellForm best_bell_form(const CorrelationTable& t);

/// max over the eight CHSH forms.
double bell_value_all_forms(const CorrelationTable& t);

/// value > 2 + slack
bool is_violated(double value, double slack = kDefaultTolerance);

struct ProductEqualityReport {
  /// holds[a][b] : |E(a,b) - E_A(a) E_B(b)| <= tol
  std::array<std::array<bool, 2>, 2> holds{};
  Matrix2 residual{};
  bool all_hold = false;
};

ProductEqualityReport product_equality_check(const Singles& singles, const Matrix2& joint,
                                             double tol);

/// Joints generated by the product equalities E(a,b) = E_A(a) E_B(b).
Matrix2 product_joints(const Singles& singles);

/// Probability that the unusual case ("Roller eats the cat food") holds
/// instead of one observer being mistaken.
struct PetFoodScenario {
  double case_c_probability = 0.0;
};

/// E(e,f) = 2 lambda - 1; the other joints and all singles are +1.
CorrelationTable pet_food_table(const PetFoodScenario& s);

struct SweepRow {
  double lambda = 0.0;
  double bell_value = 0.0;
  bool violated = false;
};

/// Grid points are independent; output order follows the grid.
std::vector<SweepRow> sweep_case_c(std::span<const double> grid);

}  // namespace ctxprob
