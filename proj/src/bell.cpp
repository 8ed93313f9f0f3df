#include "ctxprob/bell.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "ctxprob/error.hpp"

namespace ctxprob {

namespace {

void check_entry(double v, const std::string& what) {
  if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
    std::ostringstream msg;
    msg << what << " = " << v << " is outside [-1, 1]";
    throw Error(msg.str());
  }
}

std::array<BellForm, 8> make_forms() {
  std::array<BellForm, 8> forms{};
  std::size_t n = 0;
  // Enumerate sign vectors over cells (ef, eg, gf, gg) with odd parity.
  for (int mask = 0; mask < 16; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) % 2 == 0) continue;
    BellForm f;
    for (int cell = 0; cell < 4; ++cell) {
      f.signs[cell / 2][cell % 2] = (mask >> cell) & 1 ? -1 : 1;
    }
    forms[n++] = f;
  }
  return forms;
}

}  // namespace

void CorrelationTable::validate() const {
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      check_entry(joint[a][b], "E(" + row_contexts[a] + "," + col_contexts[b] + ")");
    }
  }
  if (singles) {
    for (std::size_t a = 0; a < 2; ++a) check_entry(singles->rows[a], "E(" + row_contexts[a] + ",p)");
    for (std::size_t b = 0; b < 2; ++b) check_entry(singles->cols[b], "E(p," + col_contexts[b] + ")");
  }
}

CorrelationTable make_table(const Matrix2& joint) {
  CorrelationTable t;
  t.joint = joint;
  return t;
}

double bell_value(const CorrelationTable& t) {
  t.validate();
  const auto& e = t.joint;
  return std::abs(e[0][0] - e[0][1]) + std::abs(e[1][0] + e[1][1]);
}

std::string BellForm::to_string(const CorrelationTable& t) const {
  std::string out;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      out += signs[a][b] > 0 ? (out.empty() ? "" : " + ") : (out.empty() ? "-" : " - ");
      out += "E(" + t.row_contexts[a] + "," + t.col_contexts[b] + ")";
    }
  }
  return out + " <= 2";
}

const std::array<BellForm, 8>& bell_forms() {
  static const std::array<BellForm, 8> forms = make_forms();
  return forms;
}

BellForm best_bell_form(const CorrelationTable& t) {
  t.validate();
  BellForm best;
  bool first = true;
  for (BellForm f : bell_forms()) {
    f.value = 0.0;
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) f.value += f.signs[a][b] * t.joint[a][b];
    }
    if (first || f.value > best.value) {
      best = f;
      first = false;
    }
  }
  return best;
}

double bell_value_all_forms(const CorrelationTable& t) { return best_bell_form(t).value; }

bool is_violated(double value, double slack) { return value > 2.0 + slack; }

Matrix2 product_joints(const Singles& singles) {
  Matrix2 j{};
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) j[a][b] = singles.rows[a] * singles.cols[b];
  }
  return j;
}

ProductEqualityReport product_equality_check(const Singles& singles, const Matrix2& joint,
                                             double tol) {
  ProductEqualityReport r;
  r.all_hold = true;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      r.residual[a][b] = joint[a][b] - singles.rows[a] * singles.cols[b];
      r.holds[a][b] = std::abs(r.residual[a][b]) <= tol;
      r.all_hold = r.all_hold && r.holds[a][b];
    }
  }
  return r;
}

CorrelationTable pet_food_table(const PetFoodScenario& s) {
  const double lambda = s.case_c_probability;
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    std::ostringstream msg;
    msg << "case-C probability " << lambda << " is outside [0, 1]";
    throw Error(msg.str());
  }
  CorrelationTable t;
  t.joint = {{{2.0 * lambda - 1.0, 1.0}, {1.0, 1.0}}};
  t.singles = Singles{{1.0, 1.0}, {1.0, 1.0}};
  return t;
}

std::vector<SweepRow> sweep_case_c(std::span<const double> grid) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double lambda : grid) {
    const double v = bell_value(pet_food_table({lambda}));
    rows.push_back({lambda, v, is_violated(v)});
  }
  return rows;
}

}  // namespace ctxprob
