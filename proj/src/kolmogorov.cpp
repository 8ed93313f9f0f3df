#include "ctxprob/kolmogorov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ctxprob/lp_feasibility.hpp"

namespace ctxprob {

namespace {

std::array<DeterministicStrategy, 16> make_strategies() {
  std::array<DeterministicStrategy, 16> out{};
  for (unsigned k = 0; k < 16; ++k) {
    auto bit = [k](unsigned pos) { return (k >> (3 - pos)) & 1u ? -1 : 1; };
    out[k].rows = {bit(0), bit(1)};
    out[k].cols = {bit(2), bit(3)};
  }
  return out;
}

// Expectation coordinates of a strategy, in LP row order: four joints, then
// (optionally) the four singles.
std::vector<double> coordinates(const DeterministicStrategy& s, bool with_singles) {
  std::vector<double> v;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) v.push_back(s.joint(a, b));
  }
  if (with_singles) {
    v.push_back(s.rows[0]);
    v.push_back(s.rows[1]);
    v.push_back(s.cols[0]);
    v.push_back(s.cols[1]);
  }
  return v;
}

std::vector<double> coordinates(const CorrelationTable& t) {
  std::vector<double> v;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) v.push_back(t.joint[a][b]);
  }
  if (t.singles) {
    v.push_back(t.singles->rows[0]);
    v.push_back(t.singles->rows[1]);
    v.push_back(t.singles->cols[0]);
    v.push_back(t.singles->cols[1]);
  }
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Witness bell_witness(const CorrelationTable& t, const BellForm& form) {
  Witness w;
  w.description = form.to_string(t);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) w.joint_coefficients[a][b] = form.signs[a][b];
  }
  w.value = form.value;
  w.is_bell_form = true;
  return w;
}

// Turns a Farkas certificate into an affine inequality scaled so that the
// strategies range over [-2, 2].
Witness farkas_witness(const CorrelationTable& t, const std::vector<double>& y) {
  const bool with_singles = t.singles.has_value();
  std::vector<double> c(y.begin(), y.end() - 1);  // drop the unit-sum row
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& s : enumerate_strategies()) {
    const double v = dot(c, coordinates(s, with_singles));
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  const double scale = hi - lo > 1e-15 ? 4.0 / (hi - lo) : 1.0;
  for (auto& ci : c) ci *= scale;

  Witness w;
  w.offset = 2.0 - scale * hi;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) w.joint_coefficients[a][b] = c[a * 2 + b];
  }
  if (with_singles) {
    w.single_coefficients.rows = {c[4], c[5]};
    w.single_coefficients.cols = {c[6], c[7]};
  }
  w.value = w.evaluate(t);

  std::ostringstream desc;
  desc.precision(6);
  desc << w.offset;
  auto term = [&](double coef, const std::string& name) {
    if (std::abs(coef) < 1e-12) return;
    desc << (coef < 0 ? " - " : " + ") << std::abs(coef) << " " << name;
  };
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      term(w.joint_coefficients[a][b], "E(" + t.row_contexts[a] + "," + t.col_contexts[b] + ")");
    }
  }
  if (with_singles) {
    for (std::size_t a = 0; a < 2; ++a) {
      term(w.single_coefficients.rows[a], "E(" + t.row_contexts[a] + ",p)");
    }
    for (std::size_t b = 0; b < 2; ++b) {
      term(w.single_coefficients.cols[b], "E(p," + t.col_contexts[b] + ")");
    }
  }
  desc << " <= 2";
  w.description = desc.str();
  return w;
}

}  // namespace

std::string DeterministicStrategy::to_string() const {
  auto s = [](int v) { return v > 0 ? std::string("+") : std::string("-"); };
  return "(" + s(rows[0]) + "," + s(rows[1]) + "," + s(cols[0]) + "," + s(cols[1]) + ")";
}

const std::array<DeterministicStrategy, 16>& enumerate_strategies() {
  static const std::array<DeterministicStrategy, 16> strategies = make_strategies();
  return strategies;
}

double Witness::evaluate(const CorrelationTable& t) const {
  double v = offset;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) v += joint_coefficients[a][b] * t.joint[a][b];
  }
  if (t.singles) {
    for (std::size_t a = 0; a < 2; ++a) v += single_coefficients.rows[a] * t.singles->rows[a];
    for (std::size_t b = 0; b < 2; ++b) v += single_coefficients.cols[b] * t.singles->cols[b];
  }
  return v;
}

RealizabilityResult realizable(const CorrelationTable& t, double tol) {
  t.validate();
  const bool with_singles = t.singles.has_value();
  const auto target = coordinates(t);
  const std::size_t m = target.size() + 1;
  const auto& strategies = enumerate_strategies();

  DenseMatrix a(m, strategies.size());
  for (std::size_t j = 0; j < strategies.size(); ++j) {
    const auto v = coordinates(strategies[j], with_singles);
    for (std::size_t i = 0; i < v.size(); ++i) a(i, j) = v[i];
    a(m - 1, j) = 1.0;
  }
  std::vector<double> b = target;
  b.push_back(1.0);

  const FeasibilityResult lp = solve_feasibility(a, b, tol);
  RealizabilityResult result;
  result.feasible = lp.feasible;
  if (lp.feasible) {
    double total = 0.0;
    for (std::size_t j = 0; j < strategies.size(); ++j) total += lp.x[j];
    for (std::size_t j = 0; j < strategies.size(); ++j) result.weights[j] = lp.x[j] / total;
    return result;
  }
  const BellForm best = best_bell_form(t);
  if (is_violated(best.value, 0.0)) {
    result.witness = bell_witness(t, best);
  } else {
    result.witness = farkas_witness(t, lp.y);
  }
  return result;
}

bool is_kolmogorovian(const CorrelationTable& t, double slack) {
  return !is_violated(bell_value_all_forms(t), slack);
}

Band classify(const CorrelationTable& t, double slack) {
  const double v = bell_value_all_forms(t);
  if (v <= 2.0 + slack) return Band::Classical;
  if (v <= 2.0 * std::numbers::sqrt2 + slack) return Band::QuantumAchievable;
  return Band::SupraQuantum;
}

std::string_view band_name(Band b) {
  switch (b) {
    case Band::Classical:
      return "classical";
    case Band::QuantumAchievable:
      return "quantum-achievable";
    case Band::SupraQuantum:
      return "supra-quantum";
  }
  return "unknown";
}

CorrelationTable mix_strategies(const std::array<double, 16>& weights) {
  CorrelationTable t;
  Singles singles;
  const auto& strategies = enumerate_strategies();
  for (std::size_t k = 0; k < strategies.size(); ++k) {
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) t.joint[a][b] += weights[k] * strategies[k].joint(a, b);
      singles.rows[a] += weights[k] * strategies[k].rows[a];
      singles.cols[a] += weights[k] * strategies[k].cols[a];
    }
  }
  t.singles = singles;
  return t;
}

}  // namespace ctxprob
