#pragma once

// Classical realizability of 2x2 correlation tables. A table is Kolmogorovian
// when some convex mixture of the 16 deterministic outcome assignments
// reproduces every given expectation.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "ctxprob/bell.hpp"

namespace ctxprob {

/// Fixed outcomes (A(e), A(g), B(f), B(g)), each +1 or -1.
struct DeterministicStrategy {
  std::array<int, 2> rows{};
  std::array<int, 2> cols{};

  int joint(std::size_t a, std::size_t b) const { return rows[a] * cols[b]; }
  std::string to_string() const;
};

/// All 16 strategies. Order: bits of the index select -1 for A(e), A(g), B(f),
/// B(g), most significant first; index 0 is (+1, +1, +1, +1).
const std::array<DeterministicStrategy, 16>& enumerate_strategies();

/// An inequality sum coefficients . x <= bound valid on every deterministic
/// strategy and violated by the input. Normalized so that bound == 2 and the
/// strategies span [-2, 2], which makes CHSH forms appear unscaled.
struct Witness {
  std::string description;
  Matrix2 joint_coefficients{};
  Singles single_coefficients{};
  double offset = 0.0;
  double value = 0.0;
  double bound = 2.0;
  bool is_bell_form = false;

  /// offset + coefficients . table
  double evaluate(const CorrelationTable& t) const;
};

struct RealizabilityResult {
  bool feasible = false;
  std::array<double, 16> weights{};
  std::optional<Witness> witness;
};

inline constexpr double kFeasibilityTolerance = 1e-9;

/// Linear feasibility over the 16 strategy weights: joint expectations (and
/// singles, when present) as equalities, nonnegativity, unit sum.
RealizabilityResult realizable(const CorrelationTable& t, double tol = kFeasibilityTolerance);

/// bell_value_all_forms(t) <= 2 + slack. Singles are ignored.
bool is_kolmogorovian(const CorrelationTable& t, double slack = kDefaultTolerance);

enum class Band { Classical, QuantumAchievable, SupraQuantum };

/// Classical up to 2, quantum-achievable up to 2 sqrt(2), supra-quantum above.
Band classify(const CorrelationTable& t, double slack = kDefaultTolerance);

std::string_view band_name(Band b);

/// Expectations reproduced by a weight vector over enumerate_strategies().
CorrelationTable mix_strategies(const std::array<double, 16>& weights);

}  // namespace ctxprob
