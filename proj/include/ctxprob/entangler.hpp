#pragma once

// Combined-concept states. Two single-concept distributions and an explicit
// compatibility relation produce an entangled state over exemplar pairs; the
// combination rule is amplitude(x, y) proportional to sqrt(pA(x) pB(y)) on the
// relation and zero elsewhere. This is a modeling choice: it is the smallest
// entangled embedding in which collapsing one factor collapses its partner.

#include <array>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctxprob/concept.hpp"
#include "ctxprob/hilbert.hpp"

namespace ctxprob {

enum class Side { A, B };

/// Explicit pairing of exemplars across two concepts.
class CompatibilityRelation {
 public:
  explicit CompatibilityRelation(std::vector<std::pair<std::string, std::string>> pairs);
  CompatibilityRelation(std::initializer_list<std::pair<std::string, std::string>> pairs)
      : CompatibilityRelation(std::vector<std::pair<std::string, std::string>>(pairs)) {}

  /// One pair per line, tab- or comma-separated. '#' comments and blank
  /// lines are skipped.
  static CompatibilityRelation parse(std::string_view text);
  static CompatibilityRelation load(const std::string& path);

  /// Every pair of the Cartesian product.
  static CompatibilityRelation full(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b);

  const std::vector<std::pair<std::string, std::string>>& pairs() const noexcept { return pairs_; }
  bool contains(const std::string& a, const std::string& b) const;

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
};

/// Unit-norm amplitudes over basisA x basisB; entries outside the relation are
/// zero.
class EntangledState {
 public:
  /// Normalizes `raw` (row-major, |A| x |B|). Entries off `relation` must be
  /// zero. Throws Error when the result would be the zero vector.
  static EntangledState from_amplitudes(Basis a, Basis b, const CompatibilityRelation& relation,
                                        std::vector<Complex> raw);

  const Basis& basis_a() const noexcept { return a_; }
  const Basis& basis_b() const noexcept { return b_; }
  Complex amplitude(std::size_t i, std::size_t j) const { return amps_[i * b_.size() + j]; }
  Complex amplitude(const std::string& x, const std::string& y) const;
  double weight(std::size_t i, std::size_t j) const { return std::norm(amplitude(i, j)); }
  bool allowed(std::size_t i, std::size_t j) const { return allowed_[i * b_.size() + j]; }

  /// The same state as a vector over the tensor basis.
  StateVector as_state_vector() const;

 private:
  EntangledState(Basis a, Basis b, std::vector<bool> allowed, std::vector<Complex> amps)
      : a_(std::move(a)), b_(std::move(b)), allowed_(std::move(allowed)), amps_(std::move(amps)) {}

  Basis a_;
  Basis b_;
  std::vector<bool> allowed_;
  std::vector<Complex> amps_;
};

/// Throws Error("concepts incompatible under R") when no relation pair has
/// pA(x) pB(y) > 0.
EntangledState combine(const ContextDistribution& pa, const ContextDistribution& pb,
                       const CompatibilityRelation& relation);

/// sum sign_A(x) sign_B(y) |amp(x, y)|^2
double joint_expectation(const EntangledState& s, const Observable& a, const Observable& b);

ContextDistribution marginal(const EntangledState& s, Side side);

/// Projects onto {(x, .)} (side A) or {(., x)} (side B) and renormalizes.
EntangledState conditional_collapse(const EntangledState& s, Side side, const std::string& x,
                                    double tol = kDefaultTolerance);

/// marginal_A(x) - max(pA(x), pB(x)). Positive means the combination makes x
/// more typical than either constituent does.
double guppy_gap(const EntangledState& s, const ContextDistribution& pa,
                 const ContextDistribution& pb, const std::string& x);

/// +/-1 observable n.sigma on a two-dimensional factor, with n a unit vector on
/// the Bloch sphere. Diagonal observables are n = (0, 0, +/-1).
class SpinObservable {
 public:
  SpinObservable(double nx, double ny, double nz);
  static SpinObservable from_angles(double theta, double phi);

  /// Row-major 2x2 matrix.
  std::array<Complex, 4> matrix() const;
  const std::array<double, 3>& direction() const noexcept { return n_; }

 private:
  std::array<double, 3> n_;
};

/// <psi| A (x) B |psi> for a state over 2 x 2 bases.
double joint_expectation(const EntangledState& s, const SpinObservable& a,
                         const SpinObservable& b);

}  // namespace ctxprob
