#pragma once

// Dense complex linear algebra over small labeled bases: states, diagonal
// +/-1 observables, 0/1 projectors, Born probabilities and collapse.

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ctxprob {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-12;

/// Separator used for composite labels produced by tensor().
inline constexpr std::string_view kPairSeparator = "\xE2\x8A\x97";  // U+2297

/// Ordered list of distinct, non-empty labels.
class Basis {
 public:
  Basis() = default;
  explicit Basis(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& operator[](std::size_t i) const { return labels_[i]; }

  /// Index of `label`; throws Error if absent.
  std::size_t index_of(const std::string& label) const;
  bool contains(const std::string& label) const;

  /// "[a, b, c]"
  std::string to_string() const;

  friend bool operator==(const Basis& a, const Basis& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
};

/// Throws Error naming both bases if they differ.
void require_same_basis(const Basis& a, const Basis& b, std::string_view what);

/// Unit-norm amplitude vector over a basis.
class StateVector {
 public:
  /// Normalizes `raw`. Throws Error("zero vector not normalizable") when every
  /// amplitude is zero.
  static StateVector normalize(Basis basis, std::vector<Complex> raw);

  const Basis& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::size_t i) const { return amplitudes_[i]; }
  Complex amplitude(const std::string& label) const { return amplitudes_[basis_.index_of(label)]; }

  /// Labels with |amplitude|^2 > tol.
  std::vector<std::string> support(double tol = kDefaultTolerance) const;

 private:
  StateVector(Basis basis, std::vector<Complex> amplitudes)
      : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {}

  Basis basis_;
  std::vector<Complex> amplitudes_;
};

/// Diagonal operator with eigenvalues +1/-1 in the label basis.
class Observable {
 public:
  /// `signs` must assign +1 or -1 to every label of `basis` and nothing else.
  Observable(Basis basis, const std::map<std::string, int>& signs);
  Observable(Basis basis, std::vector<int> signs);

  /// Every label +1.
  static Observable trivial(Basis basis);

  const Basis& basis() const noexcept { return basis_; }
  int sign(std::size_t i) const { return signs_[i]; }
  int sign(const std::string& label) const { return signs_[basis_.index_of(label)]; }
  std::span<const int> signs() const noexcept { return signs_; }

 private:
  Basis basis_;
  std::vector<int> signs_;
};

/// Diagonal 0/1 operator.
class Projector {
 public:
  Projector(Basis basis, std::vector<bool> support);

  static Projector onto(Basis basis, const std::vector<std::string>& labels);
  static Projector identity(Basis basis);
  static Projector zero(Basis basis);

  const Basis& basis() const noexcept { return basis_; }
  bool contains(std::size_t i) const { return support_[i]; }
  bool is_zero() const;
  std::vector<std::string> support_labels() const;

 private:
  Basis basis_;
  std::vector<bool> support_;
};

/// Sign classes of an observable: {P+, P-}.
std::pair<Projector, Projector> spectral_projectors(const Observable& a);

/// <u|v>, conjugate-linear in u.
Complex inner(const StateVector& u, const StateVector& v);

/// Kronecker product of raw amplitude vectors, first factor major.
std::vector<Complex> tensor_amplitudes(std::span<const Complex> u, std::span<const Complex> v);

/// Basis of ordered label pairs "x⊗y", first factor major.
Basis tensor_basis(const Basis& a, const Basis& b);

StateVector tensor(const StateVector& u, const StateVector& v);

/// <v|P|v>, clamped to [0, 1].
double born_prob(const Projector& p, const StateVector& v);

/// normalize(P v). Throws Error("context incompatible with state") when the
/// Born probability is <= tol.
StateVector collapse(const Projector& p, const StateVector& v, double tol = kDefaultTolerance);

/// sum_x sign(x) |v(x)|^2
double expectation(const Observable& a, const StateVector& v);

}  // namespace ctxprob
