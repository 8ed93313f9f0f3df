#include "ctxprob/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "ctxprob/error.hpp"

namespace ctxprob {

Basis::Basis(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::unordered_set<std::string> seen;
  for (const auto& label : labels_) {
    if (label.empty()) throw Error("basis labels must be non-empty");
    if (!seen.insert(label).second) throw Error("duplicate basis label '" + label + "'");
  }
}

std::size_t Basis::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error("label '" + label + "' not in basis " + to_string());
  return static_cast<std::size_t>(it - labels_.begin());
}

bool Basis::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::string Basis::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i != 0) out += ", ";
    out += labels_[i];
  }
  return out + "]";
}

void require_same_basis(const Basis& a, const Basis& b, std::string_view what) {
  if (a == b) return;
  throw Error(std::string(what) + ": basis mismatch between " + a.to_string() + " and " +
              b.to_string());
}

StateVector StateVector::normalize(Basis basis, std::vector<Complex> raw) {
  if (raw.size() != basis.size()) {
    throw Error("amplitude count " + std::to_string(raw.size()) + " does not match basis size " +
                std::to_string(basis.size()));
  }
  double norm2 = 0.0;
  for (const auto& a : raw) norm2 += std::norm(a);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw Error("zero vector not normalizable");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : raw) a *= inv;
  return StateVector(std::move(basis), std::move(raw));
}

std::vector<std::string> StateVector::support(double tol) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if (std::norm(amplitudes_[i]) > tol) out.push_back(basis_[i]);
  }
  return out;
}

Observable::Observable(Basis basis, const std::map<std::string, int>& signs)
    : basis_(std::move(basis)), signs_(basis_.size(), 0) {
  if (signs.size() != basis_.size()) {
    throw Error("observable must assign a sign to each of the " + std::to_string(basis_.size()) +
                " labels of " + basis_.to_string());
  }
  for (const auto& [label, s] : signs) {
    if (s != 1 && s != -1) throw Error("sign for '" + label + "' must be +1 or -1");
    signs_[basis_.index_of(label)] = s;
  }
}

Observable::Observable(Basis basis, std::vector<int> signs)
    : basis_(std::move(basis)), signs_(std::move(signs)) {
  if (signs_.size() != basis_.size()) throw Error("observable sign count does not match basis");
  for (int s : signs_) {
    if (s != 1 && s != -1) throw Error("observable signs must be +1 or -1");
  }
}

Observable Observable::trivial(Basis basis) {
  std::vector<int> signs(basis.size(), 1);
  return Observable(std::move(basis), std::move(signs));
}

Projector::Projector(Basis basis, std::vector<bool> support)
    : basis_(std::move(basis)), support_(std::move(support)) {
  if (support_.size() != basis_.size()) throw Error("projector support does not match basis");
}

Projector Projector::onto(Basis basis, const std::vector<std::string>& labels) {
  std::vector<bool> support(basis.size(), false);
  for (const auto& label : labels) support[basis.index_of(label)] = true;
  return Projector(std::move(basis), std::move(support));
}

Projector Projector::identity(Basis basis) {
  std::vector<bool> support(basis.size(), true);
  return Projector(std::move(basis), std::move(support));
}

Projector Projector::zero(Basis basis) {
  std::vector<bool> support(basis.size(), false);
  return Projector(std::move(basis), std::move(support));
}

bool Projector::is_zero() const {
  return std::none_of(support_.begin(), support_.end(), [](bool b) { return b; });
}

std::vector<std::string> Projector::support_labels() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i]) out.push_back(basis_[i]);
  }
  return out;
}

std::pair<Projector, Projector> spectral_projectors(const Observable& a) {
  std::vector<bool> plus(a.basis().size()), minus(a.basis().size());
  for (std::size_t i = 0; i < plus.size(); ++i) {
    plus[i] = a.sign(i) > 0;
    minus[i] = !plus[i];
  }
  return {Projector(a.basis(), std::move(plus)), Projector(a.basis(), std::move(minus))};
}

Complex inner(const StateVector& u, const StateVector& v) {
  require_same_basis(u.basis(), v.basis(), "inner");
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::conj(u.amplitude(i)) * v.amplitude(i);
  return sum;
}

std::vector<Complex> tensor_amplitudes(std::span<const Complex> u, std::span<const Complex> v) {
  std::vector<Complex> out;
  out.reserve(u.size() * v.size());
  for (const auto& a : u) {
    for (const auto& b : v) out.push_back(a * b);
  }
  return out;
}

Basis tensor_basis(const Basis& a, const Basis& b) {
  std::vector<std::string> labels;
  labels.reserve(a.size() * b.size());
  for (const auto& x : a.labels()) {
    for (const auto& y : b.labels()) {
      std::string label = x;
      label += kPairSeparator;
      label += y;
      labels.push_back(std::move(label));
    }
  }
  return Basis(std::move(labels));
}

StateVector tensor(const StateVector& u, const StateVector& v) {
  return StateVector::normalize(tensor_basis(u.basis(), v.basis()),
                                tensor_amplitudes(u.amplitudes(), v.amplitudes()));
}

double born_prob(const Projector& p, const StateVector& v) {
  require_same_basis(p.basis(), v.basis(), "born_prob");
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (p.contains(i)) sum += std::norm(v.amplitude(i));
  }
  return std::clamp(sum, 0.0, 1.0);
}

StateVector collapse(const Projector& p, const StateVector& v, double tol) {
  const double prob = born_prob(p, v);
  if (prob <= tol) throw Error("context incompatible with state");
  std::vector<Complex> projected(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    projected[i] = p.contains(i) ? v.amplitude(i) : Complex{0.0, 0.0};
  }
  return StateVector::normalize(v.basis(), std::move(projected));
}

double expectation(const Observable& a, const StateVector& v) {
  require_same_basis(a.basis(), v.basis(), "expectation");
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += a.sign(i) * std::norm(v.amplitude(i));
  return std::clamp(sum, -1.0, 1.0);
}

}  // namespace ctxprob
