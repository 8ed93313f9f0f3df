#include "ctxprob/entangler.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ctxprob/error.hpp"
#include "text_util.hpp"

namespace ctxprob {

CompatibilityRelation::CompatibilityRelation(std::vector<std::pair<std::string, std::string>> pairs)
    : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw Error("compatibility relation is empty");
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& p : pairs_) {
    if (p.first.empty() || p.second.empty()) throw Error("compatibility pair has an empty label");
    if (!seen.insert(p).second) {
      throw Error("duplicate compatibility pair (" + p.first + ", " + p.second + ")");
    }
  }
}

CompatibilityRelation CompatibilityRelation::parse(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const char delim = trimmed.find('\t') != std::string_view::npos ? '\t' : ',';
    auto cells = detail::split(trimmed, delim);
    if (cells.size() != 2) throw ParseError("expected two labels per line", line_no);
    auto a = std::string(detail::trim(cells[0]));
    auto b = std::string(detail::trim(cells[1]));
    if (a.empty()) throw ParseError("empty label", line_no, 1);
    if (b.empty()) throw ParseError("empty label", line_no, 2);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  if (pairs.empty()) throw ParseError("compatibility relation is empty");
  try {
    return CompatibilityRelation(std::move(pairs));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

CompatibilityRelation CompatibilityRelation::load(const std::string& path) {
  try {
    return parse(detail::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

CompatibilityRelation CompatibilityRelation::full(const std::vector<std::string>& a,
                                                  const std::vector<std::string>& b) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& x : a) {
    for (const auto& y : b) pairs.emplace_back(x, y);
  }
  return CompatibilityRelation(std::move(pairs));
}

bool CompatibilityRelation::contains(const std::string& a, const std::string& b) const {
  return std::find(pairs_.begin(), pairs_.end(), std::pair{a, b}) != pairs_.end();
}

namespace {

std::vector<bool> relation_mask(const Basis& a, const Basis& b,
                                const CompatibilityRelation& relation) {
  std::vector<bool> mask(a.size() * b.size(), false);
  for (const auto& [x, y] : relation.pairs()) {
    if (!a.contains(x)) {
      throw Error("relation label \"" + x + "\" not among first-concept exemplars " + a.to_string());
    }
    if (!b.contains(y)) {
      throw Error("relation label \"" + y + "\" not among second-concept exemplars " +
                  b.to_string());
    }
    mask[a.index_of(x) * b.size() + b.index_of(y)] = true;
  }
  return mask;
}

}  // namespace

EntangledState EntangledState::from_amplitudes(Basis a, Basis b,
                                               const CompatibilityRelation& relation,
                                               std::vector<Complex> raw) {
  if (raw.size() != a.size() * b.size()) throw Error("amplitude count does not match bases");
  auto mask = relation_mask(a, b, relation);
  double norm2 = 0.0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (!mask[k] && raw[k] != Complex{0.0, 0.0}) {
      throw Error("nonzero amplitude on a pair outside the compatibility relation");
    }
    norm2 += std::norm(raw[k]);
  }
  if (!(norm2 > 0.0)) throw Error("zero vector not normalizable");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : raw) z *= inv;
  return EntangledState(std::move(a), std::move(b), std::move(mask), std::move(raw));
}

Complex EntangledState::amplitude(const std::string& x, const std::string& y) const {
  return amplitude(a_.index_of(x), b_.index_of(y));
}

StateVector EntangledState::as_state_vector() const {
  return StateVector::normalize(tensor_basis(a_, b_), amps_);
}

EntangledState combine(const ContextDistribution& pa, const ContextDistribution& pb,
                       const CompatibilityRelation& relation) {
  Basis a(pa.exemplars);
  Basis b(pb.exemplars);
  auto mask = relation_mask(a, b, relation);
  std::vector<Complex> raw(a.size() * b.size());
  bool any = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double w = pa.probabilities[i] * pb.probabilities[j];
      if (mask[i * b.size() + j] && w > 0.0) {
        raw[i * b.size() + j] = std::sqrt(w);
        any = true;
      }
    }
  }
  if (!any) throw Error("concepts incompatible under R");
  return EntangledState::from_amplitudes(std::move(a), std::move(b), relation, std::move(raw));
}

double joint_expectation(const EntangledState& s, const Observable& a, const Observable& b) {
  require_same_basis(a.basis(), s.basis_a(), "joint_expectation (first factor)");
  require_same_basis(b.basis(), s.basis_b(), "joint_expectation (second factor)");
  double sum = 0.0;
  for (std::size_t i = 0; i < s.basis_a().size(); ++i) {
    for (std::size_t j = 0; j < s.basis_b().size(); ++j) {
      sum += a.sign(i) * b.sign(j) * s.weight(i, j);
    }
  }
  return std::clamp(sum, -1.0, 1.0);
}

ContextDistribution marginal(const EntangledState& s, Side side) {
  const Basis& own = side == Side::A ? s.basis_a() : s.basis_b();
  ContextDistribution d;
  d.context = side == Side::A ? "marginal:A" : "marginal:B";
  d.exemplars = own.labels();
  d.probabilities.assign(own.size(), 0.0);
  for (std::size_t i = 0; i < s.basis_a().size(); ++i) {
    for (std::size_t j = 0; j < s.basis_b().size(); ++j) {
      d.probabilities[side == Side::A ? i : j] += s.weight(i, j);
    }
  }
  return d;
}

EntangledState conditional_collapse(const EntangledState& s, Side side, const std::string& x,
                                    double tol) {
  const Basis& own = side == Side::A ? s.basis_a() : s.basis_b();
  const std::size_t k = own.index_of(x);
  const ContextDistribution m = marginal(s, side);
  if (m.probabilities[k] <= tol) {
    throw Error("exemplar \"" + x + "\" has zero probability; context incompatible with state");
  }
  std::vector<std::pair<std::string, std::string>> support;
  std::vector<Complex> raw(s.basis_a().size() * s.basis_b().size());
  for (std::size_t i = 0; i < s.basis_a().size(); ++i) {
    for (std::size_t j = 0; j < s.basis_b().size(); ++j) {
      if (!s.allowed(i, j)) continue;
      support.emplace_back(s.basis_a()[i], s.basis_b()[j]);
      if ((side == Side::A ? i : j) == k) raw[i * s.basis_b().size() + j] = s.amplitude(i, j);
    }
  }
  return EntangledState::from_amplitudes(s.basis_a(), s.basis_b(),
                                         CompatibilityRelation(std::move(support)),
                                         std::move(raw));
}

double guppy_gap(const EntangledState& s, const ContextDistribution& pa,
                 const ContextDistribution& pb, const std::string& x) {
  if (!s.basis_a().contains(x) || !s.basis_b().contains(x)) {
    throw Error("exemplar \"" + x + "\" must belong to both concepts");
  }
  const ContextDistribution m = marginal(s, Side::A);
  return m.probability(x) - std::max(pa.probability(x), pb.probability(x));
}

SpinObservable::SpinObservable(double nx, double ny, double nz) {
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (!(norm > 0.0)) throw Error("spin direction must be nonzero");
  n_ = {nx / norm, ny / norm, nz / norm};
}

SpinObservable SpinObservable::from_angles(double theta, double phi) {
  return SpinObservable(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                        std::cos(theta));
}

std::array<Complex, 4> SpinObservable::matrix() const {
  const auto [x, y, z] = n_;
  return {Complex{z, 0.0}, Complex{x, -y}, Complex{x, y}, Complex{-z, 0.0}};
}

double joint_expectation(const EntangledState& s, const SpinObservable& a,
                         const SpinObservable& b) {
  if (s.basis_a().size() != 2 || s.basis_b().size() != 2) {
    throw Error("spin observables need two-dimensional factors");
  }
  const auto ma = a.matrix();
  const auto mb = b.matrix();
  // (A (x) B)[(i,j),(k,l)] = A[i][k] B[j][l]
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Complex row{0.0, 0.0};
      for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t l = 0; l < 2; ++l) {
          row += ma[i * 2 + k] * mb[j * 2 + l] * s.amplitude(k, l);
        }
      }
      sum += std::conj(s.amplitude(i, j)) * row;
    }
  }
  return std::clamp(sum.real(), -1.0, 1.0);
}

}  // namespace ctxprob
