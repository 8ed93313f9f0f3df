#include <doctest.h>

#include <cmath>
#include <random>

#include "ctxprob/error.hpp"
#include "ctxprob/hilbert.hpp"

using namespace ctxprob;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Basis ab() { return Basis({"a", "b"}); }

StateVector real_state(Basis basis, std::vector<double> values) {
  std::vector<Complex> raw(values.begin(), values.end());
  return StateVector::normalize(std::move(basis), std::move(raw));
}

StateVector random_state(std::mt19937_64& rng, const Basis& basis) {
  std::normal_distribution<double> g;
  std::vector<Complex> raw(basis.size());
  for (auto& z : raw) z = {g(rng), g(rng)};
  return StateVector::normalize(basis, std::move(raw));
}

}  // namespace

TEST_CASE("basis rejects duplicate and empty labels") {
  CHECK_THROWS_AS(Basis({"a", "a"}), Error);
  CHECK_THROWS_AS(Basis({"a", ""}), Error);
  CHECK(Basis({"x", "y"}).index_of("y") == 1);
}

TEST_CASE("inner product") {
  const auto e1 = real_state(ab(), {1, 0});
  const auto e2 = real_state(ab(), {0, 1});
  const auto plus = real_state(ab(), {1, 1});

  CHECK(std::abs(inner(plus, plus) - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(inner(e1, e2)) == 0.0);
  CHECK(inner(plus, e1).real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(inner(plus, e1).imag() == 0.0);

  SUBCASE("conjugate-linear in the first argument") {
    const auto u = StateVector::normalize(ab(), {Complex{0, 1}, Complex{0, 0}});
    CHECK(inner(u, e1) == Complex{0, -1});
    CHECK(inner(e1, u) == Complex{0, 1});
  }

  SUBCASE("basis mismatch names both bases") {
    const auto other = real_state(Basis({"a", "c"}), {1, 0});
    try {
      (void)inner(e1, other);
      FAIL("expected an error");
    } catch (const Error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("[a, b]") != std::string::npos);
      CHECK(msg.find("[a, c]") != std::string::npos);
    }
  }
}

TEST_CASE("normalize") {
  const auto v = real_state(ab(), {2, 0});
  CHECK(v.amplitude(0) == Complex{1, 0});
  CHECK(v.amplitude(1) == Complex{0, 0});

  const auto w = real_state(ab(), {1, 1});
  CHECK(w.amplitude(0).real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(w.amplitude(1).real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));

  CHECK_THROWS_WITH_AS(real_state(ab(), {0, 0}), "zero vector not normalizable", Error);
  CHECK_THROWS_AS(real_state(ab(), {1}), Error);
}

TEST_CASE("tensor product") {
  const auto x = real_state(ab(), {1, 0});
  const auto y = real_state(ab(), {0, 1});
  const auto xy = tensor(x, y);
  const auto yx = tensor(y, x);

  REQUIRE(xy.size() == 4);
  CHECK(xy.amplitude(std::string("a") + std::string(kPairSeparator) + "b") == Complex{1, 0});
  for (std::size_t i = 0; i < 4; ++i) {
    if (i != 1) CHECK(xy.amplitude(i) == Complex{0, 0});
  }
  CHECK(xy.amplitudes()[1] != yx.amplitudes()[1]);

  SUBCASE("bilinear before normalization") {
    const std::vector<Complex> u{0.3, 0.7};
    const std::vector<Complex> v{0.2, -0.5, 0.9};
    std::vector<Complex> half_u{0.15, 0.35};
    const auto lhs = tensor_amplitudes(half_u, v);
    const auto rhs = tensor_amplitudes(u, v);
    for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs[i] - 0.5 * rhs[i]) < 1e-15);
  }

  SUBCASE("associative under label re-pairing") {
    std::mt19937_64 rng(7);
    const Basis b3({"p", "q", "r"});
    for (int trial = 0; trial < 50; ++trial) {
      const auto u = random_state(rng, ab());
      const auto v = random_state(rng, b3);
      const auto w = random_state(rng, ab());
      const auto left = tensor(tensor(u, v), w);
      const auto right = tensor(u, tensor(v, w));
      REQUIRE(left.basis() == right.basis());
      for (std::size_t i = 0; i < left.size(); ++i) {
        CHECK(std::abs(left.amplitude(i) - right.amplitude(i)) < 1e-12);
      }
    }
  }
}

TEST_CASE("born probability") {
  const auto plus = real_state(ab(), {1, 1});
  CHECK(born_prob(Projector::onto(ab(), {"a"}), plus) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(born_prob(Projector::identity(ab()), plus) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(born_prob(Projector::zero(ab()), plus) == 0.0);
  CHECK_THROWS_AS(born_prob(Projector::identity(Basis({"a", "z"})), plus), Error);

  SUBCASE("complete orthogonal family sums to one") {
    std::mt19937_64 rng(11);
    const Basis b({"w", "x", "y", "z"});
    for (int trial = 0; trial < 100; ++trial) {
      const auto v = random_state(rng, b);
      const double total = born_prob(Projector::onto(b, {"w", "y"}), v) +
                           born_prob(Projector::onto(b, {"x"}), v) +
                           born_prob(Projector::onto(b, {"z"}), v);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("collapse") {
  const auto plus = real_state(ab(), {1, 1});
  const auto onto_a = Projector::onto(ab(), {"a"});
  const auto c = collapse(onto_a, plus);
  CHECK(c.amplitude(0) == Complex{1, 0});
  CHECK(c.amplitude(1) == Complex{0, 0});

  const auto v = real_state(ab(), {0.6, 0.8});
  const auto d = collapse(Projector::onto(ab(), {"b"}), v);
  CHECK(d.amplitude(0) == Complex{0, 0});
  CHECK(d.amplitude(1).real() == doctest::Approx(1.0).epsilon(1e-15));

  SUBCASE("idempotent and support-shrinking") {
    std::mt19937_64 rng(3);
    const Basis b({"w", "x", "y", "z"});
    const auto p = Projector::onto(b, {"x", "z"});
    for (int trial = 0; trial < 50; ++trial) {
      const auto s = random_state(rng, b);
      const auto once = collapse(p, s);
      const auto twice = collapse(p, once);
      for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(std::abs(once.amplitude(i) - twice.amplitude(i)) < 1e-12);
      }
      for (const auto& label : once.support()) CHECK((label == "x" || label == "z"));
    }
  }

  CHECK_THROWS_WITH_AS(collapse(Projector::onto(ab(), {"a"}), real_state(ab(), {0, 1})),
                       "context incompatible with state", Error);
}

TEST_CASE("expectation of diagonal observables") {
  const auto plus = real_state(ab(), {1, 1});
  CHECK(expectation(Observable::trivial(ab()), plus) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(expectation(Observable(ab(), std::vector<int>{1, -1}), plus) ==
        doctest::Approx(0.0).epsilon(1e-15));
  const auto v = real_state(ab(), {0.6, 0.8});
  CHECK(expectation(Observable(ab(), {{"a", 1}, {"b", -1}}), v) == doctest::Approx(-0.28).epsilon(1e-14));

  CHECK_THROWS_AS(Observable(ab(), std::vector<int>{1, 0}), Error);
  CHECK_THROWS_AS(Observable(ab(), std::map<std::string, int>{{"a", 1}}), Error);

  SUBCASE("equals the difference of sign-class probabilities") {
    std::mt19937_64 rng(5);
    const Basis b({"w", "x", "y", "z"});
    const Observable obs(b, std::vector<int>{1, -1, -1, 1});
    const auto [plus_p, minus_p] = spectral_projectors(obs);
    for (int trial = 0; trial < 100; ++trial) {
      const auto s = random_state(rng, b);
      CHECK(expectation(obs, s) ==
            doctest::Approx(born_prob(plus_p, s) - born_prob(minus_p, s)).epsilon(1e-14));
    }
  }
}
