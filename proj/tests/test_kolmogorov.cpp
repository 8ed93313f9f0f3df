#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "ctxprob/kolmogorov.hpp"

using namespace ctxprob;

namespace {

std::array<double, 16> random_weights(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, 16> w{};
  double total = 0.0;
  for (auto& x : w) total += (x = e(rng));
  for (auto& x : w) x /= total;
  return w;
}

void check_reconstruction(const CorrelationTable& t, const RealizabilityResult& r) {
  REQUIRE(r.feasible);
  double total = 0.0;
  for (double w : r.weights) {
    CHECK(w >= 0.0);
    total += w;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  const auto back = mix_strategies(r.weights);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) CHECK(std::abs(back.joint[a][b] - t.joint[a][b]) <= 1e-9);
  if (t.singles) {
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(std::abs(back.singles->rows[k] - t.singles->rows[k]) <= 1e-9);
      CHECK(std::abs(back.singles->cols[k] - t.singles->cols[k]) <= 1e-9);
    }
  }
}

}  // namespace

TEST_CASE("deterministic strategies") {
  const auto& s = enumerate_strategies();
  CHECK(s.size() == 16);
  std::set<std::string> distinct;
  for (const auto& x : s) {
    distinct.insert(x.to_string());
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) CHECK(std::abs(x.joint(a, b)) == 1);
  }
  CHECK(distinct.size() == 16);
  CHECK(s[0].to_string() == "(+,+,+,+)");
}

TEST_CASE("realizability of simple tables") {
  const auto all_ones = make_table({{{1, 1}, {1, 1}}});
  check_reconstruction(all_ones, realizable(all_ones));

  const auto zero = make_table({{{0, 0}, {0, 0}}});
  check_reconstruction(zero, realizable(zero));

  auto extreme = pet_food_table({0.0});
  const auto r = realizable(extreme);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.witness);
  CHECK(r.witness->value == 4.0);
  CHECK(r.witness->is_bell_form);
  CHECK(r.witness->evaluate(extreme) == 4.0);
}

TEST_CASE("extreme table: no strategy mixture comes close") {
  // Random search over the weight simplex. Reaching the table needs an L-inf
  // move of 0.5 in some cell, since every mixture keeps the CHSH value <= 2.
  const auto extreme = make_table({{{-1, 1}, {1, 1}}});
  std::mt19937_64 rng(53);
  double closest = 1e9;
  for (int trial = 0; trial < 100000; ++trial) {
    const auto m = mix_strategies(random_weights(rng));
    double dist = 0.0;
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) dist = std::max(dist, std::abs(m.joint[a][b] - extreme.joint[a][b]));
    closest = std::min(closest, dist);
  }
  CHECK(closest >= 0.5 - 1e-12);
}

TEST_CASE("mixtures of strategies are always realizable and reconstruct") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = mix_strategies(random_weights(rng));
    check_reconstruction(t, realizable(t));
    auto joints_only = t;
    joints_only.singles.reset();
    check_reconstruction(joints_only, realizable(joints_only));
    CHECK(is_kolmogorovian(joints_only));
  }
}

TEST_CASE("singles can make a table infeasible without a CHSH violation") {
  CorrelationTable t = make_table({{{0, 0}, {0, 0}}});
  t.singles = Singles{{1, 1}, {1, 1}};
  CHECK(is_kolmogorovian(t));  // joints alone are fine
  const auto r = realizable(t);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.witness);
  CHECK_FALSE(r.witness->is_bell_form);
  CHECK(r.witness->value > 2.0);
  CHECK(r.witness->evaluate(t) == doctest::Approx(r.witness->value));
  for (const auto& s : enumerate_strategies()) {
    std::array<double, 16> w{};
    w[static_cast<std::size_t>(&s - enumerate_strategies().data())] = 1.0;
    CHECK(r.witness->evaluate(mix_strategies(w)) <= 2.0 + 1e-9);
  }
}

TEST_CASE("LP and Bell-form enumeration agree on random tables") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int infeasible = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto t = make_table({{{u(rng), u(rng)}, {u(rng), u(rng)}}});
    const auto r = realizable(t);
    REQUIRE(r.feasible == is_kolmogorovian(t));
    if (r.feasible) {
      check_reconstruction(t, r);
    } else {
      ++infeasible;
      CHECK(r.witness->value > 2.0);
      CHECK(r.witness->evaluate(t) == doctest::Approx(r.witness->value));
    }
  }
  CHECK(infeasible > 0);
}

TEST_CASE("convexity of the classical set") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  while (checked < 300) {
    const auto a = make_table({{{u(rng), u(rng)}, {u(rng), u(rng)}}});
    const auto b = make_table({{{u(rng), u(rng)}, {u(rng), u(rng)}}});
    if (!realizable(a).feasible || !realizable(b).feasible) continue;
    Matrix2 mid{};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) mid[i][j] = 0.5 * (a.joint[i][j] + b.joint[i][j]);
    CHECK(realizable(make_table(mid)).feasible);
    ++checked;
  }
}

TEST_CASE("classification bands") {
  CHECK(classify(make_table({{{0, 0}, {0, 0}}})) == Band::Classical);
  CHECK(classify(make_table({{{1, 1}, {1, 1}}})) == Band::Classical);
  const double s = 1.0 / std::sqrt(2.0);
  const auto tsirelson = make_table({{{s, -s}, {s, s}}});
  CHECK_FALSE(is_kolmogorovian(tsirelson));
  CHECK(classify(tsirelson) == Band::QuantumAchievable);
  CHECK(classify(pet_food_table({0.0})) == Band::SupraQuantum);
  CHECK(band_name(Band::SupraQuantum) == "supra-quantum");
  CHECK(is_kolmogorovian(make_table({{{1, 1}, {1, 1}}})));
  CHECK_FALSE(is_kolmogorovian(make_table({{{-1, 1}, {1, 1}}})));
}
