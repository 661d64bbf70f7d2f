#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "eesampler/errors.hpp"
#include "eesampler/target_model.hpp"
#include "test_support.hpp"

namespace eesampler {
namespace {

TEST(GaussianMixture, UnitGaussianAtOrigin) {
  const GaussianMixture g({{1.0, {0.0, 0.0}, 1.0}});
  EXPECT_NEAR(g.energy(State{0.0, 0.0}), std::log(2.0 * std::numbers::pi), 1e-12);
  EXPECT_NEAR(g.energy(State{0.0, 0.0}), 1.8379, 1e-4);
}

TEST(GaussianMixture, ComponentOrderDoesNotMatter) {
  const GaussianMixture a({{0.2, {1.0, -1.0}, 0.5}, {0.3, {0.0, 2.0}, 2.0}, {0.5, {-3.0, 0.0}, 1.0}});
  const GaussianMixture b({{0.5, {-3.0, 0.0}, 1.0}, {0.3, {0.0, 2.0}, 2.0}, {0.2, {1.0, -1.0}, 0.5}});
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 4.0);
  for (int t = 0; t < 200; ++t) {
    const State x{n(rng), n(rng)};
    EXPECT_NEAR(a.energy(x), b.energy(x), 1e-12 * std::max(1.0, std::abs(a.energy(x))));
  }
}

TEST(GaussianMixture, FiniteFarFromEveryComponent) {
  const auto needle = make_needle_target();
  const double e = needle.energy(State{1e6, -1e6});
  EXPECT_TRUE(std::isfinite(e));
  EXPECT_GT(e, 1e11);
}

TEST(GaussianMixture, RejectsNonFiniteState) {
  const auto needle = make_needle_target();
  EXPECT_THROW(needle.energy(State{std::numeric_limits<double>::quiet_NaN(), 0.0}), InvalidStateError);
  EXPECT_THROW(needle.energy(State{std::numeric_limits<double>::infinity(), 0.0}), InvalidStateError);
  EXPECT_THROW(needle.energy(State{0.0}), InvalidStateError);
}

TEST(GaussianMixture, RejectsInvalidComponents) {
  EXPECT_THROW(GaussianMixture({}), std::invalid_argument);
  EXPECT_THROW(GaussianMixture({{0.5, {0.0}, 1.0}}), std::invalid_argument);
  EXPECT_THROW(GaussianMixture({{1.0, {0.0}, 0.0}}), std::invalid_argument);
  EXPECT_THROW(GaussianMixture({{0.5, {0.0}, 1.0}, {0.5, {0.0, 1.0}, 1.0}}), std::invalid_argument);
  EXPECT_THROW(GaussianMixture({{1.0, {}, 1.0}}), std::invalid_argument);
}

TEST(GaussianMixture, ModesAreMeansWithThreeSigmaBasins) {
  const auto needle = make_needle_target();
  ASSERT_EQ(needle.modes().size(), 2u);
  EXPECT_EQ(needle.modes()[0].center, (State{0.0, 0.0}));
  EXPECT_NEAR(needle.modes()[0].basin_radius, 3.0 * std::sqrt(needle_variance()), 1e-15);
  EXPECT_NEAR(needle.modes()[1].basin_radius, 3.0, 1e-15);
}

TEST(GaussianMixture, LogSumExpMatchesNaiveSum) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::normal_distribution<double> n(0.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MixtureComponent> comps;
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
      comps.push_back({u(rng), {n(rng), n(rng), n(rng)}, u(rng) * 3.0});
      total += comps.back().weight;
    }
    for (auto& c : comps) c.weight /= total;
    const GaussianMixture g(comps);
    for (int s = 0; s < 20; ++s) {
      const State x{n(rng), n(rng), n(rng)};
      double naive = 0.0;
      for (const auto& c : comps) {
        double sq = 0.0;
        for (int j = 0; j < 3; ++j) sq += (x[j] - c.mean[j]) * (x[j] - c.mean[j]);
        naive += c.weight * std::pow(2.0 * std::numbers::pi * c.variance, -1.5) *
                 std::exp(-sq / (2.0 * c.variance));
      }
      if (naive < 1e-280) continue;
      const double expected = -std::log(naive);
      EXPECT_NEAR(g.energy(x), expected, 1e-9 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST(GaussianMixture, TranslatingMeansTranslatesTheLandscape) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 2.0);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const State v{n(rng), n(rng)};
    std::vector<MixtureComponent> comps{{0.4, {n(rng), n(rng)}, u(rng)}, {0.6, {n(rng), n(rng)}, u(rng)}};
    auto shifted = comps;
    for (auto& c : shifted) {
      c.mean[0] += v[0];
      c.mean[1] += v[1];
    }
    const GaussianMixture a(comps), b(shifted);
    // Pointwise identity plus a grid argmin check.
    double best_a = 1e300, best_b = 1e300;
    State arg_a, arg_b;
    for (int i = -60; i <= 60; ++i) {
      for (int j = -60; j <= 60; ++j) {
        const State x{i * 0.1, j * 0.1};
        const State y{x[0] + v[0], x[1] + v[1]};
        const double ea = a.energy(x), eb = b.energy(y);
        EXPECT_NEAR(ea, eb, 1e-9);
        if (ea < best_a) { best_a = ea; arg_a = x; }
        if (eb < best_b) { best_b = eb; arg_b = y; }
      }
    }
    EXPECT_NEAR(best_a, best_b, 1e-9);
    EXPECT_NEAR(arg_b[0] - arg_a[0], v[0], 1e-9);
    EXPECT_NEAR(arg_b[1] - arg_a[1], v[1], 1e-9);
  }
}

TEST(NeedleTarget, VarianceForcesMinimumEnergyMinusSeven) {
  EXPECT_NEAR(needle_variance(), 7.2565e-5, 1e-8);
  EXPECT_NEAR(std::sqrt(needle_variance()), 0.008519, 1e-6);
  const auto needle = make_needle_target();
  EXPECT_NEAR(needle.energy(State{0.0, 0.0}), -7.0, 1e-3);

  double lowest = 1e300;
  for (int i = -100; i <= 100; ++i) {
    for (int j = -100; j <= 100; ++j) lowest = std::min(lowest, needle.energy(State{i * 1e-4, j * 1e-4}));
  }
  EXPECT_NEAR(lowest, -7.0, 0.01);
}

TEST(NeedleTarget, HaystackEnergy) {
  const auto needle = make_needle_target();
  EXPECT_NEAR(needle.energy(State{5.0, 5.0}), -std::log(0.5 / (2.0 * std::numbers::pi)), 1e-12);
  EXPECT_NEAR(needle.energy(State{5.0, 5.0}), 2.531, 1e-3);
}

TEST(NeedleTarget, HalfTheMassLiesWithinPointZeroFiveOfTheOrigin) {
  const double mass = testing::integrate_disk(testing::needle_density, 0.05);
  EXPECT_NEAR(mass, 0.5, 1e-4);
}

TEST(NeedleTarget, EnergyMatchesIndependentDensity) {
  const auto needle = make_needle_target();
  for (const State& x : {State{0.0, 0.0}, State{0.01, -0.02}, State{5.0, 4.0}, State{2.5, 2.5}}) {
    EXPECT_NEAR(needle.energy(x), -std::log(testing::needle_density(x[0], x[1])), 1e-9);
  }
}

TEST(DiscreteGrid, BoltzmannIsAProbabilityVector) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto energies = testing::random_energies(40, 20.0, seed);
    const auto grid = DiscreteGrid::line(energies);
    for (double t : {0.3, 1.0, 7.0}) {
      const auto p = grid.boltzmann(t);
      double sum = 0.0;
      for (double v : p) {
        EXPECT_GE(v, 0.0);
        sum += v;
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
      const auto brute = testing::enumerate_flattened(energies, -1e300, t);
      for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], brute[i], 1e-12);
    }
  }
}

TEST(DiscreteGrid, LooksUpStatesAndRejectsOthers) {
  const DiscreteGrid grid({{2.0, 1.0}, {0.0, 0.0}, {1.0, 5.0}}, {3.0, 1.0, 2.0});
  EXPECT_EQ(grid.energy(State{2.0, 1.0}), 3.0);
  EXPECT_EQ(grid.energy(State{0.0, 0.0}), 1.0);
  EXPECT_EQ(grid.energy(State{1.0, 5.0}), 2.0);
  EXPECT_THROW(grid.energy(State{1.0, 1.0}), InvalidStateError);
  EXPECT_THROW(grid.energy(State{1.0}), InvalidStateError);
  EXPECT_THROW(DiscreteGrid({{0.0}, {0.0}}, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(DiscreteGrid({{0.0}}, {}), std::invalid_argument);
}

TEST(DiscreteGrid, InitialStatesAreInTheSupport) {
  const auto grid = DiscreteGrid::line({1.0, 2.0, 3.0, 4.0});
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_NO_THROW(grid.energy(grid.initial_state(rng, 10.0)));
}

}  // namespace
}  // namespace eesampler
