#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "eesampler/errors.hpp"
#include "eesampler/estimators.hpp"
#include "test_support.hpp"

namespace eesampler {
namespace {

Trace trace_2d(const std::vector<std::pair<double, double>>& points, double energy = 0.0) {
  Trace t(2);
  for (const auto& [x, y] : points) {
    const double p[2] = {x, y};
    t.push_back(p, energy);
  }
  return t;
}

RunSummary run_with(double p) {
  RunSummary r;
  r.p_hat = p;
  return r;
}

TEST(VisitProbability, Examples) {
  EXPECT_DOUBLE_EQ(visit_probability(trace_2d({{0, 0}, {0, 0}, {0, 0}}), 0.05), 1.0);
  EXPECT_DOUBLE_EQ(visit_probability(trace_2d({{0, 0}, {5, 5}, {0, 0}, {5, 5}}), 0.05), 0.5);
  EXPECT_DOUBLE_EQ(visit_probability(trace_2d({{0.05, 0}, {0, 0.0499}}), 0.05), 0.5);  // strict
  EXPECT_THROW(visit_probability(Trace(2), 0.05), UndefinedEstimateError);
  EXPECT_THROW(visit_probability(trace_2d({{0, 0}}), 0.0), std::invalid_argument);
}

TEST(VisitsBall, StrictInequality) {
  const double origin[2] = {0, 0};
  EXPECT_TRUE(visits_ball(trace_2d({{5, 5}, {0.01, 0.01}}), origin, 0.05));
  EXPECT_FALSE(visits_ball(trace_2d({{5, 5}, {0.05, 0.0}}), origin, 0.05));
  EXPECT_FALSE(visits_ball(Trace(2), origin, 0.05));
}

TEST(ChenKim, Examples) {
  const Ladder single = Ladder::single(0.0);
  const auto near_origin = [](std::span<const double> x) { return std::hypot(x[0], x[1]) < 0.05; };
  const Trace half = trace_2d({{0, 0}, {5, 5}});
  const double two[1] = {2.0};
  EXPECT_DOUBLE_EQ(chen_kim_estimator(half, single, near_origin, two), 1.0);

  const Ladder ladder({-7.0, 3.13, 8.3, 26.8}, {1.0, 3.1, 9.7, 30.0});
  const std::vector<double> weights{3.0, 5.0, 7.0, 11.0};
  EXPECT_DOUBLE_EQ(chen_kim_estimator(trace_2d({{5, 5}, {4, 4}}), ladder, near_origin, weights), 0.0);

  const double one[1] = {1.0};
  EXPECT_THROW(chen_kim_estimator(half, ladder, near_origin, one), std::invalid_argument);
}

TEST(ChenKim, UsesTheRingOfEachStatesEnergy) {
  const Ladder ladder({0.0, 1.0, 2.0}, {1.0, 2.0, 4.0});
  Trace t(1);
  for (double e : {0.5, 1.5, 2.5, 1.5}) {
    const double x[1] = {e};
    t.push_back(x, e);
  }
  const std::vector<double> w{10.0, 100.0, 1000.0};
  const auto all = [](std::span<const double>) { return true; };
  EXPECT_DOUBLE_EQ(chen_kim_estimator(t, ladder, all, w), (10.0 + 100.0 + 1000.0 + 100.0) / 4.0);
}

TEST(ChenKim, UnitWeightsEqualVisitProbability) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 0.05);
  std::uniform_real_distribution<double> e(-7.0, 40.0);
  const Ladder ladder({-7.0, 3.13, 8.3, 26.8}, {1.0, 3.1, 9.7, 30.0});
  const std::vector<double> ones(4, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Trace t(2);
    for (int i = 0; i < 1000; ++i) {
      const double x[2] = {n(rng), n(rng)};
      t.push_back(x, e(rng));
    }
    const auto in_ball = [](std::span<const double> x) { return std::sqrt(x[0] * x[0] + x[1] * x[1]) < 0.05; };
    EXPECT_EQ(chen_kim_estimator(t, ladder, in_ball, ones), visit_probability(t, 0.05));
  }
}

// ---------------------------------------------------------------------------

TEST(RingWeighted, SingleChainIsThePlainAverage) {
  Trace t(1);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double sum = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double x[1] = {u(rng)};
    t.push_back(x, u(rng));
    sum += x[0] * x[0];
  }
  const Trace traces[1] = {t};
  const double est = ee_ring_weighted_estimator(traces, Ladder::single(-3.0),
                                                [](std::span<const double> x) { return x[0] * x[0]; });
  EXPECT_NEAR(est, sum / 500.0, 1e-12);
}

std::vector<Trace> exact_samples(const std::vector<double>& energies, const Ladder& ladder,
                                 std::size_t per_chain, std::mt19937_64& rng, double shift = 0.0) {
  std::vector<Trace> traces;
  for (std::size_t i = 0; i < ladder.chain_count(); ++i) {
    const auto p = testing::enumerate_flattened(energies, ladder.level(i), ladder.temperature(i));
    std::discrete_distribution<std::size_t> draw(p.begin(), p.end());
    Trace t(1);
    for (std::size_t s = 0; s < per_chain; ++s) {
      const std::size_t k = draw(rng);
      const double x[1] = {static_cast<double>(k)};
      t.push_back(x, energies[k] + shift);
    }
    traces.push_back(std::move(t));
  }
  return traces;
}

TEST(RingWeighted, MatchesEnumerationWithExactChainSamples) {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 40;
    const auto energies = testing::random_energies(n, 12.0, seed);
    const double e_min = *std::min_element(energies.begin(), energies.end());
    const Ladder ladder({e_min, e_min + 2.0, e_min + 5.0}, {1.0, 2.5, 6.0});
    std::vector<double> g(n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : g) v = u(rng);
    const auto pi0 = testing::enumerate_flattened(energies, -INFINITY, 1.0);
    const double truth = std::inner_product(pi0.begin(), pi0.end(), g.begin(), 0.0);
    const auto gf = [&](std::span<const double> x) { return g[static_cast<std::size_t>(x[0])]; };

    const int reps = 100;
    std::vector<double> est;
    for (int r = 0; r < reps; ++r) {
      const auto traces = exact_samples(energies, ladder, 400, rng);
      est.push_back(ee_ring_weighted_estimator(traces, ladder, gf));
    }
    const double mean = std::accumulate(est.begin(), est.end(), 0.0) / reps;
    double ss = 0.0;
    for (double v : est) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (reps - 1));
    EXPECT_LT(std::abs(mean - truth), 3.0 * sd / std::sqrt(reps)) << "seed " << seed;
    int within = 0;
    for (double v : est) within += std::abs(v - truth) < 3.0 * sd;
    EXPECT_GE(within, 95);
  }
}

TEST(RingWeighted, InvariantToEnergyShift) {
  std::mt19937_64 rng(21);
  const auto energies = testing::random_energies(30, 8.0, 21);
  const double e_min = *std::min_element(energies.begin(), energies.end());
  const Ladder ladder({e_min, e_min + 1.5, e_min + 4.0}, {1.0, 2.0, 5.0});
  const auto g = [](std::span<const double> x) { return std::cos(x[0]); };
  std::uniform_real_distribution<double> shift(-500.0, 500.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto base = exact_samples(energies, ladder, 300, rng);
    const double c = shift(rng);
    std::vector<Trace> shifted;
    for (const auto& t : base) {
      Trace s(1);
      for (std::size_t k = 0; k < t.size(); ++k) s.push_back(t.point(k), t.energy(k) + c);
      shifted.push_back(std::move(s));
    }
    std::vector<double> levels = ladder.energy_levels();
    for (auto& h : levels) h += c;
    const Ladder moved(levels, ladder.temperatures());
    EXPECT_NEAR(ee_ring_weighted_estimator(shifted, moved, g), ee_ring_weighted_estimator(base, ladder, g), 1e-9);
  }
}

TEST(RingWeighted, IsDeterministic) {
  std::mt19937_64 rng(22);
  const auto energies = testing::random_energies(30, 8.0, 22);
  const Ladder ladder({0.0, 2.0, 4.0}, {1.0, 2.0, 4.0});
  const auto traces = exact_samples(energies, ladder, 200, rng);
  const auto g = [](std::span<const double> x) { return x[0]; };
  EXPECT_EQ(ee_ring_weighted_estimator(traces, ladder, g), ee_ring_weighted_estimator(traces, ladder, g));
}

TEST(RingWeighted, Errors) {
  const Ladder ladder({0.0, 1.0}, {1.0, 2.0});
  const auto g = [](std::span<const double>) { return 1.0; };
  std::vector<Trace> none;
  EXPECT_THROW(ee_ring_weighted_estimator(none, ladder, g), UndefinedEstimateError);
  std::vector<Trace> empty_zero{Trace(1), Trace(1)};
  const double x[1] = {0.0};
  empty_zero[1].push_back(x, 1.0);
  EXPECT_THROW(ee_ring_weighted_estimator(empty_zero, ladder, g), UndefinedEstimateError);
  std::vector<Trace> too_many(3, Trace(1));
  for (auto& t : too_many) t.push_back(x, 0.0);
  EXPECT_THROW(ee_ring_weighted_estimator(too_many, ladder, g), std::invalid_argument);

  std::vector<Trace> degenerate(1, Trace(1));
  degenerate[0].push_back(x, std::numeric_limits<double>::infinity());
  try {
    ee_ring_weighted_estimator(degenerate, ladder, g);
    FAIL() << "expected DegenerateWeightsError";
  } catch (const DegenerateWeightsError& e) {
    EXPECT_FALSE(std::isfinite(e.max_log_weight()));
  }
}

// ---------------------------------------------------------------------------

TEST(ModeJumps, Examples) {
  const std::vector<Mode> modes{{{0.0, 0.0}, 0.1}, {{5.0, 5.0}, 1.0}};
  EXPECT_EQ(count_mode_jumps(trace_2d({{0, 0}, {0, 0}, {5, 5}, {5, 5}, {0, 0}}), modes), 2u);
  EXPECT_EQ(count_mode_jumps(trace_2d({{0, 0}, {2, 2}, {2, 3}, {5, 5}}), modes), 1u);
  EXPECT_EQ(count_mode_jumps(trace_2d({{0, 0}, {2, 2}, {0, 0}}), modes), 0u);
  EXPECT_EQ(count_mode_jumps(trace_2d({{2, 2}, {3, 3}}), modes), 0u);
  EXPECT_EQ(count_mode_jumps(Trace(2), modes), 0u);
  EXPECT_THROW(count_mode_jumps(Trace(2), {}), std::invalid_argument);
}

TEST(ModeJumps, FirstMatchingBasinWins) {
  const std::vector<Mode> overlapping{{{0.0, 0.0}, 2.0}, {{1.0, 0.0}, 2.0}};
  EXPECT_EQ(count_mode_jumps(trace_2d({{0.5, 0}, {1.5, 0}, {2.5, 0}}), overlapping), 1u);
}

// ---------------------------------------------------------------------------

TEST(NearestRank, Examples) {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  EXPECT_DOUBLE_EQ(nearest_rank_quantile(v, 0.05), 5.0);
  EXPECT_DOUBLE_EQ(nearest_rank_quantile(v, 0.95), 95.0);
  EXPECT_DOUBLE_EQ(nearest_rank_quantile(v, 1.0), 100.0);
  EXPECT_DOUBLE_EQ(nearest_rank_quantile({3.0}, 0.05), 3.0);
  EXPECT_DOUBLE_EQ(nearest_rank_quantile({4.0, 1.0, 3.0, 2.0}, 0.5), 2.0);
  EXPECT_THROW(nearest_rank_quantile({}, 0.5), UndefinedEstimateError);
  EXPECT_THROW(nearest_rank_quantile({1.0}, 0.0), std::invalid_argument);
}

TEST(Aggregate, TwoReplicates) {
  const std::vector<RunSummary> runs{run_with(0.4), run_with(0.6)};
  const auto s = aggregate(runs, 0.5);
  EXPECT_NEAR(s.mean, 0.5, 1e-15);
  EXPECT_NEAR(s.std, std::sqrt(0.02), 1e-12);
  EXPECT_NEAR(s.mse, 0.01, 1e-15);
  EXPECT_DOUBLE_EQ(s.q05, 0.4);
  EXPECT_DOUBLE_EQ(s.q95, 0.6);
  EXPECT_TRUE(s.std_defined);
}

TEST(Aggregate, AllAtTruth) {
  const std::vector<RunSummary> runs(10, run_with(0.5));
  const auto s = aggregate(runs, 0.5);
  EXPECT_EQ(s.std, 0.0);
  EXPECT_EQ(s.mse, 0.0);
}

TEST(Aggregate, SingleReplicateFlagsUndefinedStd) {
  const std::vector<RunSummary> runs{run_with(0.3)};
  const auto s = aggregate(runs, 0.5);
  EXPECT_FALSE(s.std_defined);
  EXPECT_EQ(s.std, 0.0);
  EXPECT_NEAR(s.mse, 0.04, 1e-15);
}

TEST(Aggregate, CountsJumpsAndMisses) {
  std::vector<RunSummary> runs(4);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    runs[i].jumps = 10 * i;
    runs[i].miss = i % 2 == 0;
  }
  const auto s = aggregate(runs, 0.5);
  EXPECT_DOUBLE_EQ(s.jump_mean, 15.0);
  EXPECT_EQ(s.miss_count, 2u);
  EXPECT_THROW(aggregate(std::vector<RunSummary>{}, 0.5), UndefinedEstimateError);
  EXPECT_THROW(aggregate(runs, 1.5), std::invalid_argument);
}

TEST(Aggregate, MseDecomposesIntoBiasAndVariance) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(u(rng) * 200);
    std::vector<RunSummary> runs;
    for (std::size_t i = 0; i < n; ++i) runs.push_back(run_with(u(rng)));
    const double truth = u(rng);
    const auto s = aggregate(runs, truth);
    const double bias = s.mean - truth;
    ASSERT_NEAR(s.mse, bias * bias + (n - 1.0) / n * s.std * s.std, 1e-12);
    ASSERT_LE(s.q05, s.q95);
    ASSERT_GE(s.std, 0.0);
  }
}

// Replicates with a prescribed sample mean and (n-1) standard deviation.
std::vector<RunSummary> replicates_with(double mean, double sd, std::size_t n) {
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::cos(0.7 * static_cast<double>(i) + 0.3);
  const double zm = std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (auto& v : z) {
    v -= zm;
    ss += v * v;
  }
  const double scale = sd / std::sqrt(ss / static_cast<double>(n - 1));
  std::vector<RunSummary> runs;
  for (double v : z) runs.push_back(run_with(mean + scale * v));
  return runs;
}

TEST(Aggregate, MseFromSummaryMeanAndStd) {
  const auto runs = replicates_with(0.4567, 0.1973, 100);
  const auto s = aggregate(runs, 0.5);
  EXPECT_NEAR(s.mean, 0.4567, 1e-12);
  EXPECT_NEAR(s.std, 0.1973, 1e-12);
  EXPECT_NEAR(s.mse, 0.0404, 0.0005);
}

}  // namespace
}  // namespace eesampler
