#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "juntawalk/fourier.hpp"
#include "support/brute.hpp"

using namespace juntawalk;

TEST(Wht, MatchesDirectSummation) {
  std::mt19937_64 gen(1);
  for (int n = 1; n <= 7; ++n) {
    const TruthTable f = brute::random_table(n, gen);
    const Spectrum s = wht(f);
    for (std::uint64_t m = 0; m < s.coeffs.size(); ++m) {
      ASSERT_DOUBLE_EQ(s[m], brute::coefficient(f, brute::coords_of(m))) << n << " " << m;
    }
  }
}

TEST(Wht, Examples) {
  const Spectrum one = wht(TruthTable::constant(3, 1));
  EXPECT_EQ(one[0], 1.0);
  for (std::uint64_t m = 1; m < 8; ++m) EXPECT_EQ(one[m], 0.0);

  const Spectrum dict = wht(TruthTable::parity(IndexSet::of(3, {1})));
  for (std::uint64_t m = 0; m < 8; ++m) EXPECT_EQ(dict[m], m == 1 ? 1.0 : 0.0);

  const Spectrum and2 = wht(TruthTable::conjunction(2, std::vector<int>{1, 2}));
  EXPECT_EQ(and2[0b00], 0.5);
  EXPECT_EQ(and2[0b01], 0.5);
  EXPECT_EQ(and2[0b10], 0.5);
  EXPECT_EQ(and2[0b11], -0.5);
}

TEST(Wht, InverseRoundTrip) {
  std::mt19937_64 gen(2);
  const TruthTable f = brute::random_table(9, gen);
  const std::vector<double> back = inverse_wht(wht(f));
  for (std::uint64_t x = 0; x < f.size(); ++x) ASSERT_EQ(back[x], f.at(x));
}

TEST(Wht, ParsevalOnRandomFunctions) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 10);
    const Spectrum s = wht(brute::random_table(n, gen));
    ASSERT_NEAR(sum_of_squares(s), 1.0, 1e-12);
  }
}

TEST(InnerProduct, TimeAndFrequencyAgree) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 100; ++trial) {
    const TruthTable f = brute::random_table(8, gen), g = brute::random_table(8, gen);
    EXPECT_NEAR(inner_product(f, g), inner_product(wht(f), wht(g)), 1e-10);
  }
  EXPECT_EQ(inner_product(TruthTable::parity(IndexSet{4, 3}), TruthTable::parity(IndexSet{4, 3})), 1.0);
  EXPECT_EQ(inner_product(TruthTable::parity(IndexSet{4, 3}), TruthTable::parity(IndexSet{4, 5})), 0.0);
  EXPECT_EQ(inner_product(TruthTable::conjunction(4, std::vector<int>{1, 2, 3}),
                          TruthTable::conjunction(4, std::vector<int>{2, 3, 4})),
            0.75);
}

TEST(Projection, Examples) {
  std::mt19937_64 gen(5);
  const Spectrum s = wht(brute::random_table(6, gen));
  EXPECT_NEAR(subcube_projection_exact(s, IndexSet{6, 0}), 1.0, 1e-12);
  EXPECT_NEAR(subcube_projection_exact(s, IndexSet::full(6)), s[0] * s[0], 1e-15);
  const Spectrum and2 = wht(TruthTable::conjunction(2, std::vector<int>{1, 2}));
  EXPECT_DOUBLE_EQ(subcube_projection_exact(and2, IndexSet::of(2, {1})), 0.5);
}

TEST(BoundedInfluence, ExpectationFormula) {
  const Spectrum and2 = wht(TruthTable::conjunction(2, std::vector<int>{1, 2}));
  EXPECT_DOUBLE_EQ(expected_bounded_influence(and2, 1, 0.3), 0.25 + 0.25 * 0.7);
}

TEST(BoundedInfluence, EstimatesFromRefreshPairs) {
  const int n = 4;
  const double p = 0.5;
  const RefreshSchedule schedule = RefreshSchedule::at_density(n, p);
  auto run = [&](const TruthTable& f, std::uint64_t seed) {
    WalkOracle oracle(LabelSource(f), seed);
    Rng rng(seed + 1);
    return harvest_refresh_pairs(oracle, 40000, schedule, rng);
  };
  const auto dict = run(TruthTable::parity(IndexSet::of(n, {1})), 10);
  EXPECT_NEAR(estimate_bounded_influence(dict, 1), 1.0, 0.03);
  EXPECT_NEAR(estimate_bounded_influence(dict, 2), 0.0, 0.03);

  const TruthTable and2 = TruthTable::conjunction(n, std::vector<int>{1, 2});
  const auto pairs = run(and2, 20);
  EXPECT_NEAR(estimate_bounded_influence(pairs, 1), 0.25 + 0.25 * (1 - p), 0.03);
  const auto all = estimate_bounded_influences(pairs, n);
  ASSERT_TRUE(all[0].has_value());
  EXPECT_DOUBLE_EQ(*all[0], estimate_bounded_influence(pairs, 1));

  const std::vector<RefreshPair> none{RefreshPair{0, 0, 1, 1, IndexSet{n, 0}}};
  EXPECT_THROW(estimate_bounded_influence(none, 1), std::invalid_argument);
  EXPECT_FALSE(estimate_bounded_influences(none, n)[0].has_value());
}

TEST(LagWeight, ClosedForm) {
  EXPECT_DOUBLE_EQ(lag_weight(0, 8, 5), 1.0);
  EXPECT_DOUBLE_EQ(lag_weight(2, 8, 3), std::pow(0.5, 3));
  EXPECT_DOUBLE_EQ(lag_weight(8, 8, 3), -1.0);
}

TEST(EstimatorParams, ForThreshold) {
  const EstimatorParams p = EstimatorParams::for_threshold(8, 0.25, 0.01);
  EXPECT_EQ(p.lag, static_cast<std::size_t>(std::ceil(4 * std::log(32.0))));
  EXPECT_LE(std::exp(-2.0 * p.lag / 8), 0.25 / 8);
  EXPECT_EQ(p.pair_count, static_cast<std::size_t>(std::ceil(2 * std::log(200.0) * 1024)));
  EXPECT_EQ(p.stride() % 2, 1u);
  EXPECT_EQ(p.stride(), (p.lag + 2) | 1);
  EXPECT_EQ(p.required_walk_length(), (p.pair_count - 1) * p.stride() + p.lag + 2);
}

TEST(Estimator, DictatorAndZeroCoefficient) {
  const int n = 8;
  const TruthTable f = TruthTable::parity(IndexSet::of(n, {1}));
  EstimatorParams p = EstimatorParams::for_threshold(n, 0.2, 0.01);
  const LabeledWalk w =
      generate_walk(LabelSource(f), WalkConfig{n, p.required_walk_length(), 3, false});
  const double bias = std::exp(-2.0 * p.lag / n);
  EXPECT_NEAR(estimate_sq_coeff(w, IndexSet::of(n, {1}), p), 1.0, 0.05 + bias);
  EXPECT_NEAR(estimate_sq_coeff(w, IndexSet::of(n, {2}), p), 0.0, 0.05 + bias);
}

TEST(Estimator, EmbeddedAnd) {
  const int n = 8;
  const TruthTable f = TruthTable::conjunction(n, std::vector<int>{1, 2});
  const double truth = std::pow(wht(f).at(IndexSet::of(n, {1, 2})), 2);
  EXPECT_DOUBLE_EQ(truth, 0.25);
  EstimatorParams p = EstimatorParams::for_threshold(n, 0.1, 0.01);
  const LabeledWalk w =
      generate_walk(LabelSource(f), WalkConfig{n, p.required_walk_length(), 8, false});
  EXPECT_NEAR(estimate_sq_coeff(w, IndexSet::of(n, {1, 2}), p), truth,
              p.tolerance + std::exp(-2.0 * p.lag / n));
}

TEST(Estimator, ExpectationMatchesEmpiricalMean) {
  // With a short lag the bias is visible and must match the closed form. The
  // spacing decorrelates consecutive blocks so the iid error bound applies.
  const int n = 6;
  std::mt19937_64 gen(9);
  const TruthTable f = brute::random_table(n, gen);
  const Spectrum s = wht(f);
  EstimatorParams p;
  p.lag = 2;
  p.pair_count = 400000;
  p.block_spacing = 24;
  const LabeledWalk w =
      generate_walk(LabelSource(f), WalkConfig{n, p.required_walk_length(), 4, false});
  for (std::uint64_t m : {0ULL, 1ULL, 6ULL, 63ULL}) {
    const IndexSet set{n, m};
    EXPECT_NEAR(estimate_sq_coeff(w, set, p), expected_sq_coeff_estimate(s, set, p.lag),
                5.0 / std::sqrt(static_cast<double>(p.pair_count)))
        << m;
  }
}

TEST(Estimator, LagAveragingRemovesComplementBias) {
  // f = parity of all coordinates, S = empty: the single-lag estimator picks up
  // (-1)^t from the full set; the averaged one does not.
  const int n = 6;
  const TruthTable f = TruthTable::parity(IndexSet::full(n));
  EstimatorParams p;
  p.lag = 9;
  p.pair_count = 20000;
  const LabeledWalk w =
      generate_walk(LabelSource(f), WalkConfig{n, p.required_walk_length(), 6, false});
  EXPECT_DOUBLE_EQ(estimate_sq_coeff_single_lag(w, IndexSet{n, 0}, p), -1.0);
  EXPECT_DOUBLE_EQ(estimate_sq_coeff(w, IndexSet{n, 0}, p), 0.0);
  EXPECT_DOUBLE_EQ(expected_sq_coeff_estimate(wht(f), IndexSet{n, 0}, p.lag), 0.0);
}

TEST(Estimator, RejectsShortOrLazyWalks) {
  EstimatorParams p;
  p.lag = 5;
  p.pair_count = 10;
  const LabelSource f(TruthTable::constant(4, 1));
  const LabeledWalk short_walk = generate_walk(f, WalkConfig{4, 20, 1, false});
  EXPECT_THROW(estimate_sq_coeff(short_walk, IndexSet{4, 0}, p), std::invalid_argument);
  const LabeledWalk lazy = generate_walk(f, WalkConfig{4, 200, 1, true});
  EXPECT_THROW(estimate_sq_coeff(lazy, IndexSet{4, 0}, p), std::invalid_argument);
}

TEST(LagHistogram, MatchesPerSetEstimator) {
  std::mt19937_64 gen(12);
  for (int dim : {5, 9, 12}) {
    const TruthTable f = brute::random_table(dim, gen);
    EstimatorParams p;
    p.lag = 4;
    p.pair_count = 3000;
    p.block_spacing = 2;
    const LabeledWalk w =
        generate_walk(LabelSource(f), WalkConfig{dim, p.required_walk_length(), 7, false});
    const LagHistogram h = collect_lag_histogram(w, p);
    for (std::uint64_t m = 0; m < (1ULL << dim); m += 7) {
      const IndexSet set{dim, m};
      ASSERT_NEAR(h.estimate(set), estimate_sq_coeff(w, set, p), 1e-12) << m;
    }
  }
}

TEST(LagHistogram, StreamingMatchesStoredWalk) {
  const int n = 7;
  std::mt19937_64 gen(13);
  const TruthTable f = brute::random_table(n, gen);
  EstimatorParams p;
  p.lag = 6;
  p.pair_count = 2000;
  p.block_spacing = 1;
  WalkOracle a(LabelSource(f), 55);
  const LagHistogram streamed = collect_lag_histogram(a, p);
  WalkOracle b(LabelSource(f), 55);
  const LabeledWalk w = b.draw(p.required_walk_length());
  const LagHistogram stored = collect_lag_histogram(w, p);
  for (std::uint64_t m = 0; m < (1ULL << n); ++m) {
    ASSERT_EQ(streamed.estimate(IndexSet{n, m}), stored.estimate(IndexSet{n, m}));
  }
}

TEST(LagHistogram, SparseModeForLargeDimension) {
  const int n = 30;
  const LabelSource f(n, [](const Point& x) { return static_cast<Sign>(x.value(3)); });
  EstimatorParams p = EstimatorParams::for_threshold(n, 0.5, 0.01);
  WalkOracle oracle(f, 8);
  const LagHistogram h = collect_lag_histogram(oracle, p);
  EXPECT_NEAR(h.estimate(IndexSet::of(n, {3})), 1.0, 0.5 / 4);
  EXPECT_NEAR(h.estimate(IndexSet::of(n, {4})), 0.0, 0.5 / 4);
}
