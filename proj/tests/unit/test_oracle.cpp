#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "juntawalk/errors.hpp"
#include "juntawalk/harness.hpp"
#include "juntawalk/oracle_bruteforce.hpp"
#include "support/brute.hpp"

using namespace juntawalk;

namespace {

std::vector<std::uint64_t> all_points(int n) {
  std::vector<std::uint64_t> pts(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < pts.size(); ++x) pts[x] = x;
  return pts;
}

std::vector<Sign> values_of(const TruthTable& f) {
  return {f.values().begin(), f.values().end()};
}

bool depends_on(const TruthTable& g, int i) {
  for (std::uint64_t x = 0; x < g.size(); ++x) {
    if (g.at(x) != g.at(x ^ (1ULL << (i - 1)))) return true;
  }
  return false;
}

double correlation(const TruthTable& f, const TruthTable& g) {
  long long s = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x) s += f.at(x) * g.at(x);
  return static_cast<double>(s) / static_cast<double>(f.size());
}

// Largest |f^(S)| over S containing i with |S| <= k, from direct sums.
double heaviest_through(const TruthTable& f, int i, int k) {
  double best = 0.0;
  for (std::uint64_t m = 0; m < f.size(); ++m) {
    const std::vector<int> c = brute::coords_of(m);
    if (static_cast<int>(c.size()) > k || !((m >> (i - 1)) & 1)) continue;
    best = std::max(best, std::abs(brute::coefficient(f, c)));
  }
  return best;
}

}  // namespace

TEST(ExactOpt, JuntaHasZeroDistance) {
  const JuntaHypothesis g = random_junta(8, 3, 4);
  const OptResult r = exact_opt(g.materialize(), 3);
  EXPECT_EQ(r.disagreements, 0u);
  EXPECT_EQ(r.opt(), 0.0);
  EXPECT_EQ(r.witness.materialize(), g.materialize());
}

TEST(ExactOpt, ParityOnOneMoreCoordinateIsHalf) {
  for (int k = 0; k <= 4; ++k) {
    const int n = k + 2;
    std::vector<int> c;
    for (int i = 1; i <= k + 1; ++i) c.push_back(i);
    const OptResult r = exact_opt(TruthTable::parity(IndexSet::of(n, c)), k);
    EXPECT_EQ(r.opt(), 0.5) << k;
  }
}

TEST(ExactOpt, MatchesTableEnumeration) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 5;
    const int k = 1 + trial % 3;
    const TruthTable f = brute::random_table(n, gen);
    const OptResult r = exact_opt(f, k, true);
    const auto pts = all_points(n);
    const auto labels = values_of(f);
    std::uint64_t best = ~0ULL;
    std::size_t subsets = 0;
    for (std::uint64_t m = 0; m < 32; ++m) {
      const std::vector<int> c = brute::coords_of(m);
      if (static_cast<int>(c.size()) != k) continue;
      const std::uint64_t d = brute::min_disagreements(c, pts, labels);
      ASSERT_EQ(r.per_subset[subsets].first.mask, m);
      ASSERT_EQ(r.per_subset[subsets].second, d);
      best = std::min(best, d);
      ++subsets;
    }
    EXPECT_EQ(r.per_subset.size(), subsets);
    EXPECT_EQ(r.disagreements, best);
    EXPECT_EQ(disagreements(f, r.witness), best);
    EXPECT_EQ(r.witness.relevant().size(), k);
  }
}

TEST(ExactOpt, RejectsOversizedInputs) {
  EXPECT_THROW(exact_opt(TruthTable::constant(4, 1), 5), std::invalid_argument);
  EXPECT_THROW(exact_opt(TruthTable::constant(17, 1), 1), CapExceeded);
}

TEST(Oracle, RelevantVariablesAndRestriction) {
  const TruthTable f = TruthTable::conjunction(5, std::vector<int>{2, 4});
  EXPECT_EQ(relevant_variables(f), (std::vector<int>{2, 4}));
  const TruthTable fixed = restrict_variable(f, 2, 1);
  EXPECT_TRUE(relevant_variables(fixed).empty());
  EXPECT_EQ(relevant_variables(restrict_variable(f, 2, -1)), (std::vector<int>{4}));
  EXPECT_NEAR(heavy_coefficient_bound(1, 0.5), (1.0 - 1.0 / std::sqrt(2.0)) * 0.5, 1e-15);
}

TEST(Lemma, IdenticalParityIsItsOwnWitness) {
  const TruthTable chi = TruthTable::parity(IndexSet::of(6, {2, 5}));
  const LemmaCertificate c = verify_spectrum_lemma(chi, chi, 2, 0.1);
  ASSERT_TRUE(c.found);
  EXPECT_TRUE(c.fixed.empty());
  EXPECT_EQ(*c.restricted, chi);
  EXPECT_EQ(c.correlation, 1.0);
  ASSERT_EQ(c.witnesses.size(), 2u);
  for (const LemmaWitness& w : c.witnesses) EXPECT_EQ(std::abs(w.coefficient), 1.0);
}

TEST(Lemma, ConstantNeedsNoWitness) {
  std::mt19937_64 gen(3);
  const TruthTable f = brute::random_table(6, gen);
  const LemmaCertificate c = verify_spectrum_lemma(f, TruthTable::constant(6, -1), 2, 0.2);
  ASSERT_TRUE(c.found);
  EXPECT_TRUE(c.witnesses.empty());
  EXPECT_EQ(c.candidates_examined, 1u);
}

TEST(Lemma, ShiftedConjunctionDropsTheUnsupportedVariable) {
  const int k = 3, n = 4;
  const TruthTable f = TruthTable::conjunction(n, std::vector<int>{1, 2, 3});
  const TruthTable g = TruthTable::conjunction(n, std::vector<int>{2, 3, 4});
  const LemmaCertificate c = verify_spectrum_lemma(f, g, k, 0.3);
  ASSERT_TRUE(c.found);
  EXPECT_FALSE(c.fixed.empty());
  EXPECT_NE(*c.restricted, g);
  EXPECT_FALSE(depends_on(*c.restricted, 4));
}

TEST(Lemma, CertificatesHoldUnderIndependentChecks) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 6, k = 1 + trial % 3;
    const double eps = 0.1 + 0.05 * (trial % 5);
    const TruthTable f = brute::random_table(n, gen);
    const TruthTable g = random_junta(n, k, gen()).materialize();
    const LemmaCertificate c = verify_spectrum_lemma(f, g, k, eps);
    ASSERT_TRUE(c.found) << trial;
    const TruthTable& h = *c.restricted;
    EXPECT_GE(correlation(f, h), correlation(f, g) - eps - 1e-12);
    const double bound = (1.0 - 1.0 / std::sqrt(2.0)) * std::pow(2.0, -(k - 1) / 2.0) * eps;
    for (int i = 1; i <= n; ++i) {
      if (depends_on(h, i)) EXPECT_GE(heaviest_through(f, i, k), bound - 1e-12);
      if (depends_on(h, i)) EXPECT_TRUE(depends_on(g, i));
    }
  }
}

TEST(Fixtures, AllChecksPass) {
  for (int k = 1; k <= 10; ++k) {
    const FixtureReport r = counterexample_fixtures(k);
    EXPECT_EQ(r.checks.size(), 3u);
    EXPECT_TRUE(r.passed()) << k;
  }
  EXPECT_THROW(counterexample_fixtures(0), std::invalid_argument);
  EXPECT_THROW(counterexample_fixtures(11), std::invalid_argument);
}

TEST(Fixtures, AgreeWithDirectCoefficients) {
  const int k = 4, n = 5;
  const TruthTable f = TruthTable::conjunction(n, std::vector<int>{1, 2, 3, 4});
  for (std::uint64_t m = 1; m < 32; ++m) {
    const double c = brute::coefficient(f, brute::coords_of(m));
    if (m & 0b10000) {
      EXPECT_EQ(c, 0.0);
    } else {
      EXPECT_EQ(std::abs(c), std::ldexp(1.0, 1 - k));
    }
  }
}
