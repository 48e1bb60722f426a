#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "juntawalk/errors.hpp"
#include "juntawalk/learner.hpp"
#include "juntawalk/log.hpp"
#include "support/brute.hpp"

using namespace juntawalk;

namespace {

class QuietLog : public ::testing::Test {
 protected:
  void SetUp() override { set_log_level(LogLevel::quiet); }
  void TearDown() override { set_log_level(LogLevel::warning); }
};

LearnResult learn(const TruthTable& f, const LearnParams& p, std::uint64_t seed) {
  WalkOracle oracle(LabelSource(f), derive_seed(seed, 1));
  return learn_juntas(oracle, p, derive_seed(seed, 2));
}

}  // namespace

TEST(Theta, Values) {
  EXPECT_NEAR(theta_for(1, 1.0), 0.0857864376269049, 1e-15);
  EXPECT_NEAR(theta_for(3, 0.1), 2.144660940672624e-4, 1e-17);
  EXPECT_NEAR(theta_for(2, 0.4), 4.0 * theta_for(2, 0.2), 1e-18);
  EXPECT_THROW(theta_for(-1, 0.1), std::invalid_argument);
}

TEST(Pool, Union) {
  EXPECT_TRUE(relevant_pool(6, std::vector<IndexSet>{}).empty());
  const std::vector<IndexSet> sets{IndexSet::of(6, {1, 2}), IndexSet::of(6, {2, 5})};
  EXPECT_EQ(relevant_pool(6, sets).coords(), (std::vector<int>{1, 2, 5}));
}

TEST(Pool, SizeBoundAndClassSize) {
  EXPECT_DOUBLE_EQ(pool_size_bound(2, 0.5), 12.0 * 2 * 4 / 0.25);
  EXPECT_NEAR(log_class_size_bound(3, 20), std::log(256.0 * 1140.0), 1e-12);
  EXPECT_THROW(log_class_size_bound(3, 2), std::invalid_argument);
}

TEST(Tally, WorkedExample) {
  // x_1 = -1 labels +1, +1, -1 and x_1 = +1 labels -1, -1.
  const std::vector<std::uint64_t> pts{1, 1, 1, 0, 0};
  const std::vector<Sign> labels{1, 1, -1, -1, -1};
  const TallyOutcome out = tally_and_best_junta(IndexSet::of(2, {1}), SampleView{2, pts, labels});
  EXPECT_EQ(out.err, 1u);
  EXPECT_EQ(out.hypothesis.at(1), 1);   // x_1 = -1
  EXPECT_EQ(out.hypothesis.at(0), -1);  // x_1 = +1
}

TEST(Tally, TiesAndUnseenGivePlus) {
  const std::vector<std::uint64_t> pts{0, 0, 0, 0};
  const std::vector<Sign> labels{1, 1, -1, -1};
  const TallyOutcome out = tally_and_best_junta(IndexSet::of(2, {1}), SampleView{2, pts, labels});
  EXPECT_EQ(out.err, 2u);
  EXPECT_EQ(out.hypothesis.table()[0], 1);
  EXPECT_EQ(out.hypothesis.table()[1], 1);
  // Flipping the tied entry keeps the error.
  const JuntaHypothesis flipped(IndexSet::of(2, {1}), {-1, 1});
  EXPECT_EQ(brute::disagreements(flipped, pts, labels), 2u);
  EXPECT_THROW(tally_and_best_junta(IndexSet::of(2, {1}), SampleView{2, {}, {}}),
               std::invalid_argument);
}

TEST(Tally, ExactlyLabeledSampleHasZeroError) {
  std::mt19937_64 gen(1);
  const JuntaHypothesis g(IndexSet::of(6, {2, 4, 5}), {1, -1, -1, 1, 1, 1, -1, 1});
  std::vector<std::uint64_t> pts;
  std::vector<Sign> labels;
  for (int i = 0; i < 40; ++i) {
    pts.push_back(gen() & 63);
    labels.push_back(g.at(pts.back()));
  }
  const TallyOutcome out = tally_and_best_junta(g.relevant(), SampleView{6, pts, labels});
  EXPECT_EQ(out.err, 0u);
  for (std::uint64_t x : pts) EXPECT_EQ(out.hypothesis.at(x), g.at(x));
}

TEST(Tally, MatchesExhaustiveTablesAndReportsItsOwnError) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = static_cast<int>(gen() % 4);
    const int n = std::max(k, 1) + static_cast<int>(gen() % 4);
    std::vector<int> coords;
    for (int i = 1; i <= n && static_cast<int>(coords.size()) < k; ++i) {
      if (gen() % 2 || n - i < k - static_cast<int>(coords.size())) coords.push_back(i);
    }
    const std::size_t m = 1 + gen() % 60;
    std::vector<std::uint64_t> pts(m);
    std::vector<Sign> labels(m);
    for (std::size_t s = 0; s < m; ++s) {
      pts[s] = gen() & low_mask(n);
      labels[s] = (gen() & 1) ? -1 : 1;
    }
    const TallyOutcome out = tally_and_best_junta(IndexSet::of(n, coords), SampleView{n, pts, labels});
    ASSERT_EQ(out.err, brute::min_disagreements(coords, pts, labels));
    ASSERT_EQ(out.err, brute::disagreements(out.hypothesis, pts, labels));
  }
}

TEST(LearnParams, Validation) {
  LearnParams p;
  p.k = 5;
  EXPECT_THROW(p.validate(4), std::invalid_argument);
  p.k = 1;
  p.epsilon = 0.0;
  EXPECT_THROW(p.validate(4), std::invalid_argument);
  p.epsilon = 0.5;
  p.delta = 1.0;
  EXPECT_THROW(p.validate(4), std::invalid_argument);
}

TEST(CertifiedBudgets, MonotoneInEpsilon) {
  LearnParams p;
  p.k = 2;
  p.delta = 0.2;
  p.mode = BudgetMode::certified;
  LearnBudgets prev{};
  bool first = true;
  for (double eps : {0.8, 0.5, 0.3, 0.2, 0.1}) {
    p.epsilon = eps;
    const LearnBudgets b = certified_learn_budgets(12, p, 20, 6);
    if (!first) {
      EXPECT_GE(b.screen_pairs, prev.screen_pairs);
      EXPECT_GE(b.estimate_blocks, prev.estimate_blocks);
      EXPECT_GE(b.erm_examples, prev.erm_examples);
    }
    prev = b;
    first = false;
  }
}

TEST_F(QuietLog, ConstantTarget) {
  LearnParams p;
  p.epsilon = 0.3;
  p.delta = 0.2;
  for (int k : {0, 1, 2}) {
    p.k = k;
    const TruthTable f = TruthTable::constant(6, 1);
    const LearnResult r = learn(f, p, 3);
    EXPECT_EQ(r.hypothesis.relevant().size(), k);
    EXPECT_EQ(distance_exact(f, r.hypothesis), 0.0);
  }
}

TEST_F(QuietLog, ZeroArityLearnsMajority) {
  // -1 on three quarters of the cube.
  LearnParams p;
  p.k = 0;
  const TruthTable f = TruthTable::conjunction(4, std::vector<int>{1, 2}).negated();
  const LearnResult r = learn(f, p, 5);
  EXPECT_TRUE(r.hypothesis.relevant().empty());
  EXPECT_EQ(r.hypothesis.table()[0], -1);
}

TEST_F(QuietLog, RecoversTwoJuntaOnThreeAndSeven) {
  const int n = 12;
  const JuntaHypothesis g(IndexSet::of(n, {3, 7}), {1, -1, -1, 1});
  const TruthTable f = g.materialize();
  LearnParams p;
  p.k = 2;
  p.epsilon = 0.25;
  p.delta = 0.2;
  int exact = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const LearnResult r = learn(f, p, seed);
    EXPECT_EQ(r.hypothesis.relevant().size(), 2);
    exact += distance_exact(f, r.hypothesis) == 0.0;
  }
  EXPECT_GE(exact, 24);
}

TEST_F(QuietLog, SelectedSubsetMinimizesSampleError) {
  std::mt19937_64 gen(7);
  const int n = 6;
  const TruthTable f = brute::random_table(n, gen);
  LearnParams p;
  p.k = 2;
  p.budgets = {2000, 5000, 300};
  WalkOracle oracle(LabelSource(f), 17);
  const LearnResult r = learn_juntas(oracle, p, 18);
  // Replay the same oracle to recover the ERM segment.
  WalkOracle replay(LabelSource(f), 17);
  replay.draw(r.sieve_steps);
  const LabeledWalk seg = replay.draw(r.erm_examples);
  for (int a : r.padded_pool.coords()) {
    for (int b : r.padded_pool.coords()) {
      if (a >= b) continue;
      const std::vector<int> coords{a, b};
      EXPECT_GE(brute::min_disagreements(coords, seg.points, seg.labels), r.err);
    }
  }
  EXPECT_EQ(brute::disagreements(r.hypothesis, seg.points, seg.labels), r.err);
}

TEST_F(QuietLog, PadsSmallPool) {
  // Constant target: the sieve pool is empty, padding supplies coordinates 1..k.
  LearnParams p;
  p.k = 3;
  const LearnResult r = learn(TruthTable::constant(7, -1), p, 1);
  EXPECT_EQ(r.padded_pool.size(), 3);
  EXPECT_EQ(r.hypothesis.relevant().coords(), (std::vector<int>{1, 2, 3}));
}

TEST(Learner, CertifiedBudgetTooLargeThrows) {
  LearnParams p;
  p.k = 3;
  p.epsilon = 0.25;
  p.mode = BudgetMode::certified;
  p.max_walk_steps = 100000000;
  EXPECT_THROW(learn(TruthTable::constant(12, 1), p, 1), BudgetInfeasible);
}

TEST(Learner, RejectsArityAboveDimension) {
  LearnParams p;
  p.k = 5;
  EXPECT_THROW(learn(TruthTable::constant(4, 1), p, 1), std::invalid_argument);
}
