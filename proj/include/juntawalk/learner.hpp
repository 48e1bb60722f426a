#pragma once

// Proper agnostic k-junta learner from random-walk examples: a bounded sieve
// narrows the candidate coordinates, then empirical risk minimization over
// every k-subset of the pool picks the subcube-majority junta with the fewest
// sample disagreements.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "juntawalk/hypercube.hpp"
#include "juntawalk/sieve.hpp"
#include "juntawalk/walk.hpp"

namespace juntawalk {

// (1 - 1/sqrt 2)^2 * 2^{1-k} * eps^2
double theta_for(int k, double epsilon);

// 12 k 2^k / eps^2
double pool_size_bound(int k, double epsilon);

// Union of the sets; `n` fixes the dimension of the empty union.
IndexSet relevant_pool(int n, std::span<const IndexSet> sets);
IndexSet relevant_pool(int n, std::span<const SieveEntry> sets);

// ln of 2^{2^k} * C(pool_size, k)
double log_class_size_bound(int k, int pool_size);

// Zero selects the default practical value (or the certified value in
// certified mode).
struct LearnBudgets {
  std::size_t screen_pairs = 0;
  std::size_t estimate_blocks = 0;
  std::size_t erm_examples = 0;
};

struct LearnParams {
  int k = 1;
  double epsilon = 0.25;
  double delta = 0.2;
  BudgetMode mode = BudgetMode::practical;
  LearnBudgets budgets;
  SieveStrategy strategy = SieveStrategy::pooled;
  std::uint64_t max_walk_steps = std::uint64_t{1} << 31;

  void validate(int n) const;

  static constexpr std::size_t kDefaultScreenPairs = 100'000;
  static constexpr std::size_t kDefaultEstimateBlocks = 200'000;
  static constexpr std::size_t kDefaultErmExamples = 200'000;
};

// Per-assignment label counts of a sample restricted to J.
struct SubcubeTally {
  IndexSet relevant;
  std::vector<std::array<std::uint64_t, 2>> counts;  // {plus, minus}

  std::uint64_t total() const;
};

SubcubeTally tally(const IndexSet& relevant, const SampleView& sample);

struct TallyOutcome {
  JuntaHypothesis hypothesis;
  std::uint64_t err;
};

// Majority label per subcube (ties and unseen subcubes give +1);
// err = sum of min(plus, minus).
TallyOutcome best_junta_from_tally(const SubcubeTally& tally);
TallyOutcome tally_and_best_junta(const IndexSet& relevant,
                                  const SampleView& sample);

// Certified phase budgets. The sieve budgets depend on the pool found, so the
// estimation entry is given for `candidates` candidate sets; ERM for a pool of
// `pool_size` coordinates.
LearnBudgets certified_learn_budgets(int n, const LearnParams& params,
                                     std::size_t candidates, int pool_size);

struct LearnResult {
  JuntaHypothesis hypothesis = JuntaHypothesis::constant(1, 1);
  std::uint64_t err = 0;  // sample disagreements of the hypothesis
  double theta = 0.0;
  SieveResult sieve;
  IndexSet pool;         // union of sieve sets
  IndexSet padded_pool;  // pool padded to at least k coordinates
  std::size_t subsets_evaluated = 0;
  std::size_t erm_examples = 0;
  std::uint64_t sieve_steps = 0;
  std::uint64_t walk_steps = 0;
};

// Sieve and ERM draw consecutive, disjoint segments of the oracle's walk.
LearnResult learn_juntas(WalkOracle& oracle, const LearnParams& params,
                         std::uint64_t seed);

}  // namespace juntawalk
