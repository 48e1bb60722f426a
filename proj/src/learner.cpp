#include "juntawalk/learner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "juntawalk/errors.hpp"
#include "juntawalk/log.hpp"

namespace juntawalk {

namespace {

constexpr double kSpectrumConstant = 1.0 - 0.70710678118654752440;

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

double theta_for(int k, double epsilon) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  return kSpectrumConstant * kSpectrumConstant * std::ldexp(1.0, 1 - k) *
         epsilon * epsilon;
}

double pool_size_bound(int k, double epsilon) {
  return 12.0 * k * std::ldexp(1.0, k) / (epsilon * epsilon);
}

IndexSet relevant_pool(int n, std::span<const IndexSet> sets) {
  IndexSet pool{n, 0};
  for (const IndexSet& s : sets) pool = pool.united(s);
  return pool;
}

IndexSet relevant_pool(int n, std::span<const SieveEntry> sets) {
  IndexSet pool{n, 0};
  for (const SieveEntry& e : sets) pool = pool.united(e.set);
  return pool;
}

double log_class_size_bound(int k, int pool_size) {
  if (k < 0 || pool_size < k) {
    throw std::invalid_argument("pool must hold at least k coordinates");
  }
  return std::ldexp(1.0, k) * std::log(2.0) + log_binomial(pool_size, k);
}

void LearnParams::validate(int n) const {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (n < k) throw std::invalid_argument("n must be >= k");
  if (k > 20) throw CapExceeded("k is capped at 20");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (max_walk_steps == 0) {
    throw std::invalid_argument("max_walk_steps must be positive");
  }
}

std::uint64_t SubcubeTally::total() const {
  std::uint64_t sum = 0;
  for (const auto& c : counts) sum += c[0] + c[1];
  return sum;
}

SubcubeTally tally(const IndexSet& relevant, const SampleView& sample) {
  if (relevant.n != sample.n) {
    throw DimensionMismatch("subset and sample differ in n");
  }
  if (sample.points.size() != sample.labels.size()) {
    throw std::invalid_argument("sample points and labels differ in length");
  }
  if (relevant.size() > 30) throw CapExceeded("tally is capped at 30 coordinates");
  SubcubeTally t{relevant, std::vector<std::array<std::uint64_t, 2>>(
                               std::size_t{1} << relevant.size(), {0, 0})};
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const std::uint64_t a = restrict_index(sample.points[i], relevant.mask);
    ++t.counts[a][sample.labels[i] < 0 ? 1 : 0];
  }
  return t;
}

TallyOutcome best_junta_from_tally(const SubcubeTally& t) {
  std::vector<Sign> table(t.counts.size(), 1);
  std::uint64_t err = 0;
  for (std::size_t a = 0; a < t.counts.size(); ++a) {
    const auto [plus, minus] = t.counts[a];
    if (minus > plus) table[a] = -1;
    err += std::min(plus, minus);
  }
  return TallyOutcome{JuntaHypothesis(t.relevant, std::move(table)), err};
}

TallyOutcome tally_and_best_junta(const IndexSet& relevant,
                                  const SampleView& sample) {
  if (sample.size() == 0) throw std::invalid_argument("sample is empty");
  return best_junta_from_tally(tally(relevant, sample));
}

LearnBudgets certified_learn_budgets(int n, const LearnParams& params,
                                     std::size_t candidates, int pool_size) {
  params.validate(n);
  LearnBudgets b;
  if (params.k > 0) {
    SieveParams sp;
    sp.theta = theta_for(params.k, params.epsilon);
    sp.level = params.k;
    sp.delta = params.delta / 2.0;
    sp.strategy = params.strategy;
    if (sp.strategy == SieveStrategy::pooled) {
      b.screen_pairs = certified_screen_pairs(n, sp);
    }
    b.estimate_blocks = certified_estimator(n, sp, candidates).pair_count;
  }
  const SampleSizePlan erm =
      sample_size_erm(params.epsilon / 2.0, params.delta / 2.0, n,
                      log_class_size_bound(params.k, std::max(pool_size, params.k)));
  b.erm_examples = erm.length;
  return b;
}

namespace {

IndexSet pad_to(const IndexSet& pool, int k) {
  IndexSet padded = pool;
  for (int i = 1; i <= pool.n && padded.size() < k; ++i) {
    padded.mask |= 1ULL << (i - 1);
  }
  return padded;
}

std::size_t choose_or_default(std::size_t supplied, std::size_t fallback) {
  return supplied > 0 ? supplied : fallback;
}

}  // namespace

LearnResult learn_juntas(WalkOracle& oracle, const LearnParams& params,
                         std::uint64_t seed) {
  const int n = oracle.n();
  params.validate(n);
  const int k = params.k;
  const std::uint64_t served_before = oracle.examples_served();

  LearnResult result;
  result.theta = theta_for(k, params.epsilon);
  result.pool = IndexSet{n, 0};

  if (k > 0) {
    SieveParams sp;
    sp.theta = result.theta;
    sp.level = k;
    sp.delta = params.delta / 2.0;
    sp.strategy = params.strategy;
    sp.mode = params.mode;
    sp.max_walk_steps = params.max_walk_steps;
    if (params.mode == BudgetMode::practical) {
      sp.budgets.screen_pairs = choose_or_default(params.budgets.screen_pairs,
                                                  LearnParams::kDefaultScreenPairs);
      sp.budgets.estimate_blocks = choose_or_default(
          params.budgets.estimate_blocks, LearnParams::kDefaultEstimateBlocks);
    }
    result.sieve = bounded_sieve(oracle, sp, derive_seed(seed, 1));
    result.pool = relevant_pool(n, result.sieve.sets);
    if (result.pool.size() > pool_size_bound(k, params.epsilon)) {
      throw std::logic_error("sieve pool exceeds 12 k 2^k / eps^2");
    }
  } else {
    result.sieve.pool = IndexSet{n, 0};
  }
  result.sieve_steps = oracle.examples_served() - served_before;

  result.padded_pool = pad_to(result.pool, k);
  const int pool_size = result.padded_pool.size();

  const SampleSizePlan certified = sample_size_erm(
      params.epsilon / 2.0, params.delta / 2.0, n, log_class_size_bound(k, pool_size));
  SampleSizePlan plan = certified;
  if (params.mode == BudgetMode::practical) {
    plan = practical_plan(certified,
                          choose_or_default(params.budgets.erm_examples,
                                            LearnParams::kDefaultErmExamples));
  } else if (certified.length > params.max_walk_steps) {
    std::ostringstream msg;
    msg << "ERM needs " << certified.length << " walk steps, above the ceiling "
        << params.max_walk_steps;
    throw BudgetInfeasible(msg.str());
  }

  const LabeledWalk segment = oracle.draw(plan.length);
  const SampleView sample = segment.sample();
  result.erm_examples = segment.size();

  const std::vector<int> coords = result.padded_pool.coords();
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  bool have_best = false;
  TallyOutcome best{JuntaHypothesis::constant(n, 1), 0};
  while (true) {
    std::uint64_t mask = 0;
    for (std::size_t j : pick) mask |= 1ULL << (coords[j] - 1);
    TallyOutcome out = tally_and_best_junta(IndexSet{n, mask}, sample);
    ++result.subsets_evaluated;
    if (!have_best || out.err < best.err ||
        (out.err == best.err && mask < best.hypothesis.relevant().mask)) {
      best = std::move(out);
      have_best = true;
    }
    // Next k-combination of indices into coords, lexicographic.
    int pos = k - 1;
    while (pos >= 0 && pick[pos] == coords.size() - k + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int j = pos + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }

  result.hypothesis = std::move(best.hypothesis);
  result.err = best.err;
  result.walk_steps = oracle.examples_served() - served_before;
  return result;
}

}  // namespace juntawalk
