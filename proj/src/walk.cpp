#include "juntawalk/walk.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "juntawalk/errors.hpp"
#include "juntawalk/log.hpp"

namespace juntawalk {

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || mean > 700.0) {
    throw std::invalid_argument("Poisson mean must lie in [0, 700]");
  }
  const double u = uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u >= cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
    if (p == 0.0 && static_cast<double>(k) > mean) break;
  }
  return k;
}

LabelSource::LabelSource(std::shared_ptr<const TruthTable> table)
    : n_(table ? table->n() : 0), table_(std::move(table)) {
  if (!table_) throw std::invalid_argument("LabelSource needs a table");
}

LabelSource::LabelSource(const TruthTable& table)
    : LabelSource(std::make_shared<const TruthTable>(table)) {}

LabelSource::LabelSource(int n, std::function<Sign(const Point&)> evaluator)
    : n_(n), evaluator_(std::move(evaluator)) {
  if (n < 1 || n > kMaxPackedDim) {
    throw CapExceeded("label source dimension outside [1, 63]");
  }
  if (!evaluator_) throw std::invalid_argument("LabelSource needs an evaluator");
}

void WalkConfig::validate() const {
  if (n < 1 || n > kMaxPackedDim) {
    throw CapExceeded("walk dimension outside [1, 63]");
  }
  if (length < 1) throw std::invalid_argument("walk length must be >= 1");
}

WalkOracle::WalkOracle(LabelSource f, std::uint64_t seed, bool lazy)
    : f_(std::move(f)), rng_(seed), lazy_(lazy) {}

WalkOracle::Example WalkOracle::step() {
  const int n = f_.n();
  const int coordinate = static_cast<int>(rng_.below(n)) + 1;
  std::uint64_t bits = current_.bits;
  if (!lazy_ || rng_.coin()) bits ^= 1ULL << (coordinate - 1);
  current_ = Example{bits, f_(bits), coordinate};
  ++served_;
  return current_;
}

WalkOracle::Example WalkOracle::current() {
  if (!started_) {
    const std::uint64_t bits = rng_.bits() & low_mask(f_.n());
    current_ = Example{bits, f_(bits), 0};
    started_ = true;
    ++served_;
  }
  return current_;
}

WalkOracle::Example WalkOracle::next() {
  if (!started_) return current();
  return step();
}

LabeledWalk WalkOracle::draw(std::size_t count) {
  LabeledWalk walk;
  walk.n = f_.n();
  walk.lazy = lazy_;
  walk.points.reserve(count);
  walk.labels.reserve(count);
  if (count > 0) walk.flipped.reserve(count - 1);
  for (std::size_t t = 0; t < count; ++t) {
    const Example e = next();
    walk.points.push_back(e.bits);
    walk.labels.push_back(e.label);
    if (t > 0) walk.flipped.push_back(static_cast<std::uint8_t>(e.coordinate));
  }
  return walk;
}

LabeledWalk generate_walk(const LabelSource& f, const WalkConfig& config) {
  config.validate();
  if (config.n != f.n()) {
    throw DimensionMismatch("walk config and label source differ in n");
  }
  WalkOracle oracle(f, config.seed, config.lazy);
  return oracle.draw(config.length);
}

UpdatingExperiment simulate_updating(const LabeledWalk& walk,
                                     std::size_t target_ones,
                                     std::size_t cutoff, std::uint64_t seed) {
  if (walk.steps() < target_ones) {
    throw std::invalid_argument("walk has fewer steps than the target");
  }
  if (cutoff < target_ones) {
    throw std::invalid_argument("cutoff must be at least the target");
  }
  Rng rng(seed);
  UpdatingExperiment exp;
  exp.schedule.reserve(2 * target_ones + 1);
  std::size_t ones = 0;
  if (target_ones == 0) exp.reached_target = true;
  for (std::size_t draws = 0; draws < cutoff && !exp.reached_target; ++draws) {
    ScheduledUpdate u{};
    if (rng.coin()) {
      u = ScheduledUpdate{walk.flipped[ones], true};
      if (++ones == target_ones) exp.reached_target = true;
    } else {
      u = ScheduledUpdate{static_cast<int>(rng.below(walk.n)) + 1, false};
    }
    exp.covered_mask |= 1ULL << (u.coordinate - 1);
    exp.schedule.push_back(u);
  }
  exp.accepted = exp.reached_target && exp.covered_mask == low_mask(walk.n);
  return exp;
}

std::vector<std::uint64_t> replay_updating(const LabeledWalk& walk,
                                           const UpdatingExperiment& exp) {
  std::vector<std::uint64_t> states;
  states.reserve(exp.schedule.size() + 1);
  std::uint64_t x = walk.points.at(0);
  states.push_back(x);
  std::size_t k = 0;
  for (const ScheduledUpdate& u : exp.schedule) {
    if (u.from_walk) {
      ++k;
      x = walk.points.at(k);
    }
    states.push_back(x);
  }
  return states;
}

RefreshSchedule RefreshSchedule::fixed(std::size_t updates) {
  return RefreshSchedule(static_cast<double>(updates), false);
}

RefreshSchedule RefreshSchedule::at_density(int n, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("refresh density must lie in (0, 1)");
  }
  return RefreshSchedule(-static_cast<double>(n) * std::log1p(-p), true);
}

std::size_t RefreshSchedule::draw(Rng& rng) const {
  if (!poisson_) return static_cast<std::size_t>(mean_);
  return static_cast<std::size_t>(rng.poisson(mean_));
}

double RefreshSchedule::density(int n) const {
  if (poisson_) return -std::expm1(-mean_ / n);
  return 1.0 - std::pow(1.0 - 1.0 / n, mean_);
}

std::vector<RefreshPair> harvest_refresh_pairs(WalkOracle& oracle,
                                               std::size_t pair_count,
                                               const RefreshSchedule& schedule,
                                               Rng& experiment_rng) {
  if (oracle.lazy()) {
    throw std::invalid_argument("refresh pairs are harvested from a non-lazy walk");
  }
  const int n = oracle.n();
  std::vector<RefreshPair> pairs;
  pairs.reserve(pair_count);
  WalkOracle::Example start = oracle.current();
  for (std::size_t b = 0; b < pair_count; ++b) {
    const std::size_t updates = schedule.draw(experiment_rng);
    std::uint64_t refreshed = 0;
    WalkOracle::Example end = start;
    for (std::size_t j = 0; j < updates; ++j) {
      int coordinate = 0;
      if (experiment_rng.coin()) {
        end = oracle.next();
        coordinate = end.coordinate;
      } else {
        coordinate = static_cast<int>(experiment_rng.below(n)) + 1;
      }
      refreshed |= 1ULL << (coordinate - 1);
    }
    pairs.push_back(RefreshPair{start.bits, end.bits, start.label, end.label,
                                IndexSet{n, refreshed}});
    start = end;
  }
  return pairs;
}

std::vector<RefreshPair> harvest_refresh_pairs(const LabelSource& f,
                                               std::size_t pair_count,
                                               std::size_t gap_steps,
                                               std::uint64_t seed) {
  if (gap_steps < 1) throw std::invalid_argument("gap_steps must be >= 1");
  WalkOracle oracle(f, derive_seed(seed, 1));
  Rng experiment(derive_seed(seed, 2));
  return harvest_refresh_pairs(oracle, pair_count,
                               RefreshSchedule::fixed(gap_steps), experiment);
}

namespace {

void check_plan_inputs(double epsilon, double delta, int n) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (n < 1) throw std::invalid_argument("n must be >= 1");
}

std::uint64_t ceil_to_count(double v) {
  if (!(v < 1.8e19)) throw BudgetInfeasible("sample size overflows 64 bits");
  return static_cast<std::uint64_t>(std::ceil(v));
}

}  // namespace

SampleSizePlan sample_size_concentration(double epsilon, double delta, int n) {
  check_plan_inputs(epsilon, delta, n);
  SampleSizePlan plan;
  plan.epsilon = epsilon;
  plan.delta = delta;
  plan.block_length = ceil_to_count(n * std::log(n / delta));
  const double big_n = static_cast<double>(plan.block_length);
  plan.length = ceil_to_count(2.0 * big_n / (epsilon * epsilon) *
                              std::log(2.0 * big_n / delta));
  return plan;
}

SampleSizePlan sample_size_erm(double epsilon, double delta, int n,
                               double log_class_size) {
  check_plan_inputs(epsilon, delta, n);
  if (!(log_class_size >= 0.0)) {
    throw std::invalid_argument("log class size must be >= 0");
  }
  SampleSizePlan plan;
  plan.epsilon = epsilon;
  plan.delta = delta;
  plan.log_class_size = log_class_size;
  plan.block_length =
      ceil_to_count(n * (std::log(2.0 * n / delta) + log_class_size));
  const double big_n = static_cast<double>(plan.block_length);
  plan.length = ceil_to_count(8.0 * big_n / (epsilon * epsilon) *
                              (std::log(2.0 * big_n / delta) + log_class_size));
  return plan;
}

SampleSizePlan practical_plan(const SampleSizePlan& certified,
                              std::uint64_t length) {
  SampleSizePlan plan = certified;
  plan.mode = BudgetMode::practical;
  plan.length = length;
  if (length < certified.length) {
    std::ostringstream msg;
    msg << "practical sample size " << length << " is below the certified "
        << certified.length << "; guarantees are not certified";
    log_warning(msg.str());
  }
  return plan;
}

}  // namespace juntawalk
