#pragma once

// Random-walk example oracle, the updating-walk acceptance experiment, refresh
// pair harvesting, and the walk sample-size calculators.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "juntawalk/hypercube.hpp"
#include "juntawalk/rng.hpp"

namespace juntawalk {

enum class BudgetMode { certified, practical };

// Labels for walk points: either an explicit table or a black-box evaluator.
class LabelSource {
 public:
  explicit LabelSource(std::shared_ptr<const TruthTable> table);
  explicit LabelSource(const TruthTable& table);
  LabelSource(int n, std::function<Sign(const Point&)> evaluator);

  int n() const { return n_; }
  const TruthTable* table() const { return table_.get(); }

  Sign operator()(std::uint64_t bits) const {
    return table_ ? table_->at(bits) : evaluator_(Point{n_, bits});
  }

 private:
  int n_;
  std::shared_ptr<const TruthTable> table_;
  std::function<Sign(const Point&)> evaluator_;
};

struct WalkConfig {
  int n = 1;
  std::size_t length = 1;  // number of examples, i.e. points
  std::uint64_t seed = 0;
  bool lazy = false;  // false: flip a uniform coordinate; true: resample it

  void validate() const;
};

struct LabeledWalk {
  int n = 1;
  bool lazy = false;
  std::vector<std::uint64_t> points;
  std::vector<Sign> labels;
  // flipped[t] is the coordinate (1-based) chosen between points[t] and
  // points[t+1]; in lazy walks it was updated and may be unchanged.
  std::vector<std::uint8_t> flipped;

  std::size_t size() const { return points.size(); }
  std::size_t steps() const { return flipped.size(); }
  Point point(std::size_t t) const { return Point{n, points[t]}; }
  SampleView sample() const { return SampleView{n, points, labels}; }
};

// Sequential RW(f): the first example is uniform, each later example moves one
// step from the previous one. Segments drawn one after another continue the
// same walk.
class WalkOracle {
 public:
  struct Example {
    std::uint64_t bits;
    Sign label;
    int coordinate;  // coordinate chosen to reach this point; 0 for the start
  };

  WalkOracle(LabelSource f, std::uint64_t seed, bool lazy = false);

  int n() const { return f_.n(); }
  bool lazy() const { return lazy_; }
  const LabelSource& labels() const { return f_; }

  Example next();
  // The most recent example, drawing the start point if the walk is fresh.
  Example current();
  LabeledWalk draw(std::size_t count);

  std::uint64_t examples_served() const { return served_; }

 private:
  Example step();

  LabelSource f_;
  Rng rng_;
  bool lazy_;
  bool started_ = false;
  Example current_{0, 1, 0};
  std::uint64_t served_ = 0;
};

LabeledWalk generate_walk(const LabelSource& f, const WalkConfig& config);

// One entry of the simulated updating walk: the coordinate updated at that
// position and whether it was taken from the walk (F_j = 1) or drawn fresh.
struct ScheduledUpdate {
  int coordinate;
  bool from_walk;
};

struct UpdatingExperiment {
  bool accepted = false;
  bool reached_target = false;  // F reached the requested number of ones
  std::uint64_t covered_mask = 0;
  std::vector<ScheduledUpdate> schedule;
};

inline std::size_t default_cutoff(std::size_t target_ones) {
  return 4 * target_ones;
}

// The acceptance experiment on the first `target_ones` steps of `walk`: fair
// Bernoulli draws until `target_ones` ones (at most `cutoff` draws), the walk's
// chosen coordinates placed at the ones in order, fresh uniform coordinates at
// the zeros. Accepted iff the target was reached and the schedule covers [n].
UpdatingExperiment simulate_updating(const LabeledWalk& walk,
                                     std::size_t target_ones,
                                     std::size_t cutoff, std::uint64_t seed);

// States x'^0, ..., x'^{l'} of the simulated updating walk.
std::vector<std::uint64_t> replay_updating(const LabeledWalk& walk,
                                           const UpdatingExperiment& exp);

struct RefreshPair {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  Sign label_x = 1;
  Sign label_y = 1;
  IndexSet refreshed;
};

// Length of the updating schedule used per harvested block. A fixed length g
// refreshes each coordinate with probability 1 - (1 - 1/n)^g; a Poisson length
// of mean -n ln(1 - p) refreshes coordinates independently with probability p.
class RefreshSchedule {
 public:
  static RefreshSchedule fixed(std::size_t updates);
  static RefreshSchedule at_density(int n, double p);

  std::size_t draw(Rng& rng) const;
  double mean_updates() const { return mean_; }
  bool poisson() const { return poisson_; }
  double density(int n) const;

 private:
  RefreshSchedule(double mean, bool poisson) : mean_(mean), poisson_(poisson) {}

  double mean_;
  bool poisson_;
};

// Pairs from consecutive, step-disjoint blocks of one fresh walk. Each block
// runs an updating schedule of fixed length `gap_steps`; its ones consume walk
// steps and the block's endpoints form the pair. Coordinates outside
// `refreshed` agree; those inside are uniform and independent between x, y.
std::vector<RefreshPair> harvest_refresh_pairs(const LabelSource& f,
                                               std::size_t pair_count,
                                               std::size_t gap_steps,
                                               std::uint64_t seed);

// Same construction continuing an existing walk.
std::vector<RefreshPair> harvest_refresh_pairs(WalkOracle& oracle,
                                               std::size_t pair_count,
                                               const RefreshSchedule& schedule,
                                               Rng& experiment_rng);

struct SampleSizePlan {
  std::uint64_t block_length = 0;  // N
  std::uint64_t length = 0;        // m
  BudgetMode mode = BudgetMode::certified;
  double epsilon = 0;
  double delta = 0;
  double log_class_size = 0;
};

// N = ceil(n ln(n/delta)), m = ceil((2N/eps^2) ln(2N/delta)).
SampleSizePlan sample_size_concentration(double epsilon, double delta, int n);

// N = ceil(n ln(2n|C|/delta)), m = ceil((8N/eps^2) ln(2N|C|/delta)), with
// ln|C| passed in directly.
SampleSizePlan sample_size_erm(double epsilon, double delta, int n,
                               double log_class_size);

// Replace the certified length by a caller-chosen one; logs a warning.
SampleSizePlan practical_plan(const SampleSizePlan& certified,
                              std::uint64_t length);

}  // namespace juntawalk
