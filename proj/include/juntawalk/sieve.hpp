#pragma once

// Bounded sieve over a labeled random walk: list every S with |S| <= level and
// f^(S)^2 >= theta, and nothing with f^(S)^2 < theta/2, with probability at
// least 1 - delta.
//
// Two phases. Screening harvests refresh pairs at density p and keeps the
// coordinates whose bounded influence J_i = sum_{T ∋ i} f^(T)^2 (1-p)^{|T|-1}
// reaches theta (1-p)^{level-1} / 2; every qualifying S lies inside that pool,
// and sum_i J_i <= 1/(e p) bounds the pool by 2/(p theta). Estimation then
// scores every subset of the pool of size <= level from one lag histogram and
// keeps estimates >= 3 theta / 4. Cost is poly(n) * (2 level / theta)^level.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "juntawalk/fourier.hpp"
#include "juntawalk/hypercube.hpp"
#include "juntawalk/walk.hpp"

namespace juntawalk {

enum class SieveStrategy { pooled, exhaustive };

// Zero selects the derived (certified) value.
struct SieveBudgets {
  std::size_t screen_pairs = 0;
  std::size_t estimate_blocks = 0;
};

struct SieveParams {
  double theta = 0.1;
  int level = 1;
  double delta = 0.1;
  SieveStrategy strategy = SieveStrategy::pooled;
  double refresh_density = 0.0;  // 0 selects min(1/level, 1/2)
  BudgetMode mode = BudgetMode::certified;
  SieveBudgets budgets;  // honored in practical mode only
  std::uint64_t max_walk_steps = std::uint64_t{1} << 31;

  void validate(int n) const;
  double density() const;
  double screen_threshold() const;  // theta (1-p)^{level-1} / 2
  double keep_threshold() const { return 0.75 * theta; }
  std::size_t pool_abort_size() const;  // floor(4 / (p theta))
};

struct SieveEntry {
  IndexSet set;
  double estimate;
};

struct SieveDiagnostics {
  std::size_t screen_pairs = 0;
  std::size_t candidate_count = 0;
  std::size_t estimate_blocks = 0;
  std::size_t lag = 0;
  std::size_t truncated = 0;
  double screen_threshold = 0.0;
  double keep_threshold = 0.0;
  std::uint64_t walk_steps = 0;
  std::vector<std::optional<double>> influences;
};

struct SieveResult {
  std::vector<SieveEntry> sets;  // sorted by mask
  IndexSet pool;  // screened pool; all coordinates for the exhaustive strategy
  SieveDiagnostics diagnostics;
};

std::size_t list_cap(double theta);  // ceil(2 / theta)

// Phase budgets derived from Hoeffding bounds at the requested confidence.
std::size_t certified_screen_pairs(int n, const SieveParams& params);
EstimatorParams certified_estimator(int n, const SieveParams& params,
                                    std::size_t candidates);

// Every subset of `pool` with at most `level` elements, ordered by mask.
std::vector<IndexSet> subsets_up_to(const IndexSet& pool, int level);

// Deterministic in (oracle state, params, seed). The seed drives the refresh
// experiment; walk randomness comes from the oracle.
SieveResult bounded_sieve(WalkOracle& oracle, const SieveParams& params,
                          std::uint64_t seed);

struct CertificationReport {
  bool sound = true;
  bool complete = true;
  bool within_cap = true;
  std::vector<std::string> violations;

  bool passed() const { return sound && complete && within_cap; }
};

// Checks a sieve result against an exact spectrum: every listed set has
// f^(S)^2 >= theta/2, every S with |S| <= level and f^(S)^2 >= theta is
// listed, and the list has at most ceil(2/theta) entries.
CertificationReport certify_result(const SieveResult& result,
                                   const Spectrum& truth, double theta,
                                   int level);

}  // namespace juntawalk
