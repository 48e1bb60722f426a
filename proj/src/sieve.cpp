#include "juntawalk/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "juntawalk/errors.hpp"
#include "juntawalk/log.hpp"

namespace juntawalk {

void SieveParams::validate(int n) const {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("theta must lie in (0, 1]");
  }
  if (level < 1 || level > n) {
    throw std::invalid_argument("level must lie in [1, n]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (refresh_density != 0.0 &&
      !(refresh_density > 0.0 && refresh_density < 1.0)) {
    throw std::invalid_argument("refresh density must lie in (0, 1)");
  }
  if (max_walk_steps == 0) {
    throw std::invalid_argument("max_walk_steps must be positive");
  }
}

double SieveParams::density() const {
  if (refresh_density > 0.0) return refresh_density;
  return std::min(1.0 / level, 0.5);
}

double SieveParams::screen_threshold() const {
  return theta * std::pow(1.0 - density(), level - 1) / 2.0;
}

std::size_t SieveParams::pool_abort_size() const {
  return static_cast<std::size_t>(std::floor(4.0 / (density() * theta)));
}

std::size_t list_cap(double theta) {
  return static_cast<std::size_t>(std::ceil(2.0 / theta - 1e-12));
}

std::size_t certified_screen_pairs(int n, const SieveParams& params) {
  params.validate(n);
  const double p = params.density();
  const double tau = params.screen_threshold();
  // Each bucket mean within tau/2 w.p. 1 - delta/(8n); 10% slack covers the
  // binomial spread of bucket sizes.
  const double per_bucket = 8.0 * std::log(8.0 * n / params.delta) / (tau * tau);
  const double pairs = 1.1 * per_bucket / std::min(p, 1.0 - p);
  if (!(pairs < 1e15)) throw BudgetInfeasible("screening budget overflows");
  return static_cast<std::size_t>(std::ceil(pairs));
}

EstimatorParams certified_estimator(int n, const SieveParams& params,
                                    std::size_t candidates) {
  params.validate(n);
  if (candidates == 0) throw std::invalid_argument("no candidates to estimate");
  const double share =
      params.strategy == SieveStrategy::pooled ? params.delta / 2.0 : params.delta;
  return EstimatorParams::for_threshold(n, params.theta,
                                        share / static_cast<double>(candidates));
}

std::vector<IndexSet> subsets_up_to(const IndexSet& pool, int level) {
  const std::vector<int> coords = pool.coords();
  std::vector<IndexSet> out;
  auto rec = [&](auto&& self, std::size_t from, std::uint64_t mask,
                 int depth) -> void {
    out.push_back(IndexSet{pool.n, mask});
    if (depth == level) return;
    for (std::size_t j = from; j < coords.size(); ++j) {
      self(self, j + 1, mask | (1ULL << (coords[j] - 1)), depth + 1);
    }
  };
  rec(rec, 0, 0, 0);
  std::sort(out.begin(), out.end(),
            [](const IndexSet& a, const IndexSet& b) { return a.mask < b.mask; });
  return out;
}

namespace {

void check_steps(std::uint64_t needed, const SieveParams& params,
                 const char* phase) {
  if (params.mode == BudgetMode::certified && needed > params.max_walk_steps) {
    std::ostringstream msg;
    msg << phase << " needs about " << needed << " walk steps, above the ceiling "
        << params.max_walk_steps;
    throw BudgetInfeasible(msg.str());
  }
}

void warn_if_below(std::size_t used, std::size_t certified, const char* what) {
  if (used < certified) {
    std::ostringstream msg;
    msg << "practical " << what << " budget " << used << " is below the certified "
        << certified << "; guarantees are not certified";
    log_warning(msg.str());
  }
}

IndexSet screen(WalkOracle& oracle, const SieveParams& params, std::uint64_t seed,
                SieveDiagnostics& diag) {
  const int n = oracle.n();
  const std::size_t certified = certified_screen_pairs(n, params);
  std::size_t pairs = certified;
  if (params.mode == BudgetMode::practical && params.budgets.screen_pairs > 0) {
    pairs = params.budgets.screen_pairs;
    warn_if_below(pairs, certified, "screening");
  }
  const RefreshSchedule schedule = RefreshSchedule::at_density(n, params.density());
  check_steps(static_cast<std::uint64_t>(
                  std::ceil(pairs * schedule.mean_updates() / 2.0)),
              params, "screening");

  Rng experiment(seed);
  const std::vector<RefreshPair> harvested =
      harvest_refresh_pairs(oracle, pairs, schedule, experiment);
  diag.screen_pairs = pairs;
  diag.screen_threshold = params.screen_threshold();
  diag.influences = estimate_bounded_influences(harvested, n);

  std::uint64_t mask = 0;
  for (int i = 0; i < n; ++i) {
    const auto& j = diag.influences[i];
    if (!j || *j >= diag.screen_threshold) mask |= 1ULL << i;
  }
  const IndexSet pool{n, mask};
  if (static_cast<std::size_t>(pool.size()) > params.pool_abort_size()) {
    std::ostringstream msg;
    msg << "screened pool has " << pool.size() << " coordinates, above "
        << params.pool_abort_size();
    throw PoolOverflow(msg.str());
  }
  return pool;
}

}  // namespace

SieveResult bounded_sieve(WalkOracle& oracle, const SieveParams& params,
                          std::uint64_t seed) {
  const int n = oracle.n();
  params.validate(n);
  if (oracle.lazy()) {
    throw std::invalid_argument("the sieve needs a non-lazy walk");
  }
  const std::uint64_t served_before = oracle.examples_served();

  SieveResult result;
  SieveDiagnostics& diag = result.diagnostics;
  if (params.strategy == SieveStrategy::pooled) {
    result.pool = screen(oracle, params, seed, diag);
  } else {
    result.pool = IndexSet::full(n);
  }

  const std::vector<IndexSet> candidates = subsets_up_to(result.pool, params.level);
  diag.candidate_count = candidates.size();

  const EstimatorParams certified = certified_estimator(n, params, candidates.size());
  EstimatorParams est = certified;
  if (params.mode == BudgetMode::practical && params.budgets.estimate_blocks > 0) {
    est.pair_count = params.budgets.estimate_blocks;
    warn_if_below(est.pair_count, certified.pair_count, "estimation");
  }
  check_steps(est.required_walk_length(), params, "estimation");
  diag.estimate_blocks = est.pair_count;
  diag.lag = est.lag;
  diag.keep_threshold = params.keep_threshold();

  const LagHistogram hist = collect_lag_histogram(oracle, est);
  const std::vector<double> estimates = hist.estimate(candidates);

  std::vector<SieveEntry> kept;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (estimates[c] >= diag.keep_threshold) {
      kept.push_back(SieveEntry{candidates[c], estimates[c]});
    }
  }
  const std::size_t cap = list_cap(params.theta);
  if (kept.size() > cap) {
    std::sort(kept.begin(), kept.end(), [](const SieveEntry& a, const SieveEntry& b) {
      if (a.estimate != b.estimate) return a.estimate > b.estimate;
      return a.set.mask < b.set.mask;
    });
    diag.truncated = kept.size() - cap;
    kept.resize(cap);
  }
  std::sort(kept.begin(), kept.end(), [](const SieveEntry& a, const SieveEntry& b) {
    return a.set.mask < b.set.mask;
  });
  result.sets = std::move(kept);
  diag.walk_steps = oracle.examples_served() - served_before;
  return result;
}

CertificationReport certify_result(const SieveResult& result,
                                   const Spectrum& truth, double theta,
                                   int level) {
  CertificationReport report;
  const double slack = 1e-12;
  auto describe = [](const IndexSet& s, double sq) {
    std::ostringstream msg;
    msg << "mask 0x" << std::hex << s.mask << std::dec << " (weight " << sq << ")";
    return msg.str();
  };
  std::vector<std::uint64_t> listed;
  for (const SieveEntry& e : result.sets) {
    if (e.set.n != truth.n) throw DimensionMismatch("sieve result and spectrum differ in n");
    const double c = truth[e.set.mask];
    if (c * c < theta / 2.0 - slack) {
      report.sound = false;
      report.violations.push_back("listed below theta/2: " + describe(e.set, c * c));
    }
    listed.push_back(e.set.mask);
  }
  std::sort(listed.begin(), listed.end());
  for (std::uint64_t mask = 0; mask < truth.coeffs.size(); ++mask) {
    if (std::popcount(mask) > level) continue;
    const double c = truth.coeffs[mask];
    if (c * c >= theta - slack &&
        !std::binary_search(listed.begin(), listed.end(), mask)) {
      report.complete = false;
      report.violations.push_back("missing heavy set: " +
                                  describe(IndexSet{truth.n, mask}, c * c));
    }
  }
  if (result.sets.size() > list_cap(theta)) {
    report.within_cap = false;
    report.violations.push_back("list longer than ceil(2/theta)");
  }
  return report;
}

}  // namespace juntawalk
