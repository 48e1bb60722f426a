#pragma once

// Exact Walsh-Hadamard analysis of small truth tables and walk-based
// Monte-Carlo estimators of squared coefficients and bounded influences.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "juntawalk/hypercube.hpp"
#include "juntawalk/walk.hpp"

namespace juntawalk {

// Dense Fourier coefficients, coeffs[S.mask] = f^(S).
struct Spectrum {
  int n = 1;
  std::vector<double> coeffs;

  double operator[](std::uint64_t mask) const { return coeffs[mask]; }
  double at(const IndexSet& s) const;
};

// Unnormalized in-place butterfly; length must be a power of two.
void wht_in_place(std::span<std::int64_t> data);
void wht_in_place(std::span<double> data);

// 2^n * f^(S) for every S, in exact integer arithmetic.
std::vector<std::int64_t> wht_integer(const TruthTable& f);

Spectrum wht(const TruthTable& f);
// Function values sum_S coeffs[S] chi_S(x), indexed by point bits.
std::vector<double> inverse_wht(const Spectrum& s);

double inner_product(const TruthTable& f, const TruthTable& g);
double inner_product(const Spectrum& f, const Spectrum& g);

double sum_of_squares(const Spectrum& s);

// Sum of f^(T)^2 over all T disjoint from R; equals E[f(x)f(y) | R] for
// refresh pairs with refreshed set R.
double subcube_projection_exact(const Spectrum& s, const IndexSet& r);

// sum_{T containing i} f^(T)^2 (1-p)^{|T|-1}
double expected_bounded_influence(const Spectrum& s, int i, double p);

// E[chi_U(x (.) x^t)] = (1 - 2d/n)^t for |U| = d on a non-lazy walk.
double lag_weight(int d, int n, std::size_t lag);

// Expectation of the lag-averaged estimator for S at lag t.
double expected_sq_coeff_estimate(const Spectrum& s, const IndexSet& set,
                                  std::size_t lag);

struct EstimatorParams {
  std::size_t lag = 1;
  std::size_t pair_count = 1;
  std::size_t block_spacing = 0;
  double tolerance = 0.0;   // target additive error, informational
  double confidence = 0.0;  // 1 - delta, informational

  void validate() const;
  // Distance between consecutive block starts, rounded up to an odd number.
  // A non-lazy walk alternates between the two parity classes of the cube, so
  // an even stride would start every block in the class of x^0.
  // A block reads x, x^t, x^{t+1}.
  std::size_t stride() const { return (lag + 2 + block_spacing) | 1; }
  std::size_t required_walk_length() const {
    return (pair_count - 1) * stride() + lag + 2;
  }

  // Lag ceil((n/2) ln(8/theta)) holds the bias below theta/8; Hoeffding over
  // pair_count blocks holds sampling error below theta/8 with probability
  // 1 - delta_per_set.
  static EstimatorParams for_threshold(int n, double theta,
                                       double delta_per_set);
};

// A_hat(S) = mean over blocks of
//   1/2 [f(x)f(x^t)chi_S(x (.) x^t) + f(x)f(x^{t+1})chi_S(x (.) x^{t+1})].
double estimate_sq_coeff(const LabeledWalk& walk, const IndexSet& set,
                         const EstimatorParams& params);

// Only the lag-t term; carries a (-1)^t bias from the complement of S.
double estimate_sq_coeff_single_lag(const LabeledWalk& walk,
                                    const IndexSet& set,
                                    const EstimatorParams& params);

// Label-product weights of the walk increments x (.) x^t and x (.) x^{t+1},
// shared by every set. Weights are integers, so results do not depend on the
// accumulation order.
class LagHistogram {
 public:
  LagHistogram(int n, std::size_t lag);

  void add_block(std::uint64_t x, Sign fx, std::uint64_t xt, Sign ft,
                 std::uint64_t xt1, Sign ft1);
  // Must be called once after the last block; enables estimate().
  void finalize();

  double estimate(const IndexSet& set) const;
  std::vector<double> estimate(std::span<const IndexSet> sets) const;

  int n() const { return n_; }
  std::size_t lag() const { return lag_; }
  std::size_t blocks() const { return blocks_; }

 private:
  int n_;
  std::size_t lag_;
  std::size_t blocks_ = 0;
  bool use_dense_;
  bool finalized_ = false;
  std::vector<std::int64_t> dense_;  // transformed in finalize()
  std::vector<std::pair<std::uint64_t, std::int64_t>> sparse_;
};

LagHistogram collect_lag_histogram(const LabeledWalk& walk,
                                   const EstimatorParams& params);
// Streams params.pair_count blocks from the oracle without storing the walk.
LagHistogram collect_lag_histogram(WalkOracle& oracle,
                                   const EstimatorParams& params);

// J_hat_i = mean[lx*ly | i not refreshed] - mean[lx*ly | i refreshed].
// Throws when either bucket is empty.
double estimate_bounded_influence(std::span<const RefreshPair> pairs, int i);

// All coordinates at once; nullopt where a bucket is empty.
std::vector<std::optional<double>> estimate_bounded_influences(
    std::span<const RefreshPair> pairs, int n);

}  // namespace juntawalk
