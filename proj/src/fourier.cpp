#include "juntawalk/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "juntawalk/errors.hpp"

namespace juntawalk {
namespace {

constexpr int kDenseHistogramDim = 20;

template <typename T>
void butterfly(std::span<T> data) {
  const std::size_t size = data.size();
  if (size == 0 || !std::has_single_bit(size)) {
    throw std::invalid_argument("transform length must be a power of two");
  }
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * half) {
      for (std::size_t j = base; j < base + half; ++j) {
        const T a = data[j];
        const T b = data[j + half];
        data[j] = a + b;
        data[j + half] = a - b;
      }
    }
  }
}

void check_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " +
                            std::to_string(a) + " vs " + std::to_string(b));
  }
}

void check_spectrum(const Spectrum& s) {
  TruthTable::check_table_dim(s.n);
  if (s.coeffs.size() != (std::size_t{1} << s.n)) {
    throw std::invalid_argument("spectrum must have 2^n coefficients");
  }
}

}  // namespace

double Spectrum::at(const IndexSet& s) const {
  check_same_dim(n, s.n, "Spectrum::at");
  return coeffs[s.mask];
}

void wht_in_place(std::span<std::int64_t> data) { butterfly(data); }
void wht_in_place(std::span<double> data) { butterfly(data); }

std::vector<std::int64_t> wht_integer(const TruthTable& f) {
  std::vector<std::int64_t> w(f.values().begin(), f.values().end());
  butterfly(std::span<std::int64_t>(w));
  return w;
}

Spectrum wht(const TruthTable& f) {
  const std::vector<std::int64_t> w = wht_integer(f);
  Spectrum s;
  s.n = f.n();
  s.coeffs.resize(w.size());
  const double scale = std::ldexp(1.0, -f.n());
  for (std::size_t i = 0; i < w.size(); ++i) {
    s.coeffs[i] = static_cast<double>(w[i]) * scale;
  }
  return s;
}

std::vector<double> inverse_wht(const Spectrum& s) {
  check_spectrum(s);
  std::vector<double> values = s.coeffs;
  butterfly(std::span<double>(values));
  return values;
}

double inner_product(const TruthTable& f, const TruthTable& g) {
  check_same_dim(f.n(), g.n(), "inner_product");
  std::int64_t sum = 0;
  const auto a = f.values();
  const auto b = g.values();
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return std::ldexp(static_cast<double>(sum), -f.n());
}

double inner_product(const Spectrum& f, const Spectrum& g) {
  check_same_dim(f.n, g.n, "inner_product");
  check_spectrum(f);
  check_spectrum(g);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    sum += f.coeffs[i] * g.coeffs[i];
  }
  return sum;
}

double sum_of_squares(const Spectrum& s) { return inner_product(s, s); }

double subcube_projection_exact(const Spectrum& s, const IndexSet& r) {
  check_spectrum(s);
  check_same_dim(s.n, r.n, "subcube_projection_exact");
  double sum = 0.0;
  for (std::uint64_t t = 0; t < s.coeffs.size(); ++t) {
    if ((t & r.mask) == 0) sum += s.coeffs[t] * s.coeffs[t];
  }
  return sum;
}

double expected_bounded_influence(const Spectrum& s, int i, double p) {
  check_spectrum(s);
  if (i < 1 || i > s.n) throw std::out_of_range("coordinate out of range");
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("refresh density must lie in (0, 1)");
  }
  const std::uint64_t bit = 1ULL << (i - 1);
  double sum = 0.0;
  for (std::uint64_t t = 0; t < s.coeffs.size(); ++t) {
    if (t & bit) {
      sum += s.coeffs[t] * s.coeffs[t] * std::pow(1.0 - p, std::popcount(t) - 1);
    }
  }
  return sum;
}

double lag_weight(int d, int n, std::size_t lag) {
  return std::pow(1.0 - 2.0 * d / n, static_cast<double>(lag));
}

double expected_sq_coeff_estimate(const Spectrum& s, const IndexSet& set,
                                  std::size_t lag) {
  check_spectrum(s);
  check_same_dim(s.n, set.n, "expected_sq_coeff_estimate");
  double sum = 0.0;
  for (std::uint64_t u = 0; u < s.coeffs.size(); ++u) {
    const int d = std::popcount(u ^ set.mask);
    const double w =
        0.5 * (lag_weight(d, s.n, lag) + lag_weight(d, s.n, lag + 1));
    sum += s.coeffs[u] * s.coeffs[u] * w;
  }
  return sum;
}

void EstimatorParams::validate() const {
  if (lag < 1) throw std::invalid_argument("estimator lag must be >= 1");
  if (pair_count < 1) {
    throw std::invalid_argument("estimator pair_count must be >= 1");
  }
}

EstimatorParams EstimatorParams::for_threshold(int n, double theta,
                                               double delta_per_set) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("theta must lie in (0, 1]");
  }
  if (!(delta_per_set > 0.0 && delta_per_set < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  EstimatorParams p;
  p.lag = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(0.5 * n * std::log(8.0 / theta))));
  const double half_width = theta / 8.0;
  p.pair_count = static_cast<std::size_t>(std::ceil(
      2.0 * std::log(2.0 / delta_per_set) / (half_width * half_width)));
  p.tolerance = theta / 4.0;
  p.confidence = 1.0 - delta_per_set;
  return p;
}

namespace {

void check_walk_for(const LabeledWalk& walk, const EstimatorParams& params) {
  params.validate();
  if (walk.lazy) {
    throw std::invalid_argument("lag estimators need a non-lazy walk");
  }
  if (walk.size() < params.required_walk_length()) {
    throw std::invalid_argument(
        "walk too short: need " + std::to_string(params.required_walk_length()) +
        " points, have " + std::to_string(walk.size()));
  }
}

}  // namespace

double estimate_sq_coeff(const LabeledWalk& walk, const IndexSet& set,
                         const EstimatorParams& params) {
  check_same_dim(walk.n, set.n, "estimate_sq_coeff");
  check_walk_for(walk, params);
  std::int64_t sum = 0;
  const std::size_t t = params.lag;
  for (std::size_t b = 0; b < params.pair_count; ++b) {
    const std::size_t s = b * params.stride();
    const std::uint64_t x = walk.points[s];
    const int fx = walk.labels[s];
    sum += fx * walk.labels[s + t] * parity_sign(set.mask & (x ^ walk.points[s + t]));
    sum += fx * walk.labels[s + t + 1] *
           parity_sign(set.mask & (x ^ walk.points[s + t + 1]));
  }
  return static_cast<double>(sum) / (2.0 * static_cast<double>(params.pair_count));
}

double estimate_sq_coeff_single_lag(const LabeledWalk& walk,
                                    const IndexSet& set,
                                    const EstimatorParams& params) {
  check_same_dim(walk.n, set.n, "estimate_sq_coeff_single_lag");
  check_walk_for(walk, params);
  std::int64_t sum = 0;
  const std::size_t t = params.lag;
  for (std::size_t b = 0; b < params.pair_count; ++b) {
    const std::size_t s = b * params.stride();
    sum += walk.labels[s] * walk.labels[s + t] *
           parity_sign(set.mask & (walk.points[s] ^ walk.points[s + t]));
  }
  return static_cast<double>(sum) / static_cast<double>(params.pair_count);
}

LagHistogram::LagHistogram(int n, std::size_t lag)
    : n_(n), lag_(lag), use_dense_(n <= kDenseHistogramDim) {
  if (n < 1 || n > kMaxPackedDim) throw CapExceeded("dimension outside [1, 63]");
  if (use_dense_) dense_.assign(std::size_t{1} << n, 0);
}

void LagHistogram::add_block(std::uint64_t x, Sign fx, std::uint64_t xt,
                             Sign ft, std::uint64_t xt1, Sign ft1) {
  if (finalized_) throw std::logic_error("LagHistogram already finalized");
  const std::int64_t w1 = fx * ft;
  const std::int64_t w2 = fx * ft1;
  if (use_dense_) {
    dense_[x ^ xt] += w1;
    dense_[x ^ xt1] += w2;
  } else {
    sparse_.emplace_back(x ^ xt, w1);
    sparse_.emplace_back(x ^ xt1, w2);
  }
  ++blocks_;
}

void LagHistogram::finalize() {
  if (finalized_) return;
  if (use_dense_) {
    butterfly(std::span<std::int64_t>(dense_));
  } else {
    std::sort(sparse_.begin(), sparse_.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < sparse_.size();) {
      std::size_t j = i;
      std::int64_t w = 0;
      while (j < sparse_.size() && sparse_[j].first == sparse_[i].first) {
        w += sparse_[j].second;
        ++j;
      }
      if (w != 0) sparse_[out++] = {sparse_[i].first, w};
      i = j;
    }
    sparse_.resize(out);
  }
  finalized_ = true;
}

double LagHistogram::estimate(const IndexSet& set) const {
  if (!finalized_) throw std::logic_error("LagHistogram not finalized");
  check_same_dim(n_, set.n, "LagHistogram::estimate");
  if (blocks_ == 0) throw std::logic_error("LagHistogram has no blocks");
  std::int64_t sum = 0;
  if (use_dense_) {
    sum = dense_[set.mask];
  } else {
    for (const auto& [d, w] : sparse_) sum += w * parity_sign(d & set.mask);
  }
  return static_cast<double>(sum) / (2.0 * static_cast<double>(blocks_));
}

std::vector<double> LagHistogram::estimate(std::span<const IndexSet> sets) const {
  std::vector<double> out;
  out.reserve(sets.size());
  for (const IndexSet& s : sets) out.push_back(estimate(s));
  return out;
}

LagHistogram collect_lag_histogram(const LabeledWalk& walk,
                                   const EstimatorParams& params) {
  check_walk_for(walk, params);
  LagHistogram h(walk.n, params.lag);
  const std::size_t t = params.lag;
  for (std::size_t b = 0; b < params.pair_count; ++b) {
    const std::size_t s = b * params.stride();
    h.add_block(walk.points[s], walk.labels[s], walk.points[s + t],
                walk.labels[s + t], walk.points[s + t + 1],
                walk.labels[s + t + 1]);
  }
  h.finalize();
  return h;
}

LagHistogram collect_lag_histogram(WalkOracle& oracle,
                                   const EstimatorParams& params) {
  params.validate();
  if (oracle.lazy()) {
    throw std::invalid_argument("lag estimators need a non-lazy walk");
  }
  LagHistogram h(oracle.n(), params.lag);
  const std::size_t t = params.lag;
  const std::size_t gap = params.stride() - (t + 2);
  for (std::size_t b = 0; b < params.pair_count; ++b) {
    if (b > 0) {
      for (std::size_t skip = 0; skip < gap; ++skip) oracle.next();
    }
    const WalkOracle::Example x = oracle.next();
    WalkOracle::Example e = x;
    for (std::size_t k = 0; k < t; ++k) e = oracle.next();
    const WalkOracle::Example e1 = oracle.next();
    h.add_block(x.bits, x.label, e.bits, e.label, e1.bits, e1.label);
  }
  h.finalize();
  return h;
}

std::vector<std::optional<double>> estimate_bounded_influences(
    std::span<const RefreshPair> pairs, int n) {
  std::int64_t total_sum = 0;
  std::vector<std::int64_t> in_sum(n, 0);
  std::vector<std::size_t> in_count(n, 0);
  for (const RefreshPair& p : pairs) {
    if (p.refreshed.n != n) {
      throw DimensionMismatch("refresh pair dimension differs from n");
    }
    const int prod = p.label_x * p.label_y;
    total_sum += prod;
    for (std::uint64_t m = p.refreshed.mask; m != 0; m &= m - 1) {
      const int i = std::countr_zero(m);
      in_sum[i] += prod;
      ++in_count[i];
    }
  }
  std::vector<std::optional<double>> out(n);
  for (int i = 0; i < n; ++i) {
    const std::size_t out_count = pairs.size() - in_count[i];
    if (in_count[i] == 0 || out_count == 0) continue;
    const double mean_in =
        static_cast<double>(in_sum[i]) / static_cast<double>(in_count[i]);
    const double mean_out = static_cast<double>(total_sum - in_sum[i]) /
                            static_cast<double>(out_count);
    out[i] = mean_out - mean_in;
  }
  return out;
}

double estimate_bounded_influence(std::span<const RefreshPair> pairs, int i) {
  if (pairs.empty()) throw std::invalid_argument("no refresh pairs");
  const int n = pairs.front().refreshed.n;
  if (i < 1 || i > n) throw std::out_of_range("coordinate out of range");
  const auto all = estimate_bounded_influences(pairs, n);
  if (!all[i - 1]) {
    throw std::invalid_argument("coordinate " + std::to_string(i) +
                                " has an empty refresh bucket");
  }
  return *all[i - 1];
}

}  // namespace juntawalk
