#include "juntawalk/oracle_bruteforce.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "juntawalk/errors.hpp"
#include "juntawalk/fourier.hpp"

namespace juntawalk {

std::pair<JuntaHypothesis, std::uint64_t> best_junta_on(const TruthTable& f,
                                                        const IndexSet& relevant) {
  if (relevant.n != f.n()) throw DimensionMismatch("subset and table differ in n");
  if (relevant.size() > 24) throw CapExceeded("junta subset too large");
  std::vector<std::array<std::uint64_t, 2>> counts(std::size_t{1} << relevant.size(),
                                                   {0, 0});
  const auto values = f.values();
  for (std::uint64_t x = 0; x < values.size(); ++x) {
    ++counts[restrict_index(x, relevant.mask)][values[x] < 0 ? 1 : 0];
  }
  std::vector<Sign> table(counts.size(), 1);
  std::uint64_t err = 0;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    if (counts[a][1] > counts[a][0]) table[a] = -1;
    err += std::min(counts[a][0], counts[a][1]);
  }
  return {JuntaHypothesis(relevant, std::move(table)), err};
}

double OptResult::opt() const {
  return std::ldexp(static_cast<double>(disagreements), -n);
}

OptResult exact_opt(const TruthTable& f, int k, bool keep_per_subset) {
  const int n = f.n();
  if (n > kMaxOptDim) throw CapExceeded("exact opt is capped at n = 16");
  if (k < 0 || k > n) throw std::invalid_argument("k must lie in [0, n]");
  OptResult result;
  result.n = n;
  bool have = false;
  // Gosper's hack visits k-subsets in increasing mask order.
  const std::uint64_t limit = 1ULL << n;
  std::uint64_t mask = low_mask(k);
  while (mask < limit) {
    auto [h, err] = best_junta_on(f, IndexSet{n, mask});
    if (keep_per_subset) result.per_subset.emplace_back(IndexSet{n, mask}, err);
    if (!have || err < result.disagreements) {
      result.disagreements = err;
      result.witness = std::move(h);
      have = true;
    }
    if (mask == 0) break;
    const std::uint64_t low = mask & (0 - mask);
    const std::uint64_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }
  return result;
}

std::vector<int> relevant_variables(const TruthTable& g) {
  std::vector<int> out;
  const auto values = g.values();
  for (int i = 1; i <= g.n(); ++i) {
    const std::uint64_t bit = 1ULL << (i - 1);
    for (std::uint64_t x = 0; x < values.size(); ++x) {
      if (!(x & bit) && values[x] != values[x | bit]) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

TruthTable restrict_variable(const TruthTable& g, int i, Sign value) {
  if (i < 1 || i > g.n()) throw std::out_of_range("coordinate outside [1, n]");
  if (value != 1 && value != -1) throw std::invalid_argument("value must be +1 or -1");
  const std::uint64_t bit = 1ULL << (i - 1);
  const std::uint64_t forced = value < 0 ? bit : 0;
  std::vector<Sign> values(g.size());
  for (std::uint64_t x = 0; x < values.size(); ++x) {
    values[x] = g.at((x & ~bit) | forced);
  }
  return TruthTable(g.n(), std::move(values));
}

double heavy_coefficient_bound(int k, double epsilon) {
  return (1.0 - 0.70710678118654752440) * std::pow(2.0, -(k - 1) / 2.0) * epsilon;
}

namespace {

std::int64_t correlation_sum(const TruthTable& f, const TruthTable& g) {
  std::int64_t s = 0;
  const auto a = f.values();
  const auto b = g.values();
  for (std::size_t x = 0; x < a.size(); ++x) s += a[x] * b[x];
  return s;
}

}  // namespace

LemmaCertificate verify_spectrum_lemma(const TruthTable& f, const TruthTable& g,
                                       int k, double epsilon) {
  const int n = f.n();
  if (g.n() != n) throw DimensionMismatch("f and g differ in n");
  if (n > kMaxLemmaDim) throw CapExceeded("lemma verifier is capped at n = 12");
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  const std::vector<int> rel = relevant_variables(g);
  if (static_cast<int>(rel.size()) > k) {
    throw std::invalid_argument("g depends on more than k variables");
  }

  LemmaCertificate cert;
  cert.bound = heavy_coefficient_bound(k, epsilon);
  const std::vector<std::int64_t> w = wht_integer(f);
  const double scale = std::ldexp(1.0, -n);

  // Heaviest |f^(S)| over S containing i with |S| <= k, per coordinate.
  std::vector<std::int64_t> heaviest(n + 1, -1);
  std::vector<std::uint64_t> heaviest_set(n + 1, 0);
  for (std::uint64_t s = 1; s < w.size(); ++s) {
    if (std::popcount(s) > k) continue;
    const std::int64_t mag = std::llabs(w[s]);
    for (std::uint64_t rest = s; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest) + 1;
      if (mag > heaviest[i]) {
        heaviest[i] = mag;
        heaviest_set[i] = s;
      }
    }
  }

  const std::int64_t base = correlation_sum(f, g);
  cert.correlation = static_cast<double>(base) * scale;

  // Assignment digits: 0 free, 1 fixed to +1, 2 fixed to -1.
  const std::size_t r = rel.size();
  std::size_t total = 1;
  for (std::size_t j = 0; j < r; ++j) total *= 3;
  std::vector<std::vector<int>> assignments;
  assignments.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<int> digits(r);
    std::size_t c = code;
    for (std::size_t j = 0; j < r; ++j, c /= 3) digits[j] = static_cast<int>(c % 3);
    assignments.push_back(std::move(digits));
  }
  std::stable_sort(assignments.begin(), assignments.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     return std::count_if(a.begin(), a.end(), [](int d) { return d; }) <
                            std::count_if(b.begin(), b.end(), [](int d) { return d; });
                   });

  for (const std::vector<int>& digits : assignments) {
    ++cert.candidates_examined;
    TruthTable candidate = g;
    std::vector<std::pair<int, Sign>> fixed;
    for (std::size_t j = 0; j < r; ++j) {
      if (digits[j] == 0) continue;
      const Sign v = digits[j] == 1 ? Sign{1} : Sign{-1};
      candidate = restrict_variable(candidate, rel[j], v);
      fixed.emplace_back(rel[j], v);
    }
    const std::int64_t corr = correlation_sum(f, candidate);
    if (static_cast<double>(corr - base) * scale < -epsilon) continue;

    std::vector<LemmaWitness> witnesses;
    bool ok = true;
    for (int i : relevant_variables(candidate)) {
      const double coeff = static_cast<double>(heaviest[i]) * scale;
      if (heaviest[i] <= 0 || coeff < cert.bound) {
        ok = false;
        break;
      }
      const std::uint64_t s = heaviest_set[i];
      witnesses.push_back(
          LemmaWitness{i, IndexSet{n, s}, static_cast<double>(w[s]) * scale});
    }
    if (!ok) continue;

    cert.found = true;
    cert.restricted = std::move(candidate);
    cert.fixed = std::move(fixed);
    cert.restricted_correlation = static_cast<double>(corr) * scale;
    cert.witnesses = std::move(witnesses);
    return cert;
  }
  return cert;
}

bool FixtureReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const FixtureCheck& c) { return c.passed; });
}

FixtureReport counterexample_fixtures(int k) {
  if (k < 1 || k > 10) throw std::invalid_argument("k must lie in [1, 10]");
  const int n = k + 1;
  std::vector<int> first(k), shifted(k);
  for (int i = 0; i < k; ++i) {
    first[i] = i + 1;
    shifted[i] = i + 2;
  }
  const TruthTable f = TruthTable::conjunction(n, first);
  const TruthTable g = TruthTable::conjunction(n, shifted);
  const std::vector<std::int64_t> w = wht_integer(f);

  FixtureReport report;
  report.k = k;
  // 2^n * 2^{1-k} = 4 on n = k + 1.
  const std::int64_t level = std::int64_t{1} << (n - k + 1);
  const std::uint64_t inner = low_mask(k);
  const std::uint64_t last = 1ULL << k;

  {
    std::uint64_t bad = 0;
    std::size_t count = 0;
    for (std::uint64_t s = 1; s <= inner; ++s) {
      if ((s & ~inner) != 0) continue;
      ++count;
      if (std::llabs(w[s]) != level) bad = bad ? bad : s;
    }
    std::ostringstream d;
    d << count << " nonempty sets checked";
    if (bad) d << "; first mismatch at mask 0x" << std::hex << bad;
    report.checks.push_back(
        FixtureCheck{"and_coefficients_equal_2^(1-k)", bad == 0, d.str()});
  }
  {
    const std::int64_t sum = correlation_sum(f, g);
    const std::int64_t expected = (std::int64_t{1} << n) - level;
    std::ostringstream d;
    d << "sum f*g = " << sum << ", expected " << expected;
    report.checks.push_back(
        FixtureCheck{"shifted_and_correlation", sum == expected, d.str()});
  }
  {
    std::size_t count = 0;
    std::uint64_t bad = 0;
    for (std::uint64_t s = 0; s < w.size(); ++s) {
      if (!(s & last)) continue;
      ++count;
      if (w[s] != 0) bad = bad ? bad : s;
    }
    std::ostringstream d;
    d << count << " sets containing coordinate " << k + 1 << " checked";
    if (bad) d << "; first nonzero at mask 0x" << std::hex << bad;
    report.checks.push_back(
        FixtureCheck{"coefficients_vanish_on_irrelevant", bad == 0, d.str()});
  }
  return report;
}

}  // namespace juntawalk
