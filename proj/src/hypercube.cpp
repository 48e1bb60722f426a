#include "juntawalk/hypercube.hpp"

#include <stdexcept>
#include <string>

#include "juntawalk/errors.hpp"

namespace juntawalk {
namespace {

void check_packed_dim(int n) {
  if (n < 1 || n > kMaxPackedDim) {
    throw CapExceeded("dimension " + std::to_string(n) +
                      " outside [1, 63] for bit-packed points");
  }
}

void check_coordinate(int n, int i) {
  if (i < 1 || i > n) {
    throw std::out_of_range("coordinate " + std::to_string(i) +
                            " outside [1, " + std::to_string(n) + "]");
  }
}

void check_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " +
                            std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

Point Point::make(int n, std::uint64_t bits) {
  check_packed_dim(n);
  if ((bits & ~low_mask(n)) != 0) {
    throw std::invalid_argument("point has bits set at or above position n");
  }
  return Point{n, bits};
}

Point Point::from_signs(std::span<const int> values) {
  const int n = static_cast<int>(values.size());
  check_packed_dim(n);
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) {
    if (values[i] == -1) {
      bits |= 1ULL << i;
    } else if (values[i] != 1) {
      throw std::invalid_argument("point coordinates must be +1 or -1");
    }
  }
  return Point{n, bits};
}

Point Point::unit(int n, int i) {
  check_packed_dim(n);
  check_coordinate(n, i);
  return Point{n, 1ULL << (i - 1)};
}

int Point::value(int i) const {
  check_coordinate(n, i);
  return (bits >> (i - 1)) & 1U ? -1 : 1;
}

std::vector<int> Point::signs() const {
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = (bits >> i) & 1U ? -1 : 1;
  return out;
}

Point hadamard(const Point& x, const Point& y) {
  check_same_dim(x.n, y.n, "hadamard");
  return Point{x.n, x.bits ^ y.bits};
}

int hamming_distance(const Point& x, const Point& y) {
  check_same_dim(x.n, y.n, "hamming_distance");
  return std::popcount(x.bits ^ y.bits);
}

IndexSet IndexSet::make(int n, std::uint64_t mask) {
  check_packed_dim(n);
  if ((mask & ~low_mask(n)) != 0) {
    throw std::invalid_argument("index set contains coordinates above n");
  }
  return IndexSet{n, mask};
}

IndexSet IndexSet::of(int n, std::initializer_list<int> coords) {
  return of(n, std::span<const int>(coords.begin(), coords.size()));
}

IndexSet IndexSet::of(int n, std::span<const int> coords) {
  check_packed_dim(n);
  std::uint64_t mask = 0;
  for (int i : coords) {
    check_coordinate(n, i);
    mask |= 1ULL << (i - 1);
  }
  return IndexSet{n, mask};
}

IndexSet IndexSet::full(int n) {
  check_packed_dim(n);
  return IndexSet{n, low_mask(n)};
}

bool IndexSet::contains(int i) const {
  return i >= 1 && i <= n && ((mask >> (i - 1)) & 1U);
}

std::vector<int> IndexSet::coords() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m) + 1);
  }
  return out;
}

IndexSet IndexSet::united(const IndexSet& other) const {
  check_same_dim(n, other.n, "IndexSet::united");
  return IndexSet{n, mask | other.mask};
}

Sign chi(const IndexSet& s, const Point& x) {
  check_same_dim(s.n, x.n, "chi");
  return parity_sign(s.mask & x.bits);
}

Point flip(const Point& x, int i) {
  check_coordinate(x.n, i);
  return Point{x.n, x.bits ^ (1ULL << (i - 1))};
}

void TruthTable::check_table_dim(int n) {
  if (n < 1 || n > kMaxTableDim) {
    throw CapExceeded("truth tables support 1 <= n <= 24, got " +
                      std::to_string(n));
  }
}

TruthTable::TruthTable(int n, std::vector<Sign> values)
    : n_(n), values_(std::move(values)) {
  check_table_dim(n);
  if (values_.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("truth table must have 2^n entries");
  }
  for (Sign v : values_) {
    if (v != 1 && v != -1) {
      throw std::invalid_argument("truth table entries must be +1 or -1");
    }
  }
}

TruthTable TruthTable::constant(int n, Sign value) {
  check_table_dim(n);
  return TruthTable(n, std::vector<Sign>(std::size_t{1} << n, value));
}

TruthTable TruthTable::parity(const IndexSet& s) {
  const std::uint64_t mask = s.mask;
  return tabulate(s.n, [mask](const Point& x) { return parity_sign(mask & x.bits); });
}

TruthTable TruthTable::conjunction(int n, std::span<const int> coords) {
  const std::uint64_t mask = IndexSet::of(n, coords).mask;
  return tabulate(n, [mask](const Point& x) {
    return (x.bits & mask) == mask ? -1 : 1;
  });
}

Sign TruthTable::operator()(const Point& x) const {
  check_same_dim(n_, x.n, "TruthTable evaluation");
  return values_[x.bits];
}

TruthTable TruthTable::negated() const {
  std::vector<Sign> out(values_.size());
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b] = static_cast<Sign>(-values_[b]);
  }
  return TruthTable(n_, std::move(out));
}

JuntaHypothesis::JuntaHypothesis(IndexSet relevant, std::vector<Sign> table)
    : relevant_(relevant), table_(std::move(table)) {
  check_packed_dim(relevant_.n);
  if (relevant_.size() > 30) {
    throw CapExceeded("junta tables are capped at 30 relevant coordinates");
  }
  if (table_.size() != (std::size_t{1} << relevant_.size())) {
    throw std::invalid_argument("junta table must have 2^|J| entries");
  }
  for (Sign v : table_) {
    if (v != 1 && v != -1) {
      throw std::invalid_argument("junta table entries must be +1 or -1");
    }
  }
}

JuntaHypothesis JuntaHypothesis::constant(int n, Sign value) {
  return JuntaHypothesis(IndexSet::make(n, 0), std::vector<Sign>{value});
}

Sign JuntaHypothesis::operator()(const Point& x) const {
  check_same_dim(relevant_.n, x.n, "eval_junta");
  return at(x.bits);
}

TruthTable JuntaHypothesis::materialize() const {
  return TruthTable::tabulate(n(), [this](const Point& x) { return at(x.bits); });
}

Sign eval_junta(const JuntaHypothesis& h, const Point& x) { return h(x); }

std::uint64_t disagreements(const TruthTable& f, const TruthTable& g) {
  check_same_dim(f.n(), g.n(), "distance_exact");
  std::uint64_t count = 0;
  const auto a = f.values();
  const auto b = g.values();
  for (std::size_t i = 0; i < a.size(); ++i) count += a[i] != b[i];
  return count;
}

std::uint64_t disagreements(const TruthTable& f, const JuntaHypothesis& h) {
  check_same_dim(f.n(), h.n(), "distance_exact");
  std::uint64_t count = 0;
  const auto a = f.values();
  for (std::uint64_t b = 0; b < a.size(); ++b) count += a[b] != h.at(b);
  return count;
}

double distance_exact(const TruthTable& f, const TruthTable& g) {
  return static_cast<double>(disagreements(f, g)) /
         static_cast<double>(f.size());
}

double distance_exact(const TruthTable& f, const JuntaHypothesis& h) {
  return static_cast<double>(disagreements(f, h)) /
         static_cast<double>(f.size());
}

namespace {

template <typename Eval>
double sample_distance_impl(int n, const SampleView& sample, Eval&& eval) {
  check_same_dim(n, sample.n, "sample_distance");
  if (sample.size() == 0) {
    throw std::invalid_argument("sample_distance on an empty sample");
  }
  if (sample.labels.size() != sample.points.size()) {
    throw std::invalid_argument("sample points and labels differ in length");
  }
  std::size_t wrong = 0;
  for (std::size_t t = 0; t < sample.size(); ++t) {
    wrong += eval(sample.points[t]) != sample.labels[t];
  }
  return static_cast<double>(wrong) / static_cast<double>(sample.size());
}

}  // namespace

double sample_distance(const JuntaHypothesis& h, const SampleView& sample) {
  return sample_distance_impl(h.n(), sample,
                              [&h](std::uint64_t b) { return h.at(b); });
}

double sample_distance(const TruthTable& f, const SampleView& sample) {
  return sample_distance_impl(f.n(), sample,
                              [&f](std::uint64_t b) { return f.at(b); });
}

std::string format_point(const Point& x) {
  std::string out(static_cast<std::size_t>(x.n), '+');
  for (int i = 0; i < x.n; ++i) {
    if ((x.bits >> i) & 1U) out[i] = '-';
  }
  return out;
}

Point parse_point(std::string_view text) {
  static constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";
  std::uint64_t bits = 0;
  int n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (n >= kMaxPackedDim) throw CapExceeded("point text longer than 63");
    if (text[pos] == '+') {
      ++pos;
    } else if (text[pos] == '-') {
      bits |= 1ULL << n;
      ++pos;
    } else if (text.substr(pos, kUnicodeMinus.size()) == kUnicodeMinus) {
      bits |= 1ULL << n;
      pos += kUnicodeMinus.size();
    } else {
      throw std::invalid_argument("point text may contain only '+' and '-'");
    }
    ++n;
  }
  return Point::make(n, bits);
}

}  // namespace juntawalk
