#pragma once

// Points of {-1,+1}^n, coordinate subsets, explicit Boolean functions and
// junta hypotheses.
//
// Encoding: bit i-1 of a word is set iff coordinate x_i = -1. The all-(+1)
// point is word 0, e_i is the single bit i-1, the coordinate-wise product
// x (.) y is XOR, and chi_S(x) is the parity of popcount(S & x).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace juntawalk {

using Sign = std::int8_t;

inline constexpr int kMaxPackedDim = 63;
inline constexpr int kMaxTableDim = 24;

constexpr std::uint64_t low_mask(int n) noexcept {
  return n >= 64 ? ~0ULL : ((1ULL << n) - 1);
}

constexpr Sign parity_sign(std::uint64_t word) noexcept {
  return (std::popcount(word) & 1) ? Sign{-1} : Sign{1};
}

// Index of `bits` restricted to `mask`, packing the selected bits in
// increasing coordinate order (a software pext).
constexpr std::uint64_t restrict_index(std::uint64_t bits,
                                       std::uint64_t mask) noexcept {
  std::uint64_t index = 0;
  for (std::uint64_t out = 1; mask != 0; mask &= mask - 1, out <<= 1) {
    if (bits & mask & (0 - mask)) index |= out;
  }
  return index;
}

// Inverse of restrict_index: scatter the low bits of `index` onto `mask`.
constexpr std::uint64_t expand_index(std::uint64_t index,
                                     std::uint64_t mask) noexcept {
  std::uint64_t bits = 0;
  for (std::uint64_t in = 1; mask != 0; mask &= mask - 1, in <<= 1) {
    if (index & in) bits |= mask & (0 - mask);
  }
  return bits;
}

struct Point {
  int n = 1;
  std::uint64_t bits = 0;

  static Point make(int n, std::uint64_t bits);
  static Point from_signs(std::span<const int> values);
  static Point unit(int n, int i);  // e_i

  int value(int i) const;  // x_i in {-1,+1}, 1-based
  std::vector<int> signs() const;

  friend bool operator==(const Point&, const Point&) = default;
};

Point hadamard(const Point& x, const Point& y);  // x (.) y
int hamming_distance(const Point& x, const Point& y);

struct IndexSet {
  int n = 1;
  std::uint64_t mask = 0;

  static IndexSet make(int n, std::uint64_t mask);
  static IndexSet of(int n, std::initializer_list<int> coords);
  static IndexSet of(int n, std::span<const int> coords);
  static IndexSet full(int n);

  bool contains(int i) const;
  int size() const { return std::popcount(mask); }
  bool empty() const { return mask == 0; }
  std::vector<int> coords() const;
  IndexSet united(const IndexSet& other) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
};

Sign chi(const IndexSet& s, const Point& x);
Point flip(const Point& x, int i);

class TruthTable {
 public:
  TruthTable(int n, std::vector<Sign> values);

  static TruthTable constant(int n, Sign value);
  static TruthTable parity(const IndexSet& s);
  // AND over `coords` with -1 read as true: -1 iff every listed x_i = -1.
  static TruthTable conjunction(int n, std::span<const int> coords);

  template <typename Fn>
  static TruthTable tabulate(int n, Fn&& fn) {
    check_table_dim(n);
    std::vector<Sign> values(std::size_t{1} << n);
    for (std::uint64_t b = 0; b < values.size(); ++b) {
      values[b] = static_cast<Sign>(fn(Point{n, b}));
    }
    return TruthTable(n, std::move(values));
  }

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  Sign at(std::uint64_t bits) const { return values_[bits]; }
  Sign operator()(const Point& x) const;
  std::span<const Sign> values() const { return values_; }

  TruthTable negated() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

  static void check_table_dim(int n);

 private:
  int n_;
  std::vector<Sign> values_;
};

// A function of the coordinates in `relevant` only. table[a] is the value on
// points whose restriction to `relevant` has index a (see restrict_index).
class JuntaHypothesis {
 public:
  JuntaHypothesis(IndexSet relevant, std::vector<Sign> table);

  static JuntaHypothesis constant(int n, Sign value);

  int n() const { return relevant_.n; }
  const IndexSet& relevant() const { return relevant_; }
  std::span<const Sign> table() const { return table_; }

  Sign at(std::uint64_t bits) const {
    return table_[restrict_index(bits, relevant_.mask)];
  }
  Sign operator()(const Point& x) const;

  TruthTable materialize() const;

  friend bool operator==(const JuntaHypothesis&,
                         const JuntaHypothesis&) = default;

 private:
  IndexSet relevant_;
  std::vector<Sign> table_;
};

Sign eval_junta(const JuntaHypothesis& h, const Point& x);

// Number of points of the cube where the two functions differ.
std::uint64_t disagreements(const TruthTable& f, const TruthTable& g);
std::uint64_t disagreements(const TruthTable& f, const JuntaHypothesis& h);

// Exact: both return k / 2^n, which is representable in a double for n <= 24.
double distance_exact(const TruthTable& f, const TruthTable& g);
double distance_exact(const TruthTable& f, const JuntaHypothesis& h);

// Non-owning labeled sample (x^1, y^1), ..., (x^m, y^m).
struct SampleView {
  int n = 1;
  std::span<const std::uint64_t> points;
  std::span<const Sign> labels;

  std::size_t size() const { return points.size(); }
};

double sample_distance(const JuntaHypothesis& h, const SampleView& sample);
double sample_distance(const TruthTable& f, const SampleView& sample);

// Dump format: n characters, '+' or '-', coordinates 1..n. The parser also
// accepts U+2212 for minus.
std::string format_point(const Point& x);
Point parse_point(std::string_view text);

}  // namespace juntawalk
