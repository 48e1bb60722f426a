#include <gtest/gtest.h>

#include <random>

#include "juntawalk/errors.hpp"
#include "juntawalk/fourier.hpp"
#include "juntawalk/hypercube.hpp"
#include "support/brute.hpp"

using namespace juntawalk;

TEST(Point, EncodingRoundTrip) {
  for (std::uint64_t bits = 0; bits < 32; ++bits) {
    const Point x{5, bits};
    EXPECT_EQ(Point::from_signs(x.signs()), x);
  }
  const std::vector<int> v{1, -1, -1, 1};
  EXPECT_EQ(Point::from_signs(v).bits, 0b0110u);
  EXPECT_THROW(Point::make(3, 0b1000), std::invalid_argument);
}

TEST(Point, UnitVectorAndHadamard) {
  EXPECT_EQ(Point::unit(4, 3).bits, 0b100u);
  const Point x{4, 0b1010}, y{4, 0b0110};
  EXPECT_EQ(hadamard(x, y).bits, 0b1100u);
  EXPECT_EQ(hamming_distance(x, y), 2);
}

TEST(Chi, Examples) {
  EXPECT_EQ(chi(IndexSet{3, 0}, Point{3, 0b101}), 1);
  EXPECT_EQ(chi(IndexSet::of(3, {1, 2}), Point::from_signs(std::vector<int>{-1, -1, 1})), 1);
  EXPECT_EQ(chi(IndexSet::of(3, {1}), Point::unit(3, 1)), -1);
  EXPECT_THROW(chi(IndexSet{3, 1}, Point{4, 0}), DimensionMismatch);
}

TEST(Chi, MultiplicativeOverHadamardProduct) {
  const int n = 5;
  for (std::uint64_t s = 0; s < 32; ++s) {
    for (std::uint64_t x = 0; x < 32; x += 3) {
      for (std::uint64_t y = 0; y < 32; y += 5) {
        const IndexSet set{n, s};
        EXPECT_EQ(chi(set, hadamard(Point{n, x}, Point{n, y})),
                  chi(set, Point{n, x}) * chi(set, Point{n, y}));
      }
    }
  }
}

TEST(Flip, InvolutionAndDistance) {
  const Point x{6, 0b101101};
  for (int i = 1; i <= 6; ++i) {
    EXPECT_EQ(flip(flip(x, i), i), x);
    EXPECT_EQ(hamming_distance(x, flip(x, i)), 1);
  }
  EXPECT_EQ(flip(Point{6, 0}, 3), Point::unit(6, 3));
  EXPECT_THROW(flip(x, 0), std::out_of_range);
  EXPECT_THROW(flip(x, 7), std::out_of_range);
}

TEST(RestrictIndex, PacksInIncreasingOrder) {
  EXPECT_EQ(restrict_index(0b10100, 0b10100), 0b11u);
  EXPECT_EQ(restrict_index(0b00100, 0b10100), 0b01u);
  EXPECT_EQ(restrict_index(0b10000, 0b10100), 0b10u);
  for (std::uint64_t a = 0; a < 8; ++a) {
    EXPECT_EQ(restrict_index(expand_index(a, 0b1011000), 0b1011000), a);
  }
}

TEST(IndexSet, Basics) {
  const IndexSet s = IndexSet::of(8, {2, 5, 7});
  EXPECT_EQ(s.size(), 3);
  EXPECT_TRUE(s.contains(5));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.coords(), (std::vector<int>{2, 5, 7}));
  EXPECT_EQ(s.united(IndexSet::of(8, {1, 2})).coords(), (std::vector<int>{1, 2, 5, 7}));
  EXPECT_EQ(IndexSet::full(4).mask, 0xFu);
  EXPECT_THROW(IndexSet::of(4, {5}), std::out_of_range);
}

TEST(TruthTable, Validation) {
  EXPECT_THROW(TruthTable(2, std::vector<Sign>{1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(TruthTable(1, std::vector<Sign>{1, 0}), std::invalid_argument);
  EXPECT_THROW(TruthTable::check_table_dim(25), CapExceeded);
}

TEST(TruthTable, ConjunctionMarksAllMinus) {
  const std::vector<int> coords{1, 3};
  const TruthTable f = TruthTable::conjunction(3, coords);
  for (std::uint64_t x = 0; x < 8; ++x) {
    const bool all = brute::coord_value(x, 1) < 0 && brute::coord_value(x, 3) < 0;
    EXPECT_EQ(f.at(x), all ? -1 : 1);
  }
}

TEST(Junta, Examples) {
  const JuntaHypothesis plus = JuntaHypothesis::constant(5, 1);
  for (std::uint64_t x = 0; x < 32; ++x) EXPECT_EQ(eval_junta(plus, Point{5, x}), 1);

  // Table index 0 is x_3 = +1, index 1 is x_3 = -1.
  const JuntaHypothesis dictator(IndexSet::of(5, {3}), {1, -1});
  EXPECT_EQ(eval_junta(dictator, Point::unit(5, 3)), -1);
  EXPECT_EQ(eval_junta(dictator, Point{5, 0}), 1);
  EXPECT_THROW(eval_junta(dictator, Point{4, 0}), DimensionMismatch);
}

TEST(Junta, InvariantOutsideRelevantAndMaterializeAgrees) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 12;
    const IndexSet rel{n, gen() & low_mask(n) & 0b100100100101};
    std::vector<Sign> table(std::size_t{1} << rel.size());
    for (Sign& v : table) v = (gen() & 1) ? -1 : 1;
    const JuntaHypothesis h(rel, table);
    const TruthTable t = h.materialize();
    for (std::uint64_t x = 0; x < t.size(); ++x) {
      ASSERT_EQ(t.at(x), eval_junta(h, Point{n, x}));
      for (int i = 1; i <= n; ++i) {
        if (!rel.contains(i)) ASSERT_EQ(h.at(x), h.at(x ^ (1ULL << (i - 1))));
      }
    }
  }
}

TEST(Distance, Examples) {
  std::mt19937_64 gen(3);
  const TruthTable f = brute::random_table(6, gen);
  EXPECT_EQ(distance_exact(f, f), 0.0);
  EXPECT_EQ(distance_exact(f, f.negated()), 1.0);
  const std::vector<int> a{1, 2, 3}, b{2, 3, 4};
  EXPECT_EQ(distance_exact(TruthTable::conjunction(4, a), TruthTable::conjunction(4, b)),
            0.125);
}

TEST(Distance, MatchesCorrelation) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const TruthTable f = brute::random_table(7, gen), g = brute::random_table(7, gen);
    EXPECT_NEAR(distance_exact(f, g), (1.0 - inner_product(f, g)) / 2.0, 1e-15);
  }
}

TEST(SampleDistance, Examples) {
  const JuntaHypothesis plus = JuntaHypothesis::constant(2, 1);
  const std::vector<std::uint64_t> pts{0, 1, 2, 3};
  const std::vector<Sign> labels{1, 1, -1, -1};
  EXPECT_DOUBLE_EQ(sample_distance(plus, SampleView{2, pts, labels}), 0.5);
  const std::vector<Sign> agree{1, 1, 1, 1};
  EXPECT_EQ(sample_distance(plus, SampleView{2, pts, agree}), 0.0);
  EXPECT_EQ(sample_distance(plus.materialize().negated(), SampleView{2, pts, agree}), 1.0);
  EXPECT_THROW(sample_distance(plus, SampleView{2, {}, {}}), std::invalid_argument);
}

TEST(PointText, FormatAndParse) {
  const Point x = Point::from_signs(std::vector<int>{1, -1, 1, -1});
  EXPECT_EQ(format_point(x), "+-+-");
  EXPECT_EQ(parse_point("+-+-"), x);
  EXPECT_EQ(parse_point("+−+−"), x);
  EXPECT_THROW(parse_point("+x"), std::invalid_argument);
}
