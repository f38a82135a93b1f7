#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

using namespace khrank;
using gf2::BitMatrix;

TEST(Gf2, RankExamples) {
  EXPECT_EQ(gf2::rank(BitMatrix::identity(3)), 3u);
  EXPECT_EQ(gf2::rank(BitMatrix(0, 5)), 0u);
  EXPECT_EQ(gf2::rank(BitMatrix(5, 0)), 0u);
  EXPECT_EQ(gf2::rank(BitMatrix(4, 7)), 0u);
  BitMatrix ones(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) ones.set(r, c, true);
  EXPECT_EQ(gf2::rank(ones), 1u);
}

TEST(Gf2, RankDoesNotMutate) {
  auto r = gen::rng(40);
  const BitMatrix m = oracle::random_bits(r, 70, 90);
  const BitMatrix copy = m;
  (void)gf2::rank(m);
  EXPECT_EQ(m, copy);
}

TEST(Gf2, MulExamples) {
  auto r = gen::rng(41);
  const BitMatrix m = oracle::random_bits(r, 13, 77);
  EXPECT_EQ(gf2::mul(m, BitMatrix::identity(77)), m);
  BitMatrix row(1, 2), col(2, 1);
  row.set(0, 0, true);
  row.set(0, 1, true);
  col.set(0, 0, true);
  col.set(1, 0, true);
  EXPECT_EQ(gf2::mul(row, col), BitMatrix(1, 1));
  EXPECT_THROW(gf2::mul(row, row), Error);
}

TEST(Gf2, PaddingBitsStayZero) {
  BitMatrix m(3, 70);
  m.set(0, 69, true);
  m.flip(1, 69);
  m.add_row(2, 0);
  EXPECT_EQ(m.row(0)[1], gf2::Word{1} << 5);
  EXPECT_EQ(gf2::transpose(gf2::transpose(m)), m);
  EXPECT_EQ(m.popcount(), 3u);
}

TEST(Gf2Property, MatchesNaiveOracle) {
  auto r = gen::rng(42);
  for (int k = 0; k < 300; ++k) {
    const std::size_t rows = static_cast<std::size_t>(gen::uniform(r, 0, 64));
    const std::size_t cols = static_cast<std::size_t>(gen::uniform(r, 0, 64));
    const double density = std::uniform_real_distribution<double>(0.02, 0.9)(r);
    const BitMatrix m = oracle::random_bits(r, rows, cols, density);
    EXPECT_EQ(gf2::rank(m), oracle::naive_rank(oracle::to_bools(m))) << rows << "x" << cols;
  }
}

TEST(Gf2Property, LowRankProducts) {
  // rank(A B) <= inner dimension, and equals the oracle.
  auto r = gen::rng(43);
  for (int k = 0; k < 50; ++k) {
    const std::size_t inner = static_cast<std::size_t>(gen::uniform(r, 1, 20));
    const BitMatrix a = oracle::random_bits(r, 150, inner), b = oracle::random_bits(r, inner, 130);
    const BitMatrix p = gf2::mul(a, b);
    EXPECT_LE(gf2::rank(p), inner);
    EXPECT_EQ(gf2::rank(p), oracle::naive_rank(oracle::to_bools(p)));
  }
}

TEST(Gf2Property, TransposeInvariant) {
  auto r = gen::rng(44);
  for (int k = 0; k < 30; ++k) {
    const BitMatrix m = oracle::random_bits(r, static_cast<std::size_t>(gen::uniform(r, 1, 200)),
                                            static_cast<std::size_t>(gen::uniform(r, 1, 200)), 0.1);
    EXPECT_EQ(gf2::rank(m), gf2::rank(gf2::transpose(m)));
  }
}

TEST(Gf2Property, RowOperationsInvariant) {
  auto r = gen::rng(45);
  for (int k = 0; k < 50; ++k) {
    BitMatrix m = oracle::random_bits(r, static_cast<std::size_t>(gen::uniform(r, 2, 120)),
                                      static_cast<std::size_t>(gen::uniform(r, 1, 120)), 0.2);
    const std::size_t before = gf2::rank(m);
    for (int op = 0; op < 20; ++op) {
      const std::size_t a = static_cast<std::size_t>(gen::uniform(r, 0, static_cast<int>(m.rows()) - 1));
      std::size_t b = static_cast<std::size_t>(gen::uniform(r, 0, static_cast<int>(m.rows()) - 1));
      if (a == b) b = (b + 1) % m.rows();
      if (gen::uniform(r, 0, 1)) m.swap_rows(a, b);
      else m.add_row(a, b);
    }
    EXPECT_EQ(gf2::rank(m), before);
  }
}
