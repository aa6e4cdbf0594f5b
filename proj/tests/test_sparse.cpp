#include <gtest/gtest.h>

#include <random>

#include "gradreg/field.hpp"
#include "gradreg/sparse.hpp"
#include "helpers.hpp"

using namespace gradreg;

namespace {

template <class K>
SparseVector<K> from_dense(const std::vector<K>& d) {
  SparseVector<K> v;
  for (std::uint32_t i = 0; i < d.size(); ++i)
    if (!d[i].is_zero()) v.push_back({i, d[i]});
  return v;
}

}  // namespace

TEST(Sparse, AxpyDropsCancellations) {
  using K = Rational;
  SparseVector<K> x{{0, K(1)}, {3, K(2)}}, y{{3, K(1)}, {5, K(4)}};
  auto z = axpy(x, K(-2), y);
  ASSERT_EQ(z.size(), 2u);
  EXPECT_EQ(z[0].idx, 0u);
  EXPECT_EQ(z[1].idx, 5u);
  EXPECT_EQ(z[1].val, K(-8));
}

TEST(Sparse, CanonicalizeMergesDuplicates) {
  auto v = canonicalize<Rational>({{4, Rational(1)}, {1, Rational(2)}, {4, Rational(-1)}, {1, Rational(1)}});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].idx, 1u);
  EXPECT_EQ(v[0].val, Rational(3));
}

// Echelon and row_reduce ranks agree with dense elimination on random matrices.
TEST(Sparse, RankMatchesDenseOracle) {
  PrimeField f(7);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + trial % 7, cols = 1 + (trial * 3) % 8;
    std::vector<std::vector<ModP>> dense(rows, std::vector<ModP>(cols, f.from_int(0)));
    SparseMatrix<ModP> m(rows, cols);
    Echelon<ModP> e;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c)
        if (rng() % 3 == 0) {
          dense[r][c] = f.from_int(rng() % 7);
          if (!dense[r][c].is_zero()) m.set(r, c, dense[r][c]);
        }
      e.insert(from_dense(dense[r]));
    }
    auto want = testing_helpers::dense_rank(dense);
    EXPECT_EQ(e.rank(), want);
    EXPECT_EQ(rank_of(m), want);
  }
}

TEST(Sparse, KernelBasisIsAKernel) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    int rows = 2 + trial % 4, cols = 3 + trial % 5;
    SparseMatrix<Rational> m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (rng() % 2) m.set(r, c, Rational(static_cast<long>(rng() % 5) - 2));
    auto ker = kernel_basis(m, Rational(1));
    EXPECT_EQ(ker.size() + rank_of(m), static_cast<std::size_t>(cols));
    for (const auto& v : ker)
      for (int r = 0; r < rows; ++r) {
        Rational s(0);
        for (const auto& en : v) s += m.get(r, en.idx) * en.val;
        EXPECT_TRUE(s.is_zero());
      }
  }
}

TEST(Sparse, EchelonContains) {
  Echelon<Rational> e;
  e.insert({{0, Rational(1)}, {1, Rational(1)}});
  e.insert({{1, Rational(1)}, {2, Rational(1)}});
  EXPECT_TRUE(e.contains({{0, Rational(1)}, {2, Rational(-1)}}));
  EXPECT_FALSE(e.contains({{2, Rational(1)}}));
}
