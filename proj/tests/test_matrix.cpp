#include <gtest/gtest.h>

#include <vector>

#include "oracles.hpp"
#include "rle/matrix.hpp"
#include "rle/rng.hpp"

using rle::DenseMatrix;
using rle::SparseMatrix;

namespace {

SparseMatrix path_graph_transition() {
  // 0 - 1 - 2, symmetrized and row-normalized by hand
  return SparseMatrix::from_triplets(
      3, 3, {{0, 1, 1.0}, {1, 0, 0.5}, {1, 2, 0.5}, {2, 1, 1.0}});
}

SparseMatrix identity(std::size_t n) {
  std::vector<std::tuple<std::size_t, std::size_t, double>> trips;
  for (std::size_t i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);
  return SparseMatrix::from_triplets(n, n, std::move(trips));
}

}  // namespace

TEST(SpMM, IdentityLeavesMatrixUnchanged) {
  rle::Rng rng(42);
  const SparseMatrix x = oracle::random_sparse(3, 3, 0.6, rng);
  const SparseMatrix prod = rle::spmm(identity(3), x);
  prod.validate();
  ASSERT_EQ(prod.col_indices, x.col_indices);
  ASSERT_EQ(prod.row_offsets, x.row_offsets);
  for (std::size_t k = 0; k < x.values.size(); ++k) {
    EXPECT_DOUBLE_EQ(prod.values[k], x.values[k]);
  }
}

TEST(SpMM, PathGraphSquared) {
  const SparseMatrix a = path_graph_transition();
  const SparseMatrix a2 = rle::spmm(a, a);
  a2.validate();
  const double expected[3][3] = {{0.5, 0.0, 0.5}, {0.0, 1.0, 0.0}, {0.5, 0.0, 0.5}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_NEAR(a2.at(i, j), expected[i][j], 1e-15) << i << "," << j;
    }
  }
  // independent confirmation by the dense oracle
  const DenseMatrix ref = oracle::dense_matmul(a.to_dense(), a.to_dense());
  EXPECT_LE(oracle::max_abs_diff(a2.to_dense(), ref), 1e-12);
}

TEST(SpMM, ZeroMatrixAnnihilates) {
  rle::Rng rng(7);
  const SparseMatrix x = oracle::random_sparse(4, 4, 0.5, rng);
  const SparseMatrix zero(4, 4);
  const SparseMatrix prod = rle::spmm(zero, x);
  EXPECT_EQ(prod.nnz(), 0u);
  EXPECT_EQ(prod.n_rows, 4u);
  EXPECT_EQ(prod.n_cols, 4u);
}

TEST(SpMM, DimensionMismatchThrows) {
  const SparseMatrix a(2, 3);
  const SparseMatrix b(4, 2);
  EXPECT_THROW(rle::spmm(a, b), rle::ConfigError);
  EXPECT_THROW(rle::spmm_nnz(a, b), rle::ConfigError);
}

TEST(SpMM, MatchesDenseOracleOnRandomInstances) {
  rle::Rng rng(123);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.next_below(8);
    const std::size_t m = 1 + rng.next_below(8);
    const std::size_t p = 1 + rng.next_below(8);
    const SparseMatrix a = oracle::random_sparse(n, m, 0.15 + rng.next_double() * 0.6, rng);
    const SparseMatrix b = oracle::random_sparse(m, p, 0.15 + rng.next_double() * 0.6, rng);
    const SparseMatrix c = rle::spmm(a, b);
    c.validate();
    EXPECT_LE(oracle::max_abs_diff(c.to_dense(),
                                   oracle::dense_matmul(a.to_dense(), b.to_dense())),
              1e-9);
    EXPECT_EQ(rle::spmm_nnz(a, b), c.nnz());  // positive inputs never cancel
  }
}

TEST(SpMM, WorkerCountDoesNotChangeResult) {
  rle::Rng rng(321);
  const SparseMatrix a = oracle::random_sparse(9, 7, 0.4, rng);
  const SparseMatrix b = oracle::random_sparse(7, 11, 0.4, rng);
  const SparseMatrix c1 = rle::spmm(a, b, 1);
  const SparseMatrix c4 = rle::spmm(a, b, 4);
  ASSERT_EQ(c1.col_indices, c4.col_indices);
  ASSERT_EQ(c1.row_offsets, c4.row_offsets);
  for (std::size_t k = 0; k < c1.values.size(); ++k) {
    EXPECT_DOUBLE_EQ(c1.values[k], c4.values[k]);
  }
}

TEST(SpMM, AssociativityWithinTolerance) {
  rle::Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.next_below(5);
    const SparseMatrix a = oracle::random_sparse(n, n, 0.5, rng);
    const SparseMatrix b = oracle::random_sparse(n, n, 0.5, rng);
    const SparseMatrix c = oracle::random_sparse(n, n, 0.5, rng);
    const SparseMatrix left = rle::spmm(rle::spmm(a, b), c);
    const SparseMatrix right = rle::spmm(a, rle::spmm(b, c));
    EXPECT_LE(oracle::max_abs_diff(left.to_dense(), right.to_dense()), 1e-8);
  }
}

TEST(SpDenseMM, OneHotSelectsRow) {
  rle::Rng rng(5);
  const DenseMatrix u = oracle::random_dense(4, 3, rng);
  const SparseMatrix e = SparseMatrix::from_triplets(1, 4, {{0, 2, 1.0}});
  const DenseMatrix row = rle::sp_dense_mm(e, u);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(row.at(0, j), u.at(2, j));
}

TEST(SpDenseMM, MidpointRow) {
  const SparseMatrix p = SparseMatrix::from_triplets(1, 2, {{0, 0, 0.5}, {0, 1, 0.5}});
  DenseMatrix u(2, 2);
  u.at(0, 0) = 2.0;
  u.at(1, 1) = 2.0;
  const DenseMatrix d = rle::sp_dense_mm(p, u);
  EXPECT_DOUBLE_EQ(d.at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(d.at(0, 1), 1.0);
}

TEST(SpDenseMM, MatchesDenseOracle) {
  rle::Rng rng(17);
  const SparseMatrix a = oracle::random_sparse(5, 4, 0.5, rng);
  const DenseMatrix b = oracle::random_dense(4, 3, rng);
  const DenseMatrix c = rle::sp_dense_mm(a, b);
  EXPECT_LE(oracle::max_abs_diff(c, oracle::dense_matmul(a.to_dense(), b)), 1e-9);
  EXPECT_THROW(rle::sp_dense_mm(a, oracle::random_dense(5, 3, rng)), rle::ConfigError);
}

TEST(SpDenseTransposedMM, MatchesDenseOracle) {
  rle::Rng rng(18);
  const SparseMatrix a = oracle::random_sparse(6, 4, 0.5, rng);
  const DenseMatrix y = oracle::random_dense(6, 3, rng);
  const DenseMatrix at = [&] {
    DenseMatrix t(4, 6);
    const DenseMatrix ad = a.to_dense();
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 4; ++j) t.at(j, i) = ad.at(i, j);
    }
    return t;
  }();
  EXPECT_LE(oracle::max_abs_diff(rle::spt_dense_mm(a, y), oracle::dense_matmul(at, y)), 1e-12);
}

TEST(AddScaled, IdentityCoefficientsLeaveInputUnchanged) {
  rle::Rng rng(3);
  const SparseMatrix a = oracle::random_sparse(4, 5, 0.5, rng);
  const SparseMatrix b = oracle::random_sparse(4, 5, 0.5, rng);
  const SparseMatrix c = rle::add_scaled(a, 1.0, b, 0.0);
  ASSERT_EQ(c.col_indices, a.col_indices);
  for (std::size_t k = 0; k < a.values.size(); ++k) EXPECT_DOUBLE_EQ(c.values[k], a.values[k]);
}

TEST(AddScaled, DisjointSupportsUnion) {
  const SparseMatrix a = SparseMatrix::from_triplets(1, 4, {{0, 0, 2.0}, {0, 2, 4.0}});
  const SparseMatrix b = SparseMatrix::from_triplets(1, 4, {{0, 1, 10.0}, {0, 3, 20.0}});
  const SparseMatrix c = rle::add_scaled(a, 0.3, b, 0.7);
  c.validate();
  EXPECT_EQ(c.nnz(), 4u);
  EXPECT_DOUBLE_EQ(c.at(0, 0), 0.6);
  EXPECT_DOUBLE_EQ(c.at(0, 1), 7.0);
  EXPECT_DOUBLE_EQ(c.at(0, 2), 1.2);
  EXPECT_DOUBLE_EQ(c.at(0, 3), 14.0);
}

TEST(AddScaled, ExactCancellationDropsEverything) {
  rle::Rng rng(11);
  const SparseMatrix a = oracle::random_sparse(5, 5, 0.4, rng);
  const SparseMatrix c = rle::add_scaled(a, 1.0, a, -1.0);
  EXPECT_EQ(c.nnz(), 0u);
}

TEST(AddScaled, CommutativeUnderSwappedArguments) {
  rle::Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const SparseMatrix a = oracle::random_sparse(4, 6, 0.5, rng);
    const SparseMatrix b = oracle::random_sparse(4, 6, 0.5, rng);
    const double alpha = rng.next_double();
    const double beta = rng.next_double();
    const SparseMatrix ab = rle::add_scaled(a, alpha, b, beta);
    const SparseMatrix ba = rle::add_scaled(b, beta, a, alpha);
    ASSERT_EQ(ab.col_indices, ba.col_indices);
    for (std::size_t k = 0; k < ab.values.size(); ++k) {
      EXPECT_NEAR(ab.values[k], ba.values[k], 1e-15);
    }
  }
}

TEST(AddScaled, ShapeMismatchThrows) {
  EXPECT_THROW(rle::add_scaled(SparseMatrix(2, 3), 1.0, SparseMatrix(3, 2), 1.0),
               rle::ConfigError);
}

TEST(RowNormalize, SplitsEqualWeights) {
  const SparseMatrix a = SparseMatrix::from_triplets(1, 3, {{0, 0, 2.0}, {0, 1, 2.0}});
  const auto norm = rle::row_normalize(a);
  EXPECT_TRUE(norm.dangling_rows.empty());
  EXPECT_DOUBLE_EQ(norm.matrix.at(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(norm.matrix.at(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(norm.matrix.at(0, 2), 0.0);
}

TEST(RowNormalize, EmptyRowReportedAsDangling) {
  const SparseMatrix a = SparseMatrix::from_triplets(3, 3, {{0, 1, 1.0}, {2, 0, 4.0}});
  const auto norm = rle::row_normalize(a);
  ASSERT_EQ(norm.dangling_rows, (std::vector<std::size_t>{1}));
  EXPECT_EQ(norm.matrix.row_cols(1).size(), 0u);
}

TEST(RowNormalize, RandomRowsSumToOne) {
  rle::Rng rng(29);
  const SparseMatrix a = oracle::random_sparse(6, 6, 0.5, rng);
  const auto norm = rle::row_normalize(a);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto vals = norm.matrix.row_vals(i);
    if (vals.empty()) continue;
    double sum = 0.0;
    for (const double v : vals) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(RowNormalize, Idempotent) {
  rle::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const SparseMatrix a = oracle::random_sparse(5, 5, 0.5, rng);
    const SparseMatrix once = rle::row_normalize(a).matrix;
    const SparseMatrix twice = rle::row_normalize(once).matrix;
    EXPECT_LE(oracle::max_abs_diff(once.to_dense(), twice.to_dense()), 1e-12);
  }
}

TEST(RowNormalize, NegativeEntryThrows) {
  const SparseMatrix a = SparseMatrix::from_triplets(1, 2, {{0, 0, -1.0}});
  EXPECT_THROW(rle::row_normalize(a), rle::DataError);
}

TEST(Cosine, KnownValues) {
  const std::vector<double> x{1.0, 2.0, 3.0};
  EXPECT_DOUBLE_EQ(rle::cosine(x, x), 1.0);
  EXPECT_DOUBLE_EQ(rle::cosine(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0}),
                   0.0);
  // 32 / (sqrt(14) * sqrt(77))
  EXPECT_NEAR(rle::cosine(x, std::vector<double>{4.0, 5.0, 6.0}), 0.9746318461970762, 1e-12);
}

TEST(Cosine, ZeroNormConvention) {
  const std::vector<double> zero{0.0, 0.0};
  const std::vector<double> x{1.0, 2.0};
  EXPECT_DOUBLE_EQ(rle::cosine(zero, x), 0.0);
  EXPECT_DOUBLE_EQ(rle::cosine(x, zero), 0.0);
  EXPECT_THROW(rle::cosine(x, std::vector<double>{1.0}), rle::ConfigError);
}

TEST(FromTriplets, MergesDuplicatesAndValidates) {
  const SparseMatrix m =
      SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {0, 0, 2.0}, {1, 1, 3.0}, {1, 0, -3.0}});
  m.validate();
  EXPECT_DOUBLE_EQ(m.at(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(m.at(1, 0), -3.0);
  EXPECT_THROW(SparseMatrix::from_triplets(1, 1, {{0, 1, 1.0}}), rle::ConfigError);
}
