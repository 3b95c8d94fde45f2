#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "sparsecode/errors.hpp"
#include "sparsecode/oracle.hpp"
#include "sparsecode/sparse_matrix.hpp"

using namespace sparsecode;

namespace {

SparseMatrix identity(Index n) {
    std::vector<Triplet> t;
    for (Index i = 0; i < n; ++i) {
        t.push_back({i, i, 1.0});
    }
    return SparseMatrix::from_triplets(n, n, t);
}

double rel_err(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
    const double scale = want.norm();
    return (got - want).norm() / (scale > 0.0 ? scale : 1.0);
}

}  // namespace

TEST(SparseMatrix, TripletsNormalizeToSortedCsc) {
    auto m = SparseMatrix::from_triplets(3, 2, {{2, 0, 1.5}, {0, 1, -2.0}, {0, 0, 3.0}});
    EXPECT_EQ(m.nnz(), 3);
    ASSERT_EQ(m.col_rows(0).size(), 2u);
    EXPECT_EQ(m.col_rows(0)[0], 0);
    EXPECT_EQ(m.col_rows(0)[1], 2);
    EXPECT_DOUBLE_EQ(m.col_values(1)[0], -2.0);
}

TEST(SparseMatrix, RejectsInvalidEntries) {
    EXPECT_THROW(SparseMatrix::from_triplets(2, 2, {{2, 0, 1.0}}), InvalidMatrix);
    EXPECT_THROW(SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {0, 0, 2.0}}), InvalidMatrix);
    EXPECT_THROW(SparseMatrix::from_triplets(2, 2, {{0, 0, 0.0}}), InvalidMatrix);
    EXPECT_THROW(SparseMatrix::from_triplets(2, 2, {{0, 0, NAN}}), InvalidMatrix);
}

TEST(SparseMatrix, ColumnRangeKeepsEntries) {
    const auto m = random_sparse(30, 20, 0.2, 5);
    const auto part = m.column_range(5, 12);
    EXPECT_EQ(part.cols(), 7);
    EXPECT_TRUE(part.to_dense().isApprox(m.to_dense().middleCols(5, 7)));
}

TEST(PartitionColumns, EvenSplit) {
    const auto p = partition_columns(Index{15000}, 6);
    ASSERT_EQ(p.blocks(), 6);
    for (int q = 0; q < 6; ++q) {
        EXPECT_EQ(p.width(q), 2500);
    }
}

TEST(PartitionColumns, IdentityAndRemainder) {
    const auto unit = partition_columns(Index{5}, 5);
    for (int q = 0; q < 5; ++q) {
        EXPECT_EQ(unit.width(q), 1);
    }
    const auto p = partition_columns(Index{10}, 3);
    EXPECT_EQ(p.width(0), 4);
    EXPECT_EQ(p.width(1), 3);
    EXPECT_EQ(p.width(2), 3);
    EXPECT_EQ(p.max_width(), 4);
}

TEST(PartitionColumns, TilesColumnsExactlyOnce) {
    for (Index cols = 1; cols <= 40; ++cols) {
        for (int k = 1; k <= cols; ++k) {
            const auto p = partition_columns(cols, k);
            EXPECT_EQ(p.offset(0), 0);
            EXPECT_EQ(p.boundaries.back(), cols);
            Index lo = cols, hi = 0;
            for (int q = 0; q < k; ++q) {
                EXPECT_EQ(p.offset(q) + p.width(q), p.boundaries[q + 1]);
                lo = std::min(lo, p.width(q));
                hi = std::max(hi, p.width(q));
                if (q > 0) {
                    EXPECT_LE(p.width(q), p.width(q - 1));
                }
            }
            EXPECT_LE(hi - lo, 1);
        }
    }
}

TEST(PartitionColumns, RejectsOutOfRange) {
    EXPECT_THROW(partition_columns(Index{4}, 0), InvalidPartition);
    EXPECT_THROW(partition_columns(Index{4}, 5), InvalidPartition);
}

TEST(Spmv, IdentityAndZero) {
    Eigen::VectorXd x(3);
    x << 1, 2, 3;
    EXPECT_TRUE(spmv_t(identity(3), x).isApprox(x));
    const SparseMatrix zero(3, 4);
    EXPECT_TRUE(spmv_t(zero, x).isZero());
    EXPECT_EQ(spmv_t(zero, x).size(), 4);
}

TEST(Spmv, DimensionMismatch) {
    Eigen::VectorXd x(2);
    x << 1, 2;
    EXPECT_THROW(spmv_t(identity(3), x), DimensionError);
}

TEST(Spmm, IdentityAndZero) {
    EXPECT_TRUE(spmm_t(identity(4), identity(4)).isIdentity());
    EXPECT_TRUE(spmm_t(SparseMatrix(4, 3), identity(4)).isZero());
    EXPECT_THROW(spmm_t(identity(3), identity(4)), DimensionError);
}

TEST(Kernels, AgreeWithDenseOracle) {
    std::mt19937_64 rng(11);
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const Index t = 1 + static_cast<Index>(rng() % 100);
        const Index r = 1 + static_cast<Index>(rng() % 100);
        const Index w = 1 + static_cast<Index>(rng() % 100);
        const double density = 0.02 + 0.3 * static_cast<double>(rng() % 100) / 100.0;
        const auto a = random_sparse(t, r, density, 2 * trial);
        const auto b = random_sparse(t, w, density, 2 * trial + 1);
        Eigen::VectorXd x = Eigen::VectorXd::Random(t);
        EXPECT_LT(rel_err(spmv_t(a, x), oracle::dense_reference(a, x)), 1e-12);
        EXPECT_LT(rel_err(spmm_t(a, b), oracle::dense_reference(a, b)), 1e-12);
    }
}

TEST(Flops, Formula) {
    // psi = 0.05 over m = 1000 entries, one result column
    EXPECT_EQ(flop_estimate(50, 1), 100);
    EXPECT_EQ(flop_estimate(0, 5), 0);
    EXPECT_EQ(flop_estimate(10, 3), 60);
}

TEST(Flops, SparseProductCount) {
    const auto a = random_sparse(50, 10, 0.2, 1);
    const auto b = random_sparse(50, 8, 0.2, 2);
    std::int64_t expect = 0;
    const auto ra = a.row_counts();
    const auto rb = b.row_counts();
    for (std::size_t r = 0; r < ra.size(); ++r) {
        expect += 2 * ra[r] * rb[r];
    }
    EXPECT_EQ(spmm_t_flops(a, b), expect);
}

TEST(ExpectedNnz, CommunicationExample) {
    const double a2 = expected_coded_nnz(20000, 15000, 6, 0.01, 2);
    const double b3 = expected_coded_nnz(20000, 12000, 6, 0.01, 3);
    EXPECT_DOUBLE_EQ(a2, 1.0e6);
    EXPECT_DOUBLE_EQ(a2 + b3, 2.2e6);
    const double a4 = expected_coded_nnz(20000, 15000, 6, 0.01, 4);
    const double b2 = expected_coded_nnz(20000, 12000, 6, 0.01, 2);
    EXPECT_DOUBLE_EQ(a4 + b2, 2.8e6);
    EXPECT_DOUBLE_EQ(expected_coded_nnz(40, 30, 5, 1.0, 5), 1200.0);
}

TEST(ExpectedNnz, MonotoneInEveryArgument) {
    const double base = expected_coded_nnz(100, 80, 4, 0.1, 2);
    EXPECT_GE(expected_coded_nnz(101, 80, 4, 0.1, 2), base);
    EXPECT_GE(expected_coded_nnz(100, 81, 4, 0.1, 2), base);
    EXPECT_GE(expected_coded_nnz(100, 80, 4, 0.2, 2), base);
    EXPECT_GE(expected_coded_nnz(100, 80, 4, 0.1, 3), base);
    EXPECT_GE(flop_estimate(11, 2), flop_estimate(10, 2));
    EXPECT_GE(flop_estimate(10, 3), flop_estimate(10, 2));
}

TEST(RandomSparse, DensityConcentration) {
    const auto m = random_sparse(2000, 1500, 0.01, 3);
    EXPECT_NEAR(static_cast<double>(m.nnz()), 30000.0, 0.03 * 30000.0);
    EXPECT_EQ(m, random_sparse(2000, 1500, 0.01, 3));
    EXPECT_NE(m, random_sparse(2000, 1500, 0.01, 4));
}

TEST(MatrixMarket, RoundTrip) {
    const auto m = random_sparse(17, 9, 0.3, 8);
    std::stringstream ss;
    write_matrix_market(ss, m);
    EXPECT_EQ(read_matrix_market(ss), m);
}

TEST(MatrixMarket, OneBasedIndices) {
    std::istringstream in("%%MatrixMarket matrix coordinate real general\n% c\n2 3 2\n1 1 4.0\n2 3 -1\n");
    const auto m = read_matrix_market(in);
    EXPECT_EQ(m.rows(), 2);
    EXPECT_EQ(m.cols(), 3);
    EXPECT_DOUBLE_EQ(m.to_dense()(0, 0), 4.0);
    EXPECT_DOUBLE_EQ(m.to_dense()(1, 2), -1.0);
}

TEST(MatrixMarket, MalformedHeader) {
    std::istringstream in("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
    EXPECT_THROW(read_matrix_market(in), ParseError);
}

TEST(MatrixMarket, ExplicitZeroCarriesLine) {
    std::istringstream in("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n2 2 0\n");
    try {
        read_matrix_market(in);
        FAIL() << "explicit zero accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4);
    }
}

TEST(MatrixMarket, DuplicateEntryRejected) {
    std::istringstream in("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n1 1 2.0\n");
    EXPECT_THROW(read_matrix_market(in), ParseError);
}
