#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sparsecode {

using Index = std::int64_t;

struct Triplet {
    Index row;
    Index col;
    double value;
};

/// Column-compressed real sparse matrix.
///
/// Every stored entry is a finite nonzero; (row, col) pairs are unique and
/// rows are sorted within each column. nnz() is the exact stored count, which
/// the cost model relies on.
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Empty (all-zero) matrix of the given shape.
    SparseMatrix(Index rows, Index cols);

    /// Builds from an unordered coordinate list. Throws InvalidMatrix on
    /// out-of-range indices, duplicate pairs, explicit zeros or non-finite values.
    static SparseMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> entries);

    /// Builds directly from CSC arrays; validated the same way as from_triplets.
    static SparseMatrix from_csc(Index rows, Index cols, std::vector<Index> col_ptr,
                                 std::vector<Index> row_idx, std::vector<double> values);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    Index nnz() const noexcept { return static_cast<Index>(values_.size()); }

    std::span<const Index> col_ptr() const noexcept { return col_ptr_; }
    std::span<const Index> row_indices() const noexcept { return row_idx_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Row indices / values of column j.
    std::span<const Index> col_rows(Index j) const;
    std::span<const double> col_values(Index j) const;

    /// Columns [first, last) as a new matrix.
    SparseMatrix column_range(Index first, Index last) const;

    std::vector<Triplet> triplets() const;

    /// Nonzero count of every row.
    std::vector<Index> row_counts() const;

    Eigen::MatrixXd to_dense() const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Index> col_ptr_{0};
    std::vector<Index> row_idx_;
    std::vector<double> values_;
};

/// Contiguous column-block split of a matrix with `source_cols` columns.
struct BlockPartition {
    Index source_cols = 0;
    std::vector<Index> boundaries;  // k + 1 offsets

    int blocks() const noexcept { return static_cast<int>(boundaries.size()) - 1; }
    Index width(int q) const { return boundaries.at(q + 1) - boundaries.at(q); }
    Index offset(int q) const { return boundaries.at(q); }
    Index max_width() const;
};

/// Splits `cols` columns into k blocks, widths floor/ceil of cols/k, wider first.
BlockPartition partition_columns(Index cols, int k);
BlockPartition partition_columns(const SparseMatrix& m, int k);

/// Block q of `m` under `partition`.
SparseMatrix column_block(const SparseMatrix& m, const BlockPartition& partition, int q);

/// m^T x.
Eigen::VectorXd spmv_t(const SparseMatrix& m, const Eigen::Ref<const Eigen::VectorXd>& x);

/// a^T b as a dense a.cols() x b.cols() matrix.
Eigen::MatrixXd spmm_t(const SparseMatrix& a, const SparseMatrix& b);

/// Multiply-add count of the sparse-sparse product a^T b: 2 * sum_r nnz(a_r) * nnz(b_r).
std::int64_t spmm_t_flops(const SparseMatrix& a, const SparseMatrix& b);

/// 2 * nnz * result_cols.
std::int64_t flop_estimate(std::int64_t nnz, std::int64_t result_cols);

/// Expected nonzeros of one coded block: (rows * cols / k) * density * weight.
double expected_coded_nnz(double rows, double cols, double k, double density, double weight);

/// i.i.d. Bernoulli(density) support with standard-normal values, seeded.
SparseMatrix random_sparse(Index rows, Index cols, double density, std::uint64_t seed);

/// Matrix Market `coordinate real general` I/O. Indices are 1-based on disk.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market_file(const std::string& path);
void write_matrix_market(std::ostream& out, const SparseMatrix& m);
void write_matrix_market_file(const std::string& path, const SparseMatrix& m);

}  // namespace sparsecode
