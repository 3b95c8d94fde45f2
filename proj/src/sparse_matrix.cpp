#include "sparsecode/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "sparsecode/errors.hpp"

namespace sparsecode {

namespace {

void check_shape(Index rows, Index cols) {
    if (rows < 0 || cols < 0) {
        throw InvalidMatrix("negative matrix dimension");
    }
}

}  // namespace

SparseMatrix::SparseMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), col_ptr_(static_cast<std::size_t>(cols) + 1, 0) {
    check_shape(rows, cols);
}

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> entries) {
    check_shape(rows, cols);
    for (const auto& t : entries) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
            throw InvalidMatrix("entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                                ") out of range");
        }
        if (!std::isfinite(t.value)) {
            throw InvalidMatrix("non-finite value at (" + std::to_string(t.row) + ", " +
                                std::to_string(t.col) + ")");
        }
        if (t.value == 0.0) {
            throw InvalidMatrix("explicit zero at (" + std::to_string(t.row) + ", " +
                                std::to_string(t.col) + ")");
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });

    SparseMatrix m(rows, cols);
    m.row_idx_.reserve(entries.size());
    m.values_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0 && entries[i].row == entries[i - 1].row && entries[i].col == entries[i - 1].col) {
            throw InvalidMatrix("duplicate entry (" + std::to_string(entries[i].row) + ", " +
                                std::to_string(entries[i].col) + ")");
        }
        m.row_idx_.push_back(entries[i].row);
        m.values_.push_back(entries[i].value);
        ++m.col_ptr_[static_cast<std::size_t>(entries[i].col) + 1];
    }
    for (Index j = 0; j < cols; ++j) {
        m.col_ptr_[j + 1] += m.col_ptr_[j];
    }
    return m;
}

SparseMatrix SparseMatrix::from_csc(Index rows, Index cols, std::vector<Index> col_ptr,
                                    std::vector<Index> row_idx, std::vector<double> values) {
    check_shape(rows, cols);
    if (col_ptr.size() != static_cast<std::size_t>(cols) + 1 || col_ptr.front() != 0 ||
        row_idx.size() != values.size() || col_ptr.back() != static_cast<Index>(values.size())) {
        throw InvalidMatrix("inconsistent CSC arrays");
    }
    for (Index j = 0; j < cols; ++j) {
        if (col_ptr[j + 1] < col_ptr[j]) {
            throw InvalidMatrix("column pointers must be nondecreasing");
        }
        for (Index p = col_ptr[j]; p < col_ptr[j + 1]; ++p) {
            if (row_idx[p] < 0 || row_idx[p] >= rows) {
                throw InvalidMatrix("row index out of range in column " + std::to_string(j));
            }
            if (p > col_ptr[j] && row_idx[p] <= row_idx[p - 1]) {
                throw InvalidMatrix("unsorted or duplicate rows in column " + std::to_string(j));
            }
            if (!std::isfinite(values[p]) || values[p] == 0.0) {
                throw InvalidMatrix("stored values must be finite and nonzero");
            }
        }
    }
    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.col_ptr_ = std::move(col_ptr);
    m.row_idx_ = std::move(row_idx);
    m.values_ = std::move(values);
    return m;
}

std::span<const Index> SparseMatrix::col_rows(Index j) const {
    return std::span<const Index>(row_idx_).subspan(col_ptr_.at(j), col_ptr_.at(j + 1) - col_ptr_[j]);
}

std::span<const double> SparseMatrix::col_values(Index j) const {
    return std::span<const double>(values_).subspan(col_ptr_.at(j), col_ptr_.at(j + 1) - col_ptr_[j]);
}

SparseMatrix SparseMatrix::column_range(Index first, Index last) const {
    if (first < 0 || last > cols_ || first > last) {
        throw DimensionError("column range out of bounds");
    }
    SparseMatrix out(rows_, last - first);
    const Index begin = col_ptr_[first];
    const Index end = col_ptr_[last];
    out.row_idx_.assign(row_idx_.begin() + begin, row_idx_.begin() + end);
    out.values_.assign(values_.begin() + begin, values_.begin() + end);
    for (Index j = first; j <= last; ++j) {
        out.col_ptr_[j - first] = col_ptr_[j] - begin;
    }
    return out;
}

std::vector<Triplet> SparseMatrix::triplets() const {
    std::vector<Triplet> out;
    out.reserve(values_.size());
    for (Index j = 0; j < cols_; ++j) {
        for (Index p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) {
            out.push_back({row_idx_[p], j, values_[p]});
        }
    }
    return out;
}

std::vector<Index> SparseMatrix::row_counts() const {
    std::vector<Index> counts(static_cast<std::size_t>(rows_), 0);
    for (Index r : row_idx_) {
        ++counts[r];
    }
    return counts;
}

Eigen::MatrixXd SparseMatrix::to_dense() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
    for (Index j = 0; j < cols_; ++j) {
        for (Index p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) {
            d(row_idx_[p], j) = values_[p];
        }
    }
    return d;
}

Index BlockPartition::max_width() const {
    Index w = 0;
    for (int q = 0; q < blocks(); ++q) {
        w = std::max(w, width(q));
    }
    return w;
}

BlockPartition partition_columns(Index cols, int k) {
    if (k < 1 || k > cols) {
        throw InvalidPartition("cannot split " + std::to_string(cols) + " columns into " +
                               std::to_string(k) + " blocks");
    }
    BlockPartition p;
    p.source_cols = cols;
    p.boundaries.reserve(static_cast<std::size_t>(k) + 1);
    p.boundaries.push_back(0);
    const Index base = cols / k;
    const Index extra = cols % k;
    for (int q = 0; q < k; ++q) {
        p.boundaries.push_back(p.boundaries.back() + base + (q < extra ? 1 : 0));
    }
    return p;
}

BlockPartition partition_columns(const SparseMatrix& m, int k) {
    return partition_columns(m.cols(), k);
}

SparseMatrix column_block(const SparseMatrix& m, const BlockPartition& partition, int q) {
    if (partition.source_cols != m.cols()) {
        throw DimensionError("partition does not match matrix column count");
    }
    if (q < 0 || q >= partition.blocks()) {
        throw DimensionError("block index " + std::to_string(q) + " out of range");
    }
    return m.column_range(partition.boundaries[q], partition.boundaries[q + 1]);
}

Eigen::VectorXd spmv_t(const SparseMatrix& m, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != m.rows()) {
        throw DimensionError("spmv_t: vector length " + std::to_string(x.size()) +
                             " does not match " + std::to_string(m.rows()) + " rows");
    }
    Eigen::VectorXd y(m.cols());
    const auto ptr = m.col_ptr();
    const auto idx = m.row_indices();
    const auto val = m.values();
    for (Index j = 0; j < m.cols(); ++j) {
        double acc = 0.0;
        for (Index p = ptr[j]; p < ptr[j + 1]; ++p) {
            acc += val[p] * x[idx[p]];
        }
        y[j] = acc;
    }
    return y;
}

Eigen::MatrixXd spmm_t(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows()) {
        throw DimensionError("spmm_t: row counts differ (" + std::to_string(a.rows()) + " vs " +
                             std::to_string(b.rows()) + ")");
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.cols(), b.cols());
    // Scatter each column of b into a dense work vector, then dot against a's columns.
    std::vector<double> work(static_cast<std::size_t>(a.rows()), 0.0);
    for (Index j = 0; j < b.cols(); ++j) {
        const auto brows = b.col_rows(j);
        const auto bvals = b.col_values(j);
        if (brows.empty()) {
            continue;
        }
        for (std::size_t p = 0; p < brows.size(); ++p) {
            work[brows[p]] = bvals[p];
        }
        for (Index i = 0; i < a.cols(); ++i) {
            const auto arows = a.col_rows(i);
            const auto avals = a.col_values(i);
            double acc = 0.0;
            for (std::size_t p = 0; p < arows.size(); ++p) {
                acc += avals[p] * work[arows[p]];
            }
            out(i, j) = acc;
        }
        for (Index r : brows) {
            work[r] = 0.0;
        }
    }
    return out;
}

std::int64_t spmm_t_flops(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows()) {
        throw DimensionError("spmm_t_flops: row counts differ");
    }
    const auto ra = a.row_counts();
    const auto rb = b.row_counts();
    std::int64_t total = 0;
    for (std::size_t r = 0; r < ra.size(); ++r) {
        total += ra[r] * rb[r];
    }
    return 2 * total;
}

std::int64_t flop_estimate(std::int64_t nnz, std::int64_t result_cols) {
    return 2 * nnz * result_cols;
}

double expected_coded_nnz(double rows, double cols, double k, double density, double weight) {
    return rows * cols / k * density * weight;
}

SparseMatrix random_sparse(Index rows, Index cols, double density, std::uint64_t seed) {
    check_shape(rows, cols);
    if (!(density >= 0.0 && density <= 1.0)) {
        throw InvalidMatrix("density must lie in [0, 1]");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> value(0.0, 1.0);
    std::vector<Index> col_ptr(static_cast<std::size_t>(cols) + 1, 0);
    std::vector<Index> row_idx;
    std::vector<double> values;
    const Index total = rows * cols;
    if (density > 0.0 && total > 0) {
        row_idx.reserve(static_cast<std::size_t>(static_cast<double>(total) * density * 1.05) + 16);
        values.reserve(row_idx.capacity());
        // Skipping by geometric gaps is equivalent to an independent Bernoulli mask per entry.
        Index pos = -1;
        if (density < 1.0) {
            std::geometric_distribution<Index> gap(density);
            pos += gap(rng) + 1;
        } else {
            pos = 0;
        }
        while (pos < total) {
            const Index j = pos / rows;
            row_idx.push_back(pos % rows);
            double v = 0.0;
            while (v == 0.0) {
                v = value(rng);
            }
            values.push_back(v);
            ++col_ptr[j + 1];
            if (density < 1.0) {
                std::geometric_distribution<Index> gap(density);
                pos += gap(rng) + 1;
            } else {
                ++pos;
            }
        }
    }
    for (Index j = 0; j < cols; ++j) {
        col_ptr[j + 1] += col_ptr[j];
    }
    return SparseMatrix::from_csc(rows, cols, std::move(col_ptr), std::move(row_idx),
                                  std::move(values));
}

SparseMatrix read_matrix_market(std::istream& in) {
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError("empty input", 1);
    }
    ++line_no;
    {
        std::istringstream header(line);
        std::string banner, object, format, field, symmetry;
        header >> banner >> object >> format >> field >> symmetry;
        auto lower = [](std::string s) {
            std::transform(s.begin(), s.end(), s.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            return s;
        };
        if (banner != "%%MatrixMarket" || lower(object) != "matrix" ||
            lower(format) != "coordinate" || lower(field) != "real" ||
            lower(symmetry) != "general") {
            throw ParseError("expected '%%MatrixMarket matrix coordinate real general' header",
                             line_no);
        }
    }
    // Skip comments up to the size line.
    Index rows = 0, cols = 0, entries = 0;
    for (;;) {
        if (!std::getline(in, line)) {
            throw ParseError("missing size line", line_no + 1);
        }
        ++line_no;
        if (line.empty() || line[0] == '%') {
            continue;
        }
        std::istringstream size_line(line);
        if (!(size_line >> rows >> cols >> entries) || rows < 0 || cols < 0 || entries < 0) {
            throw ParseError("malformed size line", line_no);
        }
        break;
    }
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(entries));
    while (static_cast<Index>(triplets.size()) < entries) {
        if (!std::getline(in, line)) {
            throw ParseError("expected " + std::to_string(entries) + " entries, found " +
                                 std::to_string(triplets.size()),
                             line_no + 1);
        }
        ++line_no;
        if (line.empty() || line[0] == '%') {
            continue;
        }
        std::istringstream entry(line);
        Index r = 0, c = 0;
        double v = 0.0;
        if (!(entry >> r >> c >> v)) {
            throw ParseError("malformed entry", line_no);
        }
        if (r < 1 || r > rows || c < 1 || c > cols) {
            throw ParseError("index out of range", line_no);
        }
        if (v == 0.0) {
            throw ParseError("explicit zero entry", line_no);
        }
        if (!std::isfinite(v)) {
            throw ParseError("non-finite value", line_no);
        }
        triplets.push_back({r - 1, c - 1, v});
    }
    try {
        return SparseMatrix::from_triplets(rows, cols, std::move(triplets));
    } catch (const InvalidMatrix& e) {
        throw ParseError(e.what(), 0);
    }
}

SparseMatrix read_matrix_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path, 0);
    }
    return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& m) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    for (Index j = 0; j < m.cols(); ++j) {
        const auto rows = m.col_rows(j);
        const auto vals = m.col_values(j);
        for (std::size_t p = 0; p < rows.size(); ++p) {
            out << rows[p] + 1 << ' ' << j + 1 << ' ' << vals[p] << '\n';
        }
    }
    out.precision(old_precision);
}

void write_matrix_market_file(const std::string& path, const SparseMatrix& m) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path);
    }
    write_matrix_market(out, m);
}

}  // namespace sparsecode
