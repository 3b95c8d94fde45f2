#include "sparsecode/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "sparsecode/errors.hpp"

namespace sparsecode {

namespace {

void check_subset(const EncodingPlan& plan, const std::vector<int>& subset) {
    const int k = plan.unknowns();
    if (static_cast<int>(subset.size()) != k) {
        throw DimensionError("decoding needs exactly " + std::to_string(k) + " workers, got " +
                             std::to_string(subset.size()));
    }
    std::set<int> seen;
    for (int w : subset) {
        if (w < 0 || w >= plan.n) {
            throw DimensionError("worker id " + std::to_string(w) + " out of range");
        }
        if (!seen.insert(w).second) {
            throw DimensionError("worker id " + std::to_string(w) + " repeated in subset");
        }
    }
}

Eigen::PartialPivLU<Eigen::MatrixXd> factor_or_throw(const DecodingSystem& system, double tol) {
    if (!is_decodable(system, tol)) {
        std::string ids;
        for (int w : system.subset) {
            ids += (ids.empty() ? "" : ",") + std::to_string(w);
        }
        throw DecodeFailure("decoding system for workers {" + ids + "} is singular", system.subset);
    }
    return Eigen::PartialPivLU<Eigen::MatrixXd>(system.matrix);
}

}  // namespace

DecodingSystem assemble(const EncodingPlan& plan, const std::vector<int>& subset) {
    check_subset(plan, subset);
    const int k = plan.unknowns();
    DecodingSystem sys;
    sys.subset = subset;
    sys.matrix = Eigen::MatrixXd::Zero(k, k);
    sys.unknowns.reserve(static_cast<std::size_t>(k));
    for (int u = 0; u < plan.k_a; ++u) {
        for (int v = 0; v < plan.k_b; ++v) {
            sys.unknowns.emplace_back(u, v);
        }
    }
    for (int r = 0; r < k; ++r) {
        const int w = subset[r];
        const auto& sa = plan.supports_a[w];
        const auto& ca = plan.coeffs_a[w];
        if (plan.is_matrix_vector()) {
            for (std::size_t t = 0; t < sa.size(); ++t) {
                sys.matrix(r, sa[t]) += ca[t];
            }
            continue;
        }
        const auto& sb = plan.supports_b[w];
        const auto& cb = plan.coeffs_b[w];
        for (std::size_t t = 0; t < sa.size(); ++t) {
            for (std::size_t q = 0; q < sb.size(); ++q) {
                sys.matrix(r, sa[t] * plan.k_b + sb[q]) += ca[t] * cb[q];
            }
        }
    }
    return sys;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
    if (m.size() == 0) {
        return Eigen::VectorXd();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues();
}

double condition_number(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("condition_number expects a square matrix");
    }
    if (!m.allFinite()) {
        throw DimensionError("condition_number expects finite entries");
    }
    const auto sv = singular_values(m);
    if (sv.size() == 0) {
        return 1.0;
    }
    const double smax = sv[0];
    const double smin = sv[sv.size() - 1];
    if (smin == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return smax / smin;
}

bool is_decodable(const DecodingSystem& system, double tol) {
    const auto sv = singular_values(system.matrix);
    if (sv.size() == 0) {
        return false;
    }
    return sv[sv.size() - 1] > tol * sv[0];
}

bool is_decodable(const EncodingPlan& plan, const std::vector<int>& subset, double tol) {
    return is_decodable(assemble(plan, subset), tol);
}

Eigen::VectorXd decode_mv(const std::vector<Eigen::VectorXd>& results, const EncodingPlan& plan,
                          const std::vector<int>& subset, const BlockPartition& partition_a,
                          double tol) {
    if (!plan.is_matrix_vector()) {
        throw InvalidPlan("decode_mv needs a matrix-vector plan");
    }
    if (results.size() != subset.size()) {
        throw DimensionError("one result per subset worker is required");
    }
    if (partition_a.blocks() != plan.k_a) {
        throw DimensionError("partition block count does not match k_a");
    }
    const auto sys = assemble(plan, subset);
    const Index width = partition_a.max_width();
    Eigen::MatrixXd rhs(static_cast<Index>(results.size()), width);
    for (std::size_t r = 0; r < results.size(); ++r) {
        if (results[r].size() != width) {
            throw DimensionError("result length does not match coded block width");
        }
        rhs.row(static_cast<Index>(r)) = results[r].transpose();
    }
    const auto lu = factor_or_throw(sys, tol);
    const Eigen::MatrixXd blocks = lu.solve(rhs);
    Eigen::VectorXd out(partition_a.source_cols);
    for (int q = 0; q < plan.k_a; ++q) {
        out.segment(partition_a.offset(q), partition_a.width(q)) =
            blocks.row(q).head(partition_a.width(q)).transpose();
    }
    return out;
}

Eigen::MatrixXd decode_mm(const std::vector<Eigen::MatrixXd>& results, const EncodingPlan& plan,
                          const std::vector<int>& subset, const BlockPartition& partition_a,
                          const BlockPartition& partition_b, double tol) {
    if (plan.is_matrix_vector()) {
        throw InvalidPlan("decode_mm needs a matrix-matrix plan");
    }
    if (results.size() != subset.size()) {
        throw DimensionError("one result per subset worker is required");
    }
    if (partition_a.blocks() != plan.k_a || partition_b.blocks() != plan.k_b) {
        throw DimensionError("partition block counts do not match the plan");
    }
    const auto sys = assemble(plan, subset);
    const Index wa = partition_a.max_width();
    const Index wb = partition_b.max_width();
    Eigen::MatrixXd rhs(static_cast<Index>(results.size()), wa * wb);
    for (std::size_t r = 0; r < results.size(); ++r) {
        if (results[r].rows() != wa || results[r].cols() != wb) {
            throw DimensionError("result shape does not match coded block widths");
        }
        rhs.row(static_cast<Index>(r)) = results[r].reshaped().transpose();
    }
    const auto lu = factor_or_throw(sys, tol);
    const Eigen::MatrixXd blocks = lu.solve(rhs);
    Eigen::MatrixXd out(partition_a.source_cols, partition_b.source_cols);
    for (int u = 0; u < plan.k_a; ++u) {
        for (int v = 0; v < plan.k_b; ++v) {
            const Eigen::MatrixXd tile = blocks.row(u * plan.k_b + v).reshaped(wa, wb);
            out.block(partition_a.offset(u), partition_b.offset(v), partition_a.width(u),
                      partition_b.width(v)) = tile.topLeftCorner(partition_a.width(u),
                                                                 partition_b.width(v));
        }
    }
    return out;
}

}  // namespace sparsecode
