#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sparsecode/encoder.hpp"

namespace sparsecode {

/// Relative singular-value gap below which a decoding system counts as singular.
inline constexpr double kDecodeTolerance = 1e-10;

/// k x k coefficient system for a chosen set of k workers.
///
/// Column u * k_b + v holds the unknown A_u^T B_v (A_u^T x when k_b == 1);
/// `unknowns[col]` records the (u, v) label.
struct DecodingSystem {
    std::vector<int> subset;
    Eigen::MatrixXd matrix;
    std::vector<std::pair<int, int>> unknowns;
};

/// Rows follow `subset` order. Matrix-matrix rows carry the outer product
/// coeffs_a[u] * coeffs_b[v] over the worker's T x S supports.
DecodingSystem assemble(const EncodingPlan& plan, const std::vector<int>& subset);

/// Singular values in decreasing order.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& m);

/// sigma_max / sigma_min; +infinity for singular input.
double condition_number(const Eigen::MatrixXd& m);

bool is_decodable(const DecodingSystem& system, double tol = kDecodeTolerance);
bool is_decodable(const EncodingPlan& plan, const std::vector<int>& subset,
                  double tol = kDecodeTolerance);

/// Recovers A^T x from the coded results of the workers in `subset`.
/// Each result has length partition_a.max_width(); the return has length
/// partition_a.source_cols. Throws DecodeFailure on a singular system.
Eigen::VectorXd decode_mv(const std::vector<Eigen::VectorXd>& results, const EncodingPlan& plan,
                          const std::vector<int>& subset, const BlockPartition& partition_a,
                          double tol = kDecodeTolerance);

/// Recovers A^T B from max_width(A) x max_width(B) coded products.
Eigen::MatrixXd decode_mm(const std::vector<Eigen::MatrixXd>& results, const EncodingPlan& plan,
                          const std::vector<int>& subset, const BlockPartition& partition_a,
                          const BlockPartition& partition_b, double tol = kDecodeTolerance);

}  // namespace sparsecode
