#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sparsecode/encoder.hpp"
#include "sparsecode/sparse_matrix.hpp"

namespace sparsecode::oracle {

/// Ground-truth A^T x by a plain loop over a dense copy of A.
/// Shares no code with the sparse kernels.
Eigen::VectorXd dense_reference(const SparseMatrix& a, const Eigen::VectorXd& x);

/// Ground-truth A^T B by a triple loop over dense copies.
Eigen::MatrixXd dense_reference(const SparseMatrix& a, const SparseMatrix& b);

/// Participating unknowns of one worker subset against a counting bound.
struct UnionReport {
    std::vector<int> subset;
    std::vector<int> unknowns;  // sorted unknown ids (u * k_b + v)
    int bound = 0;
    bool pass = false;
};

/// Union of the participating unknowns of `workers`.
std::vector<int> participating_unknowns(const EncodingPlan& plan, const std::vector<int>& workers);

UnionReport union_report(const EncodingPlan& plan, const std::vector<int>& workers, int bound);

struct EnumerationOptions {
    /// Levels with at most this many subsets are enumerated exhaustively.
    std::uint64_t exhaustive_cap = 100000;
    /// Distinct subsets drawn at larger levels.
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
};

struct LevelSummary {
    int m = 0;
    bool exhaustive = true;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    /// Smallest union seen at this level.
    int min_union = 0;
};

struct HallReport {
    std::vector<LevelSummary> levels;
    std::vector<UnionReport> failures;  // at most a handful are kept
    bool pass = true;
};

/// Checks |union of participating unknowns| >= m for every worker subset of
/// size m <= max_m, exhaustively or by sampling per EnumerationOptions.
HallReport hall_check(const EncodingPlan& plan, int max_m, const EnumerationOptions& options = {});

struct ClaimResult {
    std::string name;
    std::string statement;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    bool sampled = false;
    bool pass() const noexcept { return failures == 0; }
};

/// Verifies the counting bounds behind straggler resilience on a proposed plan:
/// cyclic-window unions over the first k workers, saturation of the last s
/// workers, and for matrix-matrix plans the class unions and per-class
/// unknown counts.
std::vector<ClaimResult> claim_bounds_check(const EncodingPlan& plan,
                                            const EnumerationOptions& options = {});

struct DecodabilityReport {
    std::uint64_t subsets = 0;
    std::uint64_t failures = 0;
    std::vector<int> first_failure;
};

/// is_decodable on every k-subset. Throws ModeError when C(n, k) exceeds `cap`.
DecodabilityReport exhaustive_decodability(const EncodingPlan& plan, std::uint64_t cap = 100000,
                                           double tol = 1e-10);

}  // namespace sparsecode::oracle
