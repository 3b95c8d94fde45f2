#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sparsecode/encoder.hpp"
#include "sparsecode/sparse_matrix.hpp"

namespace sparsecode {

/// Simulated per-worker completion time.
///
/// finish = (flops + 1) / rate * (shift + E), E ~ Exp(1); workers in
/// `forced_slow` are further multiplied by `slowdown`.
struct DelayModel {
    std::string tag = "shifted-exponential";
    double rate = 1e6;
    double shift = 1.0;
    std::set<int> forced_slow;
    double slowdown = 10.0;

    void validate() const;
};

/// Input operands; exactly one of x / b is set.
struct Workload {
    SparseMatrix a;
    std::optional<Eigen::VectorXd> x;
    std::optional<SparseMatrix> b;
};

struct ExperimentResult {
    Scheme scheme = Scheme::ProposedMv;
    int n = 0;
    int k_a = 0;
    int k_b = 1;
    int s = 0;
    int omega_a = 0;
    int omega_b = 1;
    std::uint64_t plan_seed = 0;
    std::uint64_t delay_seed = 0;
    std::string delay_model;
    std::vector<std::int64_t> coded_nnz;  // per worker, A side plus B side
    std::vector<std::int64_t> flops;
    std::vector<std::int64_t> tx_nnz;
    std::vector<double> finish_times;
    std::vector<int> recovery_subset;  // sorted, size k
    double finish_time = 0.0;          // arrival of the k-th result
    bool decode_ok = false;
    std::optional<double> rel_err;
    double kappa_subset = 0.0;
    std::string error;

    double coded_nnz_mean() const;
    double flops_mean() const;
    double tx_nnz_mean() const;
};

/// Per-worker transmitted nonzeros: coded A block plus coded B block, or plus
/// the dense length of x for matrix-vector plans.
std::vector<std::int64_t> communication_cost(const EncodingPlan& plan, const Workload& work);

/// Encodes, computes every worker's task, samples delays, decodes from the
/// k earliest finishers and compares against the dense oracle. Decode
/// failures are recorded in the result rather than thrown.
ExperimentResult simulate_run(const EncodingPlan& plan, const Workload& work,
                              const DelayModel& delay, std::uint64_t delay_seed);

struct CompareConfig {
    int n = 0;
    int k_a = 0;
    int k_b = 1;  // 1 selects matrix-vector
    int s = 0;
    double density = 0.02;
    Index rows = 0;     // t
    Index cols_a = 0;   // r
    Index cols_b = 0;   // w (matrix-matrix only)
    std::vector<Scheme> schemes;
    std::vector<std::uint64_t> seeds;
    DelayModel delay;
};

struct CompareRow {
    std::uint64_t seed = 0;
    ExperimentResult result;
    /// flops_mean / flops_mean of the dense-random row for the same seed (NaN if absent).
    double flop_ratio_vs_dense = 0.0;
};

struct CompareOutput {
    std::vector<CompareRow> rows;
    std::vector<std::string> notices;
};

/// One row per (scheme, seed). Each seed draws fresh operands; infeasible
/// schemes are skipped with a notice.
CompareOutput compare_schemes(const CompareConfig& config);

/// Seeded synthetic operands for a config and seed.
Workload synthetic_workload(const CompareConfig& config, std::uint64_t seed);

void write_results_csv(std::ostream& out, const std::vector<CompareRow>& rows);

}  // namespace sparsecode
