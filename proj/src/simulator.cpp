#include "sparsecode/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

#include "sparsecode/decoder.hpp"
#include "sparsecode/errors.hpp"
#include "sparsecode/oracle.hpp"

namespace sparsecode {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over (seed, stream)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

template <typename T>
double mean_of(const std::vector<T>& v) {
    if (v.empty()) {
        return 0.0;
    }
    return std::accumulate(v.begin(), v.end(), 0.0,
                           [](double acc, T x) { return acc + static_cast<double>(x); }) /
           static_cast<double>(v.size());
}

void check_workload(const EncodingPlan& plan, const Workload& work) {
    if (plan.is_matrix_vector()) {
        if (!work.x) {
            throw DimensionError("matrix-vector plan needs a vector operand");
        }
        if (work.x->size() != work.a.rows()) {
            throw DimensionError("vector length does not match the rows of A");
        }
    } else {
        if (!work.b) {
            throw DimensionError("matrix-matrix plan needs a B operand");
        }
        if (work.b->rows() != work.a.rows()) {
            throw DimensionError("A and B must have the same number of rows");
        }
    }
}

struct EncodedWorkload {
    BlockPartition part_a;
    BlockPartition part_b;
    std::vector<SparseMatrix> coded_a;
    std::vector<SparseMatrix> coded_b;
};

EncodedWorkload encode_workload(const EncodingPlan& plan, const Workload& work) {
    plan.validate();
    check_workload(plan, work);
    EncodedWorkload enc;
    enc.part_a = partition_columns(work.a, plan.k_a);
    enc.coded_a = encode_blocks(work.a, enc.part_a, plan.supports_a, plan.coeffs_a);
    if (!plan.is_matrix_vector()) {
        enc.part_b = partition_columns(*work.b, plan.k_b);
        enc.coded_b = encode_blocks(*work.b, enc.part_b, plan.supports_b, plan.coeffs_b);
    }
    return enc;
}

}  // namespace

void DelayModel::validate() const {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw Error("delay rate must be positive and finite");
    }
    if (!(shift >= 0.0) || !std::isfinite(shift)) {
        throw Error("delay shift must be nonnegative and finite");
    }
    if (!(slowdown >= 1.0) || !std::isfinite(slowdown)) {
        throw Error("slowdown multiplier must be at least 1");
    }
}

double ExperimentResult::coded_nnz_mean() const { return mean_of(coded_nnz); }
double ExperimentResult::flops_mean() const { return mean_of(flops); }
double ExperimentResult::tx_nnz_mean() const { return mean_of(tx_nnz); }

std::vector<std::int64_t> communication_cost(const EncodingPlan& plan, const Workload& work) {
    const auto enc = encode_workload(plan, work);
    std::vector<std::int64_t> out(static_cast<std::size_t>(plan.n));
    for (int i = 0; i < plan.n; ++i) {
        out[i] = enc.coded_a[i].nnz() +
                 (plan.is_matrix_vector() ? work.a.rows() : enc.coded_b[i].nnz());
    }
    return out;
}

ExperimentResult simulate_run(const EncodingPlan& plan, const Workload& work,
                              const DelayModel& delay, std::uint64_t delay_seed) {
    delay.validate();
    const auto enc = encode_workload(plan, work);
    const bool mv = plan.is_matrix_vector();
    const int n = plan.n;
    const int k = plan.unknowns();

    ExperimentResult res;
    res.scheme = plan.scheme;
    res.n = n;
    res.k_a = plan.k_a;
    res.k_b = plan.k_b;
    res.s = plan.s;
    res.omega_a = plan.weights.omega_a;
    res.omega_b = plan.weights.omega_b;
    res.plan_seed = plan.seed;
    res.delay_seed = delay_seed;
    res.delay_model = delay.tag;

    for (int i = 0; i < n; ++i) {
        const auto& ca = enc.coded_a[i];
        if (mv) {
            res.coded_nnz.push_back(ca.nnz());
            res.flops.push_back(flop_estimate(ca.nnz(), 1));
            res.tx_nnz.push_back(ca.nnz() + work.a.rows());
        } else {
            const auto& cb = enc.coded_b[i];
            res.coded_nnz.push_back(ca.nnz() + cb.nnz());
            res.flops.push_back(spmm_t_flops(ca, cb));
            res.tx_nnz.push_back(ca.nnz() + cb.nnz());
        }
        // One independent stream per worker keeps delays schedule-independent.
        std::seed_seq seq{delay_seed, static_cast<std::uint64_t>(i)};
        std::mt19937_64 rng(seq);
        std::exponential_distribution<double> noise(1.0);
        double t = (static_cast<double>(res.flops.back()) + 1.0) / delay.rate * (delay.shift + noise(rng));
        if (delay.forced_slow.count(i) != 0) {
            t *= delay.slowdown;
        }
        res.finish_times.push_back(t);
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return res.finish_times[a] < res.finish_times[b]; });
    res.recovery_subset.assign(order.begin(), order.begin() + k);
    res.finish_time = res.finish_times[order[k - 1]];
    std::sort(res.recovery_subset.begin(), res.recovery_subset.end());

    res.kappa_subset = condition_number(assemble(plan, res.recovery_subset).matrix);
    try {
        if (mv) {
            std::vector<Eigen::VectorXd> results;
            for (int w : res.recovery_subset) {
                results.push_back(spmv_t(enc.coded_a[w], *work.x));
            }
            const auto decoded = decode_mv(results, plan, res.recovery_subset, enc.part_a);
            const auto truth = oracle::dense_reference(work.a, *work.x);
            const double scale = truth.norm();
            res.rel_err = (decoded - truth).norm() / (scale > 0.0 ? scale : 1.0);
        } else {
            std::vector<Eigen::MatrixXd> results;
            for (int w : res.recovery_subset) {
                results.push_back(spmm_t(enc.coded_a[w], enc.coded_b[w]));
            }
            const auto decoded =
                decode_mm(results, plan, res.recovery_subset, enc.part_a, enc.part_b);
            const auto truth = oracle::dense_reference(work.a, *work.b);
            const double scale = truth.norm();
            res.rel_err = (decoded - truth).norm() / (scale > 0.0 ? scale : 1.0);
        }
        res.decode_ok = true;
    } catch (const DecodeFailure& e) {
        res.decode_ok = false;
        res.error = e.what();
    }
    return res;
}

Workload synthetic_workload(const CompareConfig& config, std::uint64_t seed) {
    Workload w;
    w.a = random_sparse(config.rows, config.cols_a, config.density, derive_seed(seed, 1));
    if (config.k_b == 1) {
        std::mt19937_64 rng(derive_seed(seed, 3));
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::VectorXd x(config.rows);
        for (Index r = 0; r < config.rows; ++r) {
            x[r] = normal(rng);
        }
        w.x = std::move(x);
    } else {
        w.b = random_sparse(config.rows, config.cols_b, config.density, derive_seed(seed, 2));
    }
    return w;
}

CompareOutput compare_schemes(const CompareConfig& config) {
    CompareOutput out;
    for (auto seed : config.seeds) {
        const auto work = synthetic_workload(config, seed);
        const std::size_t first = out.rows.size();
        for (auto scheme : config.schemes) {
            const PlanSpec spec{scheme, config.n, config.k_a, config.k_b, config.s};
            try {
                const auto plan = make_plan(spec, seed);
                out.rows.push_back({seed, simulate_run(plan, work, config.delay, seed), 0.0});
            } catch (const Error& e) {
                out.notices.push_back(std::string(to_string(scheme)) + " skipped for seed " +
                                      std::to_string(seed) + ": " + e.what());
            }
        }
        double dense_flops = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t i = first; i < out.rows.size(); ++i) {
            if (out.rows[i].result.scheme == Scheme::DenseRandom) {
                dense_flops = out.rows[i].result.flops_mean();
            }
        }
        for (std::size_t i = first; i < out.rows.size(); ++i) {
            out.rows[i].flop_ratio_vs_dense = out.rows[i].result.flops_mean() / dense_flops;
        }
    }
    return out;
}

void write_results_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
    out << "scheme,n,k_a,k_b,s,omega_a,omega_b,coded_nnz_mean,flops_mean,tx_nnz_mean,"
           "finish_time,decode_ok,rel_err,kappa_subset,seed,flop_ratio_vs_dense,delay_model\n";
    const auto old = out.precision(10);
    for (const auto& row : rows) {
        const auto& r = row.result;
        out << to_string(r.scheme) << ',' << r.n << ',' << r.k_a << ',' << r.k_b << ',' << r.s
            << ',' << r.omega_a << ',' << r.omega_b << ',' << r.coded_nnz_mean() << ','
            << r.flops_mean() << ',' << r.tx_nnz_mean() << ',' << r.finish_time << ','
            << (r.decode_ok ? 1 : 0) << ',';
        if (r.rel_err) {
            out << *r.rel_err;
        }
        out << ',' << r.kappa_subset << ',' << row.seed << ',' << row.flop_ratio_vs_dense << ','
            << r.delay_model << '\n';
    }
    out.precision(old);
}

}  // namespace sparsecode
