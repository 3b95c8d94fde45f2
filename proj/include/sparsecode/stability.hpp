#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sparsecode/encoder.hpp"

namespace sparsecode {

enum class KappaMode { Exhaustive, Sampled };

struct KappaOptions {
    KappaMode mode = KappaMode::Exhaustive;
    /// Largest C(n, k) accepted in exhaustive mode.
    std::uint64_t exhaustive_cap = 100000;
    /// Distinct subsets drawn in sampled mode.
    std::uint64_t samples = 2000;
    /// Seed of the subset sampler; the plan seed is used when unset.
    std::optional<std::uint64_t> sample_seed;
};

/// Worst-case condition number of a plan over straggler patterns.
struct KappaReport {
    std::uint64_t seed = 0;
    KappaMode mode = KappaMode::Exhaustive;
    std::uint64_t samples = 0;
    double kappa_worst = 1.0;
    std::vector<int> argmax;
    std::uint64_t subsets_evaluated = 0;
};

/// Max condition number over all k-subsets (colex order) or over a seeded
/// sample of distinct subsets. Ties keep the colex-smallest subset.
/// Throws ModeError when exhaustive mode would exceed the cap.
KappaReport kappa_worst(const EncodingPlan& plan, const KappaOptions& options = {});

/// Builds `trials` plans with seeds base_seed .. base_seed + trials - 1 and
/// returns the one with the smallest kappa_worst (earliest seed on ties).
std::pair<EncodingPlan, KappaReport> best_of_trials(const PlanSpec& spec, int trials,
                                                    std::uint64_t base_seed,
                                                    const KappaOptions& options = {});

struct TrialSet {
    EncodingPlan best;
    std::size_t best_index = 0;
    std::vector<KappaReport> reports;  // one per trial, in seed order
};

/// best_of_trials that also keeps every trial's report.
TrialSet all_trials(const PlanSpec& spec, int trials, std::uint64_t base_seed,
                    const KappaOptions& options = {});

/// C(n, k) * dim^3: cost of one kappa_worst pass with dim x dim systems.
double search_cost_estimate(int n, int k, int dim);

/// Block count lcm(n, k_a) used by schemes that repartition into Delta_A blocks.
long long lcm_partition(int n, int k_a);

nlohmann::json kappa_report_to_json(const KappaReport& report);

}  // namespace sparsecode
