#include "sparsecode/stability.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "sparsecode/combinatorics.hpp"
#include "sparsecode/decoder.hpp"
#include "sparsecode/errors.hpp"

namespace sparsecode {

namespace {

struct WorstTracker {
    double kappa = 0.0;
    std::vector<int> argmax;

    void offer(double value, const std::vector<int>& subset) {
        // NaN never arises from condition_number; infinity orders above every finite value.
        if (argmax.empty() || value > kappa || (value == kappa && colex_less(subset, argmax))) {
            kappa = value;
            argmax = subset;
        }
    }
};

}  // namespace

KappaReport kappa_worst(const EncodingPlan& plan, const KappaOptions& options) {
    const int n = plan.n;
    const int k = plan.unknowns();
    if (k > n) {
        throw InvalidPlan("plan has fewer workers than unknowns");
    }
    KappaReport report;
    report.seed = plan.seed;
    report.mode = options.mode;
    WorstTracker worst;
    const std::uint64_t total = binomial(n, k);

    auto evaluate = [&](const std::vector<int>& subset) {
        worst.offer(condition_number(assemble(plan, subset).matrix), subset);
        ++report.subsets_evaluated;
    };

    if (options.mode == KappaMode::Exhaustive) {
        if (total > options.exhaustive_cap) {
            throw ModeError("C(" + std::to_string(n) + ", " + std::to_string(k) + ") = " +
                            std::to_string(total) + " subsets exceeds the exhaustive cap of " +
                            std::to_string(options.exhaustive_cap) + "; use sampled mode");
        }
        for_each_combination(n, k, [&](const std::vector<int>& subset) {
            evaluate(subset);
            return true;
        });
    } else {
        std::mt19937_64 rng(options.sample_seed.value_or(plan.seed));
        const std::uint64_t target = std::min(options.samples, total);
        std::set<std::vector<int>> drawn;
        while (drawn.size() < target) {
            auto subset = random_subset(n, k, rng);
            if (drawn.insert(subset).second) {
                evaluate(subset);
            }
        }
        report.samples = target;
    }
    report.kappa_worst = worst.kappa;
    report.argmax = std::move(worst.argmax);
    return report;
}

TrialSet all_trials(const PlanSpec& spec, int trials, std::uint64_t base_seed,
                    const KappaOptions& options) {
    if (trials < 1) {
        throw InvalidPlan("trial count must be at least 1");
    }
    TrialSet out;
    out.reports.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        auto plan = make_plan(spec, base_seed + static_cast<std::uint64_t>(t));
        out.reports.push_back(kappa_worst(plan, options));
        if (t == 0 || out.reports.back().kappa_worst < out.reports[out.best_index].kappa_worst) {
            out.best_index = out.reports.size() - 1;
            out.best = std::move(plan);
        }
    }
    return out;
}

std::pair<EncodingPlan, KappaReport> best_of_trials(const PlanSpec& spec, int trials,
                                                    std::uint64_t base_seed,
                                                    const KappaOptions& options) {
    auto set = all_trials(spec, trials, base_seed, options);
    return {std::move(set.best), set.reports[set.best_index]};
}

double search_cost_estimate(int n, int k, int dim) {
    const double d = dim;
    return static_cast<double>(binomial(n, k)) * d * d * d;
}

long long lcm_partition(int n, int k_a) {
    return std::lcm(static_cast<long long>(n), static_cast<long long>(k_a));
}

nlohmann::json kappa_report_to_json(const KappaReport& report) {
    nlohmann::json j;
    j["seed"] = report.seed;
    j["mode"] = report.mode == KappaMode::Exhaustive ? "exhaustive" : "sampled";
    if (report.mode == KappaMode::Sampled) {
        j["samples"] = report.samples;
    }
    if (std::isfinite(report.kappa_worst)) {
        j["kappa_worst"] = report.kappa_worst;
    } else {
        j["kappa_worst"] = "inf";
    }
    j["argmax_subset"] = report.argmax;
    j["subsets_evaluated"] = report.subsets_evaluated;
    return j;
}

}  // namespace sparsecode
