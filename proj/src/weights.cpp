#include "sparsecode/weights.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "sparsecode/errors.hpp"

namespace sparsecode {

namespace {

int ceil_div(long long num, long long den) {
    return static_cast<int>((num + den - 1) / den);
}

}  // namespace

int min_weight(int n, int s) {
    if (n < 1 || s < 0) {
        throw UnsupportedRegime("min_weight requires n >= 1 and s >= 0");
    }
    if (s > n - s) {
        throw UnsupportedRegime("s = " + std::to_string(s) + " exceeds n - s = " +
                                std::to_string(n - s) + "; at most half the workers may straggle");
    }
    return ceil_div(static_cast<long long>(n - s) * (s + 1), n);
}

WeightRegime weight_regime(int k, int s) {
    if (s < 0 || k < 1 || s > k) {
        throw UnsupportedRegime("weight_regime requires 0 <= s <= k");
    }
    WeightRegime r;
    r.value = min_weight(k + s, s);
    if (static_cast<long long>(k) > static_cast<long long>(s) * s) {
        r.exact = true;
        r.lower = r.upper = s + 1;
    } else {
        r.lower = (s + 2) / 2;
        r.upper = s;
    }
    return r;
}

WeightSplit split_weight_mm(int k_a, int k_b, int omega_hat) {
    if (k_a > k_b) {
        throw InfeasibleSplit("split_weight_mm expects k_a <= k_b; transpose the product first");
    }
    if (omega_hat < 1) {
        throw InfeasibleSplit("omega_hat must be positive");
    }
    std::optional<WeightSplit> best;
    bool best_divides = false;
    for (int wa = 2; wa < k_a; ++wa) {
        for (int wb = wa; wb <= k_b; ++wb) {
            if (wa * wb < omega_hat) {
                continue;
            }
            const bool divides = (k_a % wa == 0) && (k_b % wb == 0);
            const WeightSplit cand{wa, wb};
            if (!best || cand.product() < best->product() ||
                (cand.product() == best->product() && divides && !best_divides)) {
                best = cand;
                best_divides = divides;
            }
            break;  // larger wb only increases the product for this wa
        }
    }
    if (!best) {
        throw InfeasibleSplit("no split with 1 < omega_a < k_a = " + std::to_string(k_a) +
                              " reaches weight " + std::to_string(omega_hat));
    }
    return *best;
}

WeightSplit baseline_weight_cyclic(int k_a, int k_b, int s) {
    if (k_a < 1 || k_b < 1 || s < 0) {
        throw InfeasibleSplit("baseline_weight_cyclic requires positive block counts");
    }
    if (k_b == 1) {
        return {std::min(s + 1, k_a), 1};
    }
    const int target = std::min(s + 1, k_a * k_b);
    std::optional<WeightSplit> best;
    for (int wa = 2; wa <= k_a; ++wa) {
        for (int wb = 2; wb <= k_b; ++wb) {
            if (wa * wb < target) {
                continue;
            }
            const WeightSplit cand{wa, wb};
            if (!best || cand.product() < best->product() ||
                (cand.product() == best->product() && wa > best->omega_a)) {
                best = cand;
            }
            break;
        }
    }
    if (!best) {
        throw InfeasibleSplit("no cyclic-baseline split for k_a = " + std::to_string(k_a) +
                              ", k_b = " + std::to_string(k_b));
    }
    return *best;
}

WeightPlan proposed_weight_plan(int k_a, int k_b, int s) {
    WeightPlan p;
    p.k = k_a * k_b;
    p.s = s;
    p.n = p.k + s;
    p.omega_hat = min_weight(p.n, s);
    if (k_b == 1) {
        p.omega_a = p.omega_hat;
        p.omega_b = 1;
    } else {
        const auto split = split_weight_mm(k_a, k_b, p.omega_hat);
        p.omega_a = split.omega_a;
        p.omega_b = split.omega_b;
    }
    return p;
}

}  // namespace sparsecode
