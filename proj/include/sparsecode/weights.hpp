#pragma once

namespace sparsecode {

/// Homogeneous encoding weights for one coded scheme.
///
/// k is the number of unknowns (k_a for matrix-vector, k_a * k_b for
/// matrix-matrix) and n = k + s. omega_b is 1 for matrix-vector plans.
struct WeightPlan {
    int n = 0;
    int s = 0;
    int k = 0;
    int omega_hat = 0;
    int omega_a = 0;
    int omega_b = 1;

    int omega() const noexcept { return omega_a * omega_b; }

    friend bool operator==(const WeightPlan&, const WeightPlan&) = default;
};

/// Lower bound on the homogeneous weight for resilience to s of n stragglers:
/// ceil((n - s)(s + 1) / n). Throws UnsupportedRegime unless 0 <= s <= n - s.
int min_weight(int n, int s);

struct WeightRegime {
    bool exact = false;  // k > s^2: the bound is exactly s + 1
    int lower = 0;       // interval bounds on the minimum weight
    int upper = 0;
    int value = 0;       // min_weight(k + s, s)
};

WeightRegime weight_regime(int k, int s);

struct WeightSplit {
    int omega_a = 0;
    int omega_b = 0;

    int product() const noexcept { return omega_a * omega_b; }
    friend bool operator==(const WeightSplit&, const WeightSplit&) = default;
};

/// Smallest product omega_a * omega_b >= omega_hat with 1 < omega_a < k_a and
/// omega_a <= omega_b <= k_b. Among equal products, pairs dividing (k_a, k_b)
/// win, then the smallest omega_a. Requires k_a <= k_b.
WeightSplit split_weight_mm(int k_a, int k_b, int omega_hat);

/// Weights of the cyclic sparse baseline, which always targets min(s + 1, k).
/// k_b == 1 selects the matrix-vector form (omega_b = 1). For matrix-matrix the
/// split minimizes the product subject to 2 <= omega_a <= k_a, 2 <= omega_b <= k_b,
/// ties going to the largest omega_a.
WeightSplit baseline_weight_cyclic(int k_a, int k_b, int s);

/// Full weight plan of the proposed scheme (matrix-vector when k_b == 1).
WeightPlan proposed_weight_plan(int k_a, int k_b, int s);

}  // namespace sparsecode
