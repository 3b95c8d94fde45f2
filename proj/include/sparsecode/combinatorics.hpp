#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sparsecode {

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);

/// Visits every k-subset of {0, ..., n-1} in colexicographic order.
/// `fn` receives a sorted std::vector<int>&; returning false stops the walk.
/// Returns the number of subsets visited.
template <typename Fn>
std::uint64_t for_each_combination(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) {
        return 0;
    }
    std::vector<int> c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        c[i] = i;
    }
    std::uint64_t visited = 0;
    for (;;) {
        ++visited;
        if (!fn(static_cast<const std::vector<int>&>(c))) {
            return visited;
        }
        // Colex successor: bump the lowest position that can move, reset those below it.
        int i = 0;
        while (i < k && c[i] + 1 == (i + 1 < k ? c[i + 1] : n)) {
            ++i;
        }
        if (i == k) {
            return visited;
        }
        ++c[i];
        for (int j = 0; j < i; ++j) {
            c[j] = j;
        }
    }
}

/// Uniform random sorted k-subset of {0, ..., n-1} (Floyd's algorithm).
std::vector<int> random_subset(int n, int k, std::mt19937_64& rng);

/// Colex order comparison of two sorted subsets of equal size.
bool colex_less(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace sparsecode
