#include "sparsecode/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace sparsecode {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (r > kMax) {
            return kMax;
        }
    }
    return static_cast<std::uint64_t>(r);
}

std::vector<int> random_subset(int n, int k, std::mt19937_64& rng) {
    std::unordered_set<int> chosen;
    chosen.reserve(static_cast<std::size_t>(k) * 2);
    for (int j = n - k; j < n; ++j) {
        std::uniform_int_distribution<int> pick(0, j);
        const int t = pick(rng);
        if (!chosen.insert(t).second) {
            chosen.insert(j);
        }
    }
    std::vector<int> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool colex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace sparsecode
