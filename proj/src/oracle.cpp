#include "sparsecode/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <random>
#include <set>

#include "sparsecode/combinatorics.hpp"
#include "sparsecode/decoder.hpp"
#include "sparsecode/errors.hpp"

namespace sparsecode::oracle {

namespace {

using Words = std::vector<std::uint64_t>;

std::vector<std::vector<double>> to_rows(const SparseMatrix& m) {
    std::vector<std::vector<double>> d(static_cast<std::size_t>(m.rows()),
                                       std::vector<double>(static_cast<std::size_t>(m.cols()), 0.0));
    for (const auto& t : m.triplets()) {
        d[t.row][t.col] = t.value;
    }
    return d;
}

/// Bitset of participating unknowns for each worker.
class UnknownSets {
public:
    explicit UnknownSets(const EncodingPlan& plan)
        : words_((static_cast<std::size_t>(plan.unknowns()) + 63) / 64) {
        sets_.reserve(static_cast<std::size_t>(plan.n));
        for (int w = 0; w < plan.n; ++w) {
            Words bits(words_, 0);
            for (int id : worker_unknowns(plan, w)) {
                bits[id / 64] |= std::uint64_t{1} << (id % 64);
            }
            sets_.push_back(std::move(bits));
        }
    }

    static std::vector<int> worker_unknowns(const EncodingPlan& plan, int w) {
        std::vector<int> ids;
        if (plan.is_matrix_vector()) {
            ids = plan.supports_a.at(w);
        } else {
            for (int u : plan.supports_a.at(w)) {
                for (int v : plan.supports_b.at(w)) {
                    ids.push_back(u * plan.k_b + v);
                }
            }
        }
        return ids;
    }

    int union_size(const std::vector<int>& workers) const {
        Words acc(words_, 0);
        for (int w : workers) {
            for (std::size_t i = 0; i < words_; ++i) {
                acc[i] |= sets_[w][i];
            }
        }
        int total = 0;
        for (auto word : acc) {
            total += std::popcount(word);
        }
        return total;
    }

private:
    std::size_t words_;
    std::vector<Words> sets_;
};

/// Runs `fn` on every m-subset of `pool` (exhaustive under the cap, sampled
/// otherwise). Returns {subsets visited, sampled?}.
std::pair<std::uint64_t, bool> visit_subsets(const std::vector<int>& pool, int m,
                                             const EnumerationOptions& options,
                                             std::uint64_t stream,
                                             const std::function<void(const std::vector<int>&)>& fn) {
    const int size = static_cast<int>(pool.size());
    const std::uint64_t total = binomial(size, m);
    std::vector<int> mapped(static_cast<std::size_t>(m));
    auto apply = [&](const std::vector<int>& pick) {
        for (int t = 0; t < m; ++t) {
            mapped[t] = pool[pick[t]];
        }
        fn(mapped);
    };
    if (total <= options.exhaustive_cap) {
        const auto visited = for_each_combination(size, m, [&](const std::vector<int>& pick) {
            apply(pick);
            return true;
        });
        return {visited, false};
    }
    std::seed_seq seq{options.seed, stream, static_cast<std::uint64_t>(m)};
    std::mt19937_64 rng(seq);
    std::set<std::vector<int>> drawn;
    while (drawn.size() < options.samples) {
        auto pick = random_subset(size, m, rng);
        if (drawn.insert(pick).second) {
            apply(pick);
        }
    }
    return {drawn.size(), true};
}

std::vector<int> iota_range(int first, int last) {
    std::vector<int> v;
    for (int i = first; i < last; ++i) {
        v.push_back(i);
    }
    return v;
}

}  // namespace

Eigen::VectorXd dense_reference(const SparseMatrix& a, const Eigen::VectorXd& x) {
    if (x.size() != a.rows()) {
        throw DimensionError("dense_reference: vector length does not match rows");
    }
    const auto d = to_rows(a);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(a.cols());
    for (Index j = 0; j < a.cols(); ++j) {
        double acc = 0.0;
        for (Index r = 0; r < a.rows(); ++r) {
            acc += d[r][j] * x[r];
        }
        y[j] = acc;
    }
    return y;
}

Eigen::MatrixXd dense_reference(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows()) {
        throw DimensionError("dense_reference: row counts differ");
    }
    const auto da = to_rows(a);
    const auto db = to_rows(b);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.cols(), b.cols());
    for (Index i = 0; i < a.cols(); ++i) {
        for (Index j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (Index r = 0; r < a.rows(); ++r) {
                acc += da[r][i] * db[r][j];
            }
            out(i, j) = acc;
        }
    }
    return out;
}

std::vector<int> participating_unknowns(const EncodingPlan& plan, const std::vector<int>& workers) {
    std::set<int> ids;
    for (int w : workers) {
        if (w < 0 || w >= plan.n) {
            throw DimensionError("worker id out of range");
        }
        for (int id : UnknownSets::worker_unknowns(plan, w)) {
            ids.insert(id);
        }
    }
    return {ids.begin(), ids.end()};
}

UnionReport union_report(const EncodingPlan& plan, const std::vector<int>& workers, int bound) {
    UnionReport r;
    r.subset = workers;
    r.unknowns = participating_unknowns(plan, workers);
    r.bound = bound;
    r.pass = static_cast<int>(r.unknowns.size()) >= bound;
    return r;
}

HallReport hall_check(const EncodingPlan& plan, int max_m, const EnumerationOptions& options) {
    if (max_m < 1 || max_m > plan.unknowns() || max_m > plan.n) {
        throw DimensionError("hall_check: max_m must lie in [1, min(k, n)]");
    }
    const UnknownSets sets(plan);
    const auto workers = iota_range(0, plan.n);
    HallReport report;
    for (int m = 1; m <= max_m; ++m) {
        LevelSummary level;
        level.m = m;
        level.min_union = plan.unknowns();
        const auto [checked, sampled] =
            visit_subsets(workers, m, options, 0, [&](const std::vector<int>& subset) {
                const int size = sets.union_size(subset);
                level.min_union = std::min(level.min_union, size);
                if (size < m) {
                    ++level.failures;
                    if (report.failures.size() < 8) {
                        report.failures.push_back(union_report(plan, subset, m));
                    }
                }
            });
        level.checked = checked;
        level.exhaustive = !sampled;
        report.pass = report.pass && level.failures == 0;
        report.levels.push_back(level);
    }
    return report;
}

std::vector<ClaimResult> claim_bounds_check(const EncodingPlan& plan,
                                            const EnumerationOptions& options) {
    if (plan.scheme != Scheme::ProposedMv && plan.scheme != Scheme::ProposedMm) {
        throw InvalidPlan("claim bounds apply to proposed plans only");
    }
    const UnknownSets sets(plan);
    const int k = plan.unknowns();
    const int omega = plan.weights.omega();
    const auto first_k = iota_range(0, k);
    const auto last_s = iota_range(k, plan.n);
    std::vector<ClaimResult> results;
    std::uint64_t stream = 1;

    {
        ClaimResult r{"cyclic-window-union",
                      "any m0 of the first k workers cover >= min(m0 + omega - 1, k) unknowns"};
        for (int m0 = 1; m0 <= k; ++m0) {
            const int bound = std::min(m0 + omega - 1, k);
            const auto [checked, sampled] =
                visit_subsets(first_k, m0, options, stream++, [&](const std::vector<int>& sub) {
                    if (sets.union_size(sub) < bound) {
                        ++r.failures;
                    }
                });
            r.checked += checked;
            r.sampled = r.sampled || sampled;
        }
        results.push_back(r);
    }
    {
        ClaimResult r{"tail-saturation", "any m1 >= omega of the last s workers cover all k unknowns"};
        for (int m1 = omega; m1 <= plan.s; ++m1) {
            const auto [checked, sampled] =
                visit_subsets(last_s, m1, options, stream++, [&](const std::vector<int>& sub) {
                    if (sets.union_size(sub) != k) {
                        ++r.failures;
                    }
                });
            r.checked += checked;
            r.sampled = r.sampled || sampled;
        }
        results.push_back(r);
    }
    if (plan.is_matrix_vector()) {
        return results;
    }

    const int wa = plan.weights.omega_a;
    const int wb = plan.weights.omega_b;
    {
        ClaimResult r{"class-union",
                      "any q <= k_a - omega_a + 1 class A-supports cover >= omega_a + q - 1 blocks"};
        const auto classes = iota_range(0, plan.k_a);
        for (int q = 1; q <= plan.k_a - wa + 1; ++q) {
            const auto [checked, sampled] =
                visit_subsets(classes, q, options, stream++, [&](const std::vector<int>& sub) {
                    std::set<int> blocks;
                    for (int c : sub) {
                        blocks.insert(plan.supports_a[c].begin(), plan.supports_a[c].end());
                    }
                    if (static_cast<int>(blocks.size()) < wa + q - 1) {
                        ++r.failures;
                    }
                });
            r.checked += checked;
            r.sampled = r.sampled || sampled;
        }
        results.push_back(r);
    }
    {
        ClaimResult r{"class-unknowns",
                      "the minimum over delta workers of one class is omega_a * min(omega_b + delta - 1, k_b)"};
        for (int c = 0; c < plan.k_a; ++c) {
            std::vector<int> members;
            for (int j = 0; j < plan.k_b; ++j) {
                members.push_back(c + j * plan.k_a);
            }
            for (int delta = 1; delta <= plan.k_b; ++delta) {
                const int rho = wa * std::min(wb + delta - 1, plan.k_b);
                int smallest = k;
                const auto [checked, sampled] = visit_subsets(
                    members, delta, options, stream++, [&](const std::vector<int>& sub) {
                        const int size = sets.union_size(sub);
                        smallest = std::min(smallest, size);
                        if (size < rho) {
                            ++r.failures;
                        }
                    });
                if (!sampled && smallest != rho) {
                    ++r.failures;
                }
                r.checked += checked;
                r.sampled = r.sampled || sampled;
            }
        }
        results.push_back(r);
    }
    return results;
}

DecodabilityReport exhaustive_decodability(const EncodingPlan& plan, std::uint64_t cap, double tol) {
    const int k = plan.unknowns();
    const auto total = binomial(plan.n, k);
    if (total > cap) {
        throw ModeError("C(" + std::to_string(plan.n) + ", " + std::to_string(k) +
                        ") exceeds the exhaustive cap of " + std::to_string(cap));
    }
    DecodabilityReport report;
    report.subsets = for_each_combination(plan.n, k, [&](const std::vector<int>& subset) {
        if (!is_decodable(plan, subset, tol)) {
            if (report.failures == 0) {
                report.first_failure = subset;
            }
            ++report.failures;
        }
        return true;
    });
    return report;
}

}  // namespace sparsecode::oracle
