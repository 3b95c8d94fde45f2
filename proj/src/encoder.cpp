#include "sparsecode/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "sparsecode/errors.hpp"

namespace sparsecode {

namespace {

constexpr std::pair<Scheme, std::string_view> kSchemeTags[] = {
    {Scheme::ProposedMv, "proposed-mv"},
    {Scheme::ProposedMm, "proposed-mm"},
    {Scheme::Poly, "poly"},
    {Scheme::DenseRandom, "dense-random"},
    {Scheme::CyclicBaseline, "cyclic-baseline"},
};

std::vector<int> window(long long start, int width, int modulus) {
    std::vector<int> w(static_cast<std::size_t>(width));
    for (int t = 0; t < width; ++t) {
        w[t] = static_cast<int>((start + t) % modulus);
    }
    return w;
}

void check_regime(int n, int k, int s) {
    if (k < 1 || s < 0 || n != k + s) {
        throw UnsupportedRegime("expected n = k + s with k >= 1, got n = " + std::to_string(n) +
                                ", k = " + std::to_string(k) + ", s = " + std::to_string(s));
    }
    if (s > k) {
        throw UnsupportedRegime("s = " + std::to_string(s) + " exceeds k = " + std::to_string(k));
    }
}

double draw_nonzero(std::mt19937_64& rng, std::normal_distribution<double>& normal) {
    double v = 0.0;
    while (v == 0.0) {
        v = normal(rng);
    }
    return v;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
    for (const auto& [s, tag] : kSchemeTags) {
        if (s == scheme) {
            return tag;
        }
    }
    return "unknown";
}

Scheme scheme_from_string(std::string_view tag) {
    for (const auto& [s, t] : kSchemeTags) {
        if (t == tag) {
            return s;
        }
    }
    throw InvalidPlan("unknown scheme tag '" + std::string(tag) + "'");
}

void EncodingPlan::validate() const {
    auto fail = [](const std::string& msg) { throw InvalidPlan(msg); };
    if (n < 1 || k_a < 1 || k_b < 1 || s < 0) {
        fail("plan dimensions must be positive");
    }
    if (static_cast<int>(supports_a.size()) != n || static_cast<int>(coeffs_a.size()) != n) {
        fail("expected one A support and coefficient list per worker");
    }
    const bool mv = supports_b.empty();
    if (mv && k_b != 1) {
        fail("matrix-vector plan must have k_b = 1");
    }
    if (!mv && (static_cast<int>(supports_b.size()) != n || static_cast<int>(coeffs_b.size()) != n)) {
        fail("expected one B support and coefficient list per worker");
    }
    const bool allow_zero = scheme == Scheme::Poly;
    auto check_side = [&](const Supports& sup, const Coefficients& coef, int k, int weight,
                          const char* side) {
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(sup[i].size()) != weight) {
                fail(std::string(side) + " support of worker " + std::to_string(i) +
                     " does not have the planned weight " + std::to_string(weight));
            }
            if (coef[i].size() != sup[i].size()) {
                fail(std::string(side) + " coefficients of worker " + std::to_string(i) +
                     " are not aligned with its support");
            }
            std::set<int> seen;
            for (std::size_t t = 0; t < sup[i].size(); ++t) {
                if (sup[i][t] < 0 || sup[i][t] >= k) {
                    fail(std::string(side) + " block index out of range at worker " +
                         std::to_string(i));
                }
                if (!seen.insert(sup[i][t]).second) {
                    fail(std::string(side) + " support of worker " + std::to_string(i) +
                         " repeats a block");
                }
                if (!std::isfinite(coef[i][t]) || (!allow_zero && coef[i][t] == 0.0)) {
                    fail(std::string(side) + " coefficient of worker " + std::to_string(i) +
                         " must be finite and nonzero");
                }
            }
        }
    };
    check_side(supports_a, coeffs_a, k_a, weights.omega_a, "A");
    if (!mv) {
        check_side(supports_b, coeffs_b, k_b, weights.omega_b, "B");
    }
}

Supports mv_supports(int n, int k_a, int s) {
    check_regime(n, k_a, s);
    const int omega = min_weight(n, s);
    Supports out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const long long start = i < k_a ? i : static_cast<long long>(i) * omega;
        out[i] = window(start, omega, k_a);
    }
    return out;
}

PairedSupports mm_supports(int n, int k_a, int k_b, int s, int omega_a, int omega_b) {
    if (k_a > k_b) {
        throw UnsupportedRegime("matrix-matrix supports expect k_a <= k_b");
    }
    const int k = k_a * k_b;
    check_regime(n, k, s);
    if (omega_a < 1 || omega_a > k_a || omega_b < 1 || omega_b > k_b) {
        throw InfeasibleSplit("weights out of range for the block counts");
    }
    PairedSupports out;
    out.a.resize(static_cast<std::size_t>(n));
    out.b.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (i < k) {
            out.a[i] = window(i % k_a, omega_a, k_a);
            out.b[i] = window(i / k_a, omega_b, k_b);
        } else {
            const long long ell = i % k_a;
            const long long m = static_cast<long long>(i) * omega_a / k_a;
            out.a[i] = window(ell * omega_a, omega_a, k_a);
            out.b[i] = window(m * omega_b, omega_b, k_b);
        }
    }
    return out;
}

void draw_coefficients(EncodingPlan& plan, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    plan.seed = seed;
    plan.coeffs_a.assign(plan.supports_a.size(), {});
    plan.coeffs_b.assign(plan.supports_b.size(), {});
    for (std::size_t i = 0; i < plan.supports_a.size(); ++i) {
        for (std::size_t t = 0; t < plan.supports_a[i].size(); ++t) {
            plan.coeffs_a[i].push_back(draw_nonzero(rng, normal));
        }
        if (i < plan.supports_b.size()) {
            for (std::size_t t = 0; t < plan.supports_b[i].size(); ++t) {
                plan.coeffs_b[i].push_back(draw_nonzero(rng, normal));
            }
        }
    }
}

EncodingPlan make_proposed_mv_plan(int n, int k_a, int s, std::uint64_t seed) {
    EncodingPlan plan;
    plan.scheme = Scheme::ProposedMv;
    plan.n = n;
    plan.k_a = k_a;
    plan.k_b = 1;
    plan.s = s;
    plan.supports_a = mv_supports(n, k_a, s);
    plan.weights = proposed_weight_plan(k_a, 1, s);
    draw_coefficients(plan, seed);
    return plan;
}

EncodingPlan make_proposed_mm_plan(int n, int k_a, int k_b, int s, std::uint64_t seed) {
    check_regime(n, k_a * k_b, s);
    EncodingPlan plan;
    plan.scheme = Scheme::ProposedMm;
    plan.n = n;
    plan.k_a = k_a;
    plan.k_b = k_b;
    plan.s = s;
    plan.weights = proposed_weight_plan(k_a, k_b, s);
    auto sup = mm_supports(n, k_a, k_b, s, plan.weights.omega_a, plan.weights.omega_b);
    plan.supports_a = std::move(sup.a);
    plan.supports_b = std::move(sup.b);
    if (k_a % plan.weights.omega_a != 0 || k_b % plan.weights.omega_b != 0) {
        plan.assumptions.push_back("weights (" + std::to_string(plan.weights.omega_a) + ", " +
                                   std::to_string(plan.weights.omega_b) +
                                   ") do not divide block counts; divisibility relaxed, so the tail "
                                   "windows may cover some unknowns fewer than s + 1 times and "
                                   "straggler resilience is not guaranteed");
    }
    if (plan.weights.omega() > plan.weights.omega_hat) {
        plan.assumptions.push_back("weight " + std::to_string(plan.weights.omega()) +
                                   " exceeds lower bound " +
                                   std::to_string(plan.weights.omega_hat));
    }
    draw_coefficients(plan, seed);
    return plan;
}

EncodingPlan baseline_poly_plan(int n, int k_a, int k_b) {
    if (k_a < 1 || k_b < 1 || n < k_a * k_b) {
        throw UnsupportedRegime("polynomial code needs n >= k_a * k_b");
    }
    EncodingPlan plan;
    plan.scheme = Scheme::Poly;
    plan.n = n;
    plan.k_a = k_a;
    plan.k_b = k_b;
    plan.s = n - k_a * k_b;
    plan.weights = {n, plan.s, k_a * k_b, 0, k_a, k_b};
    plan.weights.omega_hat = plan.s <= n - plan.s ? min_weight(n, plan.s) : plan.weights.omega();
    plan.nodes.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        plan.nodes[i] = n == 1 ? 0.0 : -1.0 + 2.0 * i / (n - 1);
    }
    plan.assumptions.push_back("evaluation nodes equispaced in [-1, 1]");
    const bool mv = k_b == 1;
    plan.supports_a.assign(static_cast<std::size_t>(n), window(0, k_a, k_a));
    plan.coeffs_a.resize(static_cast<std::size_t>(n));
    if (!mv) {
        plan.supports_b.assign(static_cast<std::size_t>(n), window(0, k_b, k_b));
        plan.coeffs_b.resize(static_cast<std::size_t>(n));
    }
    for (int i = 0; i < n; ++i) {
        const double z = plan.nodes[i];
        for (int j = 0; j < k_a; ++j) {
            plan.coeffs_a[i].push_back(std::pow(z, j));
        }
        if (!mv) {
            for (int j = 0; j < k_b; ++j) {
                plan.coeffs_b[i].push_back(std::pow(z, j * k_a));
            }
        }
    }
    return plan;
}

EncodingPlan baseline_dense_random_plan(int n, int k_a, int k_b, std::uint64_t seed) {
    if (k_a < 1 || k_b < 1 || n < k_a * k_b) {
        throw UnsupportedRegime("dense random code needs n >= k_a * k_b");
    }
    EncodingPlan plan;
    plan.scheme = Scheme::DenseRandom;
    plan.n = n;
    plan.k_a = k_a;
    plan.k_b = k_b;
    plan.s = n - k_a * k_b;
    plan.weights = {n, plan.s, k_a * k_b, 0, k_a, k_b};
    plan.weights.omega_hat = plan.s <= n - plan.s ? min_weight(n, plan.s) : plan.weights.omega();
    plan.supports_a.assign(static_cast<std::size_t>(n), window(0, k_a, k_a));
    if (k_b > 1) {
        plan.supports_b.assign(static_cast<std::size_t>(n), window(0, k_b, k_b));
    }
    draw_coefficients(plan, seed);
    return plan;
}

EncodingPlan baseline_cyclic_plan(int n, int k_a, int k_b, int s, std::uint64_t seed) {
    check_regime(n, k_a * k_b, s);
    const auto split = baseline_weight_cyclic(k_a, k_b, s);
    EncodingPlan plan;
    plan.scheme = Scheme::CyclicBaseline;
    plan.n = n;
    plan.k_a = k_a;
    plan.k_b = k_b;
    plan.s = s;
    plan.weights = {n, s, k_a * k_b, min_weight(n, s), split.omega_a, split.omega_b};
    plan.supports_a.resize(static_cast<std::size_t>(n));
    if (k_b > 1) {
        plan.supports_b.resize(static_cast<std::size_t>(n));
    }
    for (int i = 0; i < n; ++i) {
        plan.supports_a[i] = window(i % k_a, split.omega_a, k_a);
        if (k_b > 1) {
            plan.supports_b[i] = window((i / k_a) % k_b, split.omega_b, k_b);
        }
    }
    draw_coefficients(plan, seed);
    return plan;
}

EncodingPlan make_plan(const PlanSpec& spec, std::uint64_t seed) {
    switch (spec.scheme) {
        case Scheme::ProposedMv:
            return make_proposed_mv_plan(spec.n, spec.k_a, spec.s, seed);
        case Scheme::ProposedMm:
            return make_proposed_mm_plan(spec.n, spec.k_a, spec.k_b, spec.s, seed);
        case Scheme::Poly:
            return baseline_poly_plan(spec.n, spec.k_a, spec.k_b);
        case Scheme::DenseRandom:
            return baseline_dense_random_plan(spec.n, spec.k_a, spec.k_b, seed);
        case Scheme::CyclicBaseline:
            return baseline_cyclic_plan(spec.n, spec.k_a, spec.k_b, spec.s, seed);
    }
    throw InvalidPlan("unhandled scheme");
}

SparseMatrix encode_block(const SparseMatrix& m, const BlockPartition& partition,
                          const std::vector<int>& support, const std::vector<double>& coeffs) {
    if (partition.source_cols != m.cols()) {
        throw DimensionError("partition does not match matrix column count");
    }
    if (support.size() != coeffs.size()) {
        throw InvalidPlan("support and coefficients differ in length");
    }
    for (int q : support) {
        if (q < 0 || q >= partition.blocks()) {
            throw InvalidPlan("block index " + std::to_string(q) + " out of range");
        }
    }
    const Index width = partition.max_width();
    std::vector<double> acc(static_cast<std::size_t>(m.rows()), 0.0);
    std::vector<char> touched(static_cast<std::size_t>(m.rows()), 0);
    std::vector<Index> rows_hit;
    std::vector<Index> col_ptr{0};
    std::vector<Index> row_idx;
    std::vector<double> values;
    col_ptr.reserve(static_cast<std::size_t>(width) + 1);
    for (Index c = 0; c < width; ++c) {
        rows_hit.clear();
        for (std::size_t t = 0; t < support.size(); ++t) {
            const int q = support[t];
            if (c >= partition.width(q) || coeffs[t] == 0.0) {
                continue;
            }
            const Index col = partition.offset(q) + c;
            const auto rows = m.col_rows(col);
            const auto vals = m.col_values(col);
            for (std::size_t p = 0; p < rows.size(); ++p) {
                if (!touched[rows[p]]) {
                    touched[rows[p]] = 1;
                    rows_hit.push_back(rows[p]);
                }
                acc[rows[p]] += coeffs[t] * vals[p];
            }
        }
        std::sort(rows_hit.begin(), rows_hit.end());
        for (Index r : rows_hit) {
            if (acc[r] != 0.0) {
                row_idx.push_back(r);
                values.push_back(acc[r]);
            }
            acc[r] = 0.0;
            touched[r] = 0;
        }
        col_ptr.push_back(static_cast<Index>(values.size()));
    }
    return SparseMatrix::from_csc(m.rows(), width, std::move(col_ptr), std::move(row_idx),
                                  std::move(values));
}

std::vector<SparseMatrix> encode_blocks(const SparseMatrix& m, const BlockPartition& partition,
                                        const Supports& supports, const Coefficients& coeffs) {
    if (supports.size() != coeffs.size()) {
        throw InvalidPlan("supports and coefficients differ in worker count");
    }
    std::vector<SparseMatrix> out;
    out.reserve(supports.size());
    for (std::size_t i = 0; i < supports.size(); ++i) {
        out.push_back(encode_block(m, partition, supports[i], coeffs[i]));
    }
    return out;
}

nlohmann::json plan_to_json(const EncodingPlan& plan) {
    nlohmann::json j;
    j["scheme"] = std::string(to_string(plan.scheme));
    j["n"] = plan.n;
    j["k_a"] = plan.k_a;
    j["k_b"] = plan.k_b;
    j["s"] = plan.s;
    j["weights"] = {
        {"n", plan.weights.n},
        {"s", plan.weights.s},
        {"k", plan.weights.k},
        {"omega_hat", plan.weights.omega_hat},
        {"omega_a", plan.weights.omega_a},
        {"omega_b", plan.weights.omega_b},
    };
    j["seed"] = plan.seed;
    j["supports_a"] = plan.supports_a;
    j["supports_b"] = plan.supports_b;
    j["coeffs_a"] = plan.coeffs_a;
    j["coeffs_b"] = plan.coeffs_b;
    if (!plan.nodes.empty()) {
        j["nodes"] = plan.nodes;
    }
    j["assumptions"] = plan.assumptions;
    return j;
}

EncodingPlan plan_from_json(const nlohmann::json& j) {
    EncodingPlan plan;
    try {
        plan.scheme = scheme_from_string(j.at("scheme").get<std::string>());
        plan.n = j.at("n").get<int>();
        plan.k_a = j.at("k_a").get<int>();
        plan.k_b = j.at("k_b").get<int>();
        plan.s = j.at("s").get<int>();
        const auto& w = j.at("weights");
        plan.weights.n = w.at("n").get<int>();
        plan.weights.s = w.at("s").get<int>();
        plan.weights.k = w.at("k").get<int>();
        plan.weights.omega_hat = w.at("omega_hat").get<int>();
        plan.weights.omega_a = w.at("omega_a").get<int>();
        plan.weights.omega_b = w.at("omega_b").get<int>();
        plan.seed = j.at("seed").get<std::uint64_t>();
        plan.supports_a = j.at("supports_a").get<Supports>();
        plan.supports_b = j.value("supports_b", Supports{});
        plan.coeffs_a = j.at("coeffs_a").get<Coefficients>();
        plan.coeffs_b = j.value("coeffs_b", Coefficients{});
        plan.nodes = j.value("nodes", std::vector<double>{});
        plan.assumptions = j.value("assumptions", std::vector<std::string>{});
    } catch (const nlohmann::json::exception& e) {
        throw InvalidPlan(std::string("malformed plan JSON: ") + e.what());
    }
    plan.validate();
    return plan;
}

}  // namespace sparsecode
