#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sparsecode/sparse_matrix.hpp"
#include "sparsecode/weights.hpp"

namespace sparsecode {

enum class Scheme {
    ProposedMv,
    ProposedMm,
    Poly,
    DenseRandom,
    CyclicBaseline,
};

std::string_view to_string(Scheme scheme);
Scheme scheme_from_string(std::string_view tag);

using Supports = std::vector<std::vector<int>>;
using Coefficients = std::vector<std::vector<double>>;

/// Per-worker support sets and coefficients of one coded scheme.
///
/// A plan is matrix-vector when `supports_b` is empty; k_b is then 1.
/// coeffs_a[i][j] multiplies block supports_a[i][j].
struct EncodingPlan {
    Scheme scheme = Scheme::ProposedMv;
    int n = 0;
    int k_a = 0;
    int k_b = 1;
    int s = 0;
    WeightPlan weights;
    Supports supports_a;
    Supports supports_b;
    Coefficients coeffs_a;
    Coefficients coeffs_b;
    std::uint64_t seed = 0;
    /// Evaluation nodes (polynomial code only).
    std::vector<double> nodes;
    /// Free-form provenance notes carried into the JSON file.
    std::vector<std::string> assumptions;

    bool is_matrix_vector() const noexcept { return supports_b.empty(); }
    int unknowns() const noexcept { return k_a * k_b; }

    /// Throws InvalidPlan if shapes, index ranges or coefficients are inconsistent.
    void validate() const;

    friend bool operator==(const EncodingPlan&, const EncodingPlan&) = default;
};

/// Worker windows of the proposed matrix-vector scheme: worker i < k_a gets the
/// cyclic window starting at i, worker i >= k_a the window starting at i * omega_a,
/// all indices modulo k_a. Requires n = k_a + s and s <= k_a.
Supports mv_supports(int n, int k_a, int s);

struct PairedSupports {
    Supports a;
    Supports b;
};

/// Worker windows of the proposed matrix-matrix scheme (k = k_a * k_b).
PairedSupports mm_supports(int n, int k_a, int k_b, int s, int omega_a, int omega_b);

/// Fills coeffs_a / coeffs_b with i.i.d. standard normals drawn in worker order
/// (A-side then B-side for each worker), redrawing exact zeros. Sets plan.seed.
void draw_coefficients(EncodingPlan& plan, std::uint64_t seed);

EncodingPlan make_proposed_mv_plan(int n, int k_a, int s, std::uint64_t seed);
EncodingPlan make_proposed_mm_plan(int n, int k_a, int k_b, int s, std::uint64_t seed);

/// Polynomial code: full weight, worker i evaluates at node z_i with A-side
/// powers z^j and B-side powers z^(j * k_a). Nodes are n equispaced reals in [-1, 1].
/// k_b == 1 yields the matrix-vector form.
EncodingPlan baseline_poly_plan(int n, int k_a, int k_b);

/// Dense random code: full weight with i.i.d. normal coefficients.
EncodingPlan baseline_dense_random_plan(int n, int k_a, int k_b, std::uint64_t seed);

/// Cyclic sparse baseline with weight from baseline_weight_cyclic. Worker i uses
/// the A window starting at i mod k_a and, for matrix-matrix, the B window
/// starting at floor(i / k_a) mod k_b.
EncodingPlan baseline_cyclic_plan(int n, int k_a, int k_b, int s, std::uint64_t seed);

/// Shape of a plan, enough to rebuild it for any seed.
struct PlanSpec {
    Scheme scheme = Scheme::ProposedMv;
    int n = 0;
    int k_a = 0;
    int k_b = 1;
    int s = 0;
};

EncodingPlan make_plan(const PlanSpec& spec, std::uint64_t seed);

/// Sparse linear combination of the support blocks of `m` for one worker.
/// Blocks narrower than the widest block are zero-padded on the right.
SparseMatrix encode_block(const SparseMatrix& m, const BlockPartition& partition,
                          const std::vector<int>& support, const std::vector<double>& coeffs);

/// encode_block for every worker.
std::vector<SparseMatrix> encode_blocks(const SparseMatrix& m, const BlockPartition& partition,
                                        const Supports& supports, const Coefficients& coeffs);

nlohmann::json plan_to_json(const EncodingPlan& plan);
EncodingPlan plan_from_json(const nlohmann::json& j);

}  // namespace sparsecode
