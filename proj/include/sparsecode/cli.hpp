#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sparsecode/simulator.hpp"

namespace sparsecode::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitVerification = 2;

/// Dispatches `plan | encode | simulate | kappa | compare-weights | verify`.
/// argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Where operands come from: Matrix Market files or seeded synthetic matrices.
struct InputConfig {
    std::optional<std::string> a_path;
    std::optional<std::string> b_path;
    Index rows = 0;
    Index cols = 0;
    Index bcols = 0;
    double density = 0.01;
    std::uint64_t seed = 0;
    bool matrix_matrix = false;
};

Workload load_inputs(const InputConfig& config);

/// One row of the weight comparison table.
struct WeightCase {
    std::string label;
    bool matrix_vector = true;
    int n = 0;
    int s = 0;
    int k_a = 0;
    int k_b = 1;
    std::string note;
};

/// Parameter sets of the worked examples and the weight comparison figure.
std::vector<WeightCase> bundled_weight_cases();

struct WeightRow {
    WeightCase c;
    int proposed = 0;
    int proposed_a = 0;
    int proposed_b = 1;
    int cyclic = 0;
    int cyclic_a = 0;
    int cyclic_b = 1;
    int lower_bound = 0;
};

WeightRow compare_weights(const WeightCase& c);

}  // namespace sparsecode::cli
