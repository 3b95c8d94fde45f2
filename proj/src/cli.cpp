#include "sparsecode/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "sparsecode/combinatorics.hpp"
#include "sparsecode/decoder.hpp"
#include "sparsecode/errors.hpp"
#include "sparsecode/oracle.hpp"
#include "sparsecode/stability.hpp"
#include "sparsecode/weights.hpp"

namespace sparsecode::cli {

namespace fs = std::filesystem;

namespace {

std::string output_path(const std::string& path) {
    const char* dir = std::getenv("SPARSECODE_OUT_DIR");
    if (dir == nullptr || *dir == '\0' || path.empty() || fs::path(path).is_absolute()) {
        return path;
    }
    fs::create_directories(dir);
    return (fs::path(dir) / path).string();
}

std::uint64_t default_cap() {
    if (const char* cap = std::getenv("SPARSECODE_EXHAUSTIVE_CAP")) {
        try {
            return std::stoull(cap);
        } catch (const std::exception&) {
            throw Error(std::string("SPARSECODE_EXHAUSTIVE_CAP is not an integer: ") + cap);
        }
    }
    return KappaOptions{}.exhaustive_cap;
}

/// Writes `text` to `path`, or to `out` when path is empty or "-".
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    const auto resolved = output_path(path);
    std::ofstream file(resolved);
    if (!file) {
        throw Error("cannot write " + resolved);
    }
    file << text;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

Scheme parse_scheme(const std::string& tag, int k_b) {
    if (tag == "proposed") {
        return k_b == 1 ? Scheme::ProposedMv : Scheme::ProposedMm;
    }
    if (tag == "cyclic") {
        return Scheme::CyclicBaseline;
    }
    return scheme_from_string(tag);
}

/// Shared n / k_a / k_b / s flags, checked for n = k_a * k_b + s before dispatch.
struct ShapeFlags {
    std::string mode = "mv";
    int n = 0;
    int k_a = 0;
    int k_b = 1;
    std::optional<int> s;

    void add_to(CLI::App* cmd, bool with_mode = true) {
        if (with_mode) {
            cmd->add_option("--mode", mode, "mv (matrix-vector) or mm (matrix-matrix)")
                ->check(CLI::IsMember({"mv", "mm"}));
        }
        cmd->add_option("--n", n, "number of workers")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--ka", k_a, "block columns of A")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--kb", k_b, "block columns of B (matrix-matrix)")->check(CLI::PositiveNumber);
        cmd->add_option("--s", s, "number of stragglers");
    }

    PlanSpec resolve(const std::string& scheme_tag) {
        if (mode == "mv") {
            if (k_b != 1) {
                throw Error("--kb must be 1 in mv mode");
            }
        } else if (k_b < 2) {
            throw Error("mm mode needs --kb >= 2");
        }
        const int k = k_a * k_b;
        if (n < k) {
            throw Error("n = " + std::to_string(n) + " is smaller than k = " + std::to_string(k));
        }
        if (!s) {
            s = n - k;
        }
        if (*s != n - k) {
            throw Error("inconsistent parameters: n = " + std::to_string(n) + " but k + s = " +
                        std::to_string(k + *s));
        }
        return {parse_scheme(scheme_tag, k_b), n, k_a, k_b, *s};
    }
};

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

int cmd_plan(ShapeFlags& shape, const std::string& scheme, std::uint64_t seed, int trials,
             const std::string& out_path, std::ostream& out) {
    const auto spec = shape.resolve(scheme);
    EncodingPlan plan;
    if (trials > 1) {
        KappaOptions opts;
        opts.exhaustive_cap = default_cap();
        if (binomial(spec.n, spec.k_a * spec.k_b) > opts.exhaustive_cap) {
            opts.mode = KappaMode::Sampled;
        }
        auto [best, report] = best_of_trials(spec, trials, seed, opts);
        plan = std::move(best);
        plan.assumptions.push_back("best of " + std::to_string(trials) + " trials from seed " +
                                   std::to_string(seed) + ", kappa_worst " +
                                   fmt_double(report.kappa_worst));
    } else {
        plan = make_plan(spec, seed);
    }
    emit(plan_to_json(plan).dump(2) + "\n", out_path, out);
    return kExitOk;
}

int cmd_encode(const std::string& plan_path, InputConfig inputs, const std::string& out_dir,
               std::ostream& out) {
    const auto plan = plan_from_json(read_json_file(plan_path));
    inputs.matrix_matrix = !plan.is_matrix_vector();
    const auto work = load_inputs(inputs);
    const auto dir = output_path(out_dir);
    fs::create_directories(dir);
    const auto part_a = partition_columns(work.a, plan.k_a);
    const auto coded_a = encode_blocks(work.a, part_a, plan.supports_a, plan.coeffs_a);
    std::vector<SparseMatrix> coded_b;
    if (!plan.is_matrix_vector()) {
        const auto part_b = partition_columns(*work.b, plan.k_b);
        coded_b = encode_blocks(*work.b, part_b, plan.supports_b, plan.coeffs_b);
    }
    nlohmann::json manifest;
    manifest["scheme"] = std::string(to_string(plan.scheme));
    manifest["seed"] = plan.seed;
    manifest["data_seed"] = inputs.seed;
    manifest["workers"] = nlohmann::json::array();
    for (int i = 0; i < plan.n; ++i) {
        nlohmann::json w;
        w["worker"] = i;
        const auto a_file = "worker_" + std::to_string(i) + "_A.mtx";
        write_matrix_market_file((fs::path(dir) / a_file).string(), coded_a[i]);
        w["a_file"] = a_file;
        w["a_nnz"] = coded_a[i].nnz();
        if (!coded_b.empty()) {
            const auto b_file = "worker_" + std::to_string(i) + "_B.mtx";
            write_matrix_market_file((fs::path(dir) / b_file).string(), coded_b[i]);
            w["b_file"] = b_file;
            w["b_nnz"] = coded_b[i].nnz();
        }
        manifest["workers"].push_back(w);
    }
    std::ofstream(fs::path(dir) / "manifest.json") << manifest.dump(2) << "\n";
    out << "encoded " << plan.n << " workers into " << dir << "\n";
    return kExitOk;
}

int cmd_simulate(ShapeFlags& shape, const std::vector<std::string>& schemes,
                 const std::vector<std::uint64_t>& seeds, const InputConfig& dims,
                 const DelayModel& delay, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
    const auto spec = shape.resolve("proposed");
    CompareConfig cfg;
    cfg.n = spec.n;
    cfg.k_a = spec.k_a;
    cfg.k_b = spec.k_b;
    cfg.s = spec.s;
    cfg.density = dims.density;
    cfg.rows = dims.rows;
    cfg.cols_a = dims.cols;
    cfg.cols_b = dims.bcols;
    cfg.seeds = seeds;
    cfg.delay = delay;
    for (const auto& tag : schemes) {
        cfg.schemes.push_back(parse_scheme(tag, spec.k_b));
    }
    if (cfg.rows < 1 || cfg.cols_a < 1 || (spec.k_b > 1 && cfg.cols_b < 1)) {
        throw Error("simulate needs --rows, --cols (and --bcols in mm mode)");
    }
    const auto result = compare_schemes(cfg);
    for (const auto& notice : result.notices) {
        err << "notice: " << notice << "\n";
    }
    std::ostringstream csv;
    write_results_csv(csv, result.rows);
    emit(csv.str(), out_path, out);
    return kExitOk;
}

int cmd_kappa(const std::string& plan_path, ShapeFlags& shape, const std::string& scheme,
              std::uint64_t seed, int trials, bool sampled, std::uint64_t samples,
              const std::string& out_path, std::ostream& out) {
    KappaOptions opts;
    opts.mode = sampled ? KappaMode::Sampled : KappaMode::Exhaustive;
    opts.samples = samples;
    opts.exhaustive_cap = default_cap();
    nlohmann::json j;
    if (!plan_path.empty()) {
        const auto plan = plan_from_json(read_json_file(plan_path));
        j = kappa_report_to_json(kappa_worst(plan, opts));
        j["scheme"] = std::string(to_string(plan.scheme));
    } else {
        if (shape.n == 0) {
            throw Error("kappa needs --plan or --n/--ka/--s");
        }
        const auto spec = shape.resolve(scheme);
        const auto set = all_trials(spec, trials, seed, opts);
        j = kappa_report_to_json(set.reports[set.best_index]);
        j["scheme"] = std::string(to_string(spec.scheme));
        j["trials"] = trials;
        j["base_seed"] = seed;
        auto per_trial = nlohmann::json::array();
        for (const auto& r : set.reports) {
            per_trial.push_back(kappa_report_to_json(r));
        }
        j["trial_reports"] = per_trial;
    }
    emit(j.dump(2) + "\n", out_path, out);
    return kExitOk;
}

std::string weight_table(const std::vector<WeightRow>& rows, bool csv) {
    std::ostringstream os;
    if (csv) {
        os << "case,mode,n,s,k_a,k_b,proposed,proposed_split,cyclic_baseline,cyclic_split,"
              "lower_bound,note\n";
        for (const auto& r : rows) {
            os << r.c.label << ',' << (r.c.matrix_vector ? "mv" : "mm") << ',' << r.c.n << ','
               << r.c.s << ',' << r.c.k_a << ',' << r.c.k_b << ',' << r.proposed << ','
               << r.proposed_a << 'x' << r.proposed_b << ',' << r.cyclic << ',' << r.cyclic_a
               << 'x' << r.cyclic_b << ',' << r.lower_bound << ',' << r.c.note << '\n';
        }
        return os.str();
    }
    os << std::left << std::setw(16) << "case" << std::setw(5) << "mode" << std::setw(5) << "n"
       << std::setw(5) << "s" << std::setw(9) << "k_a x k_b" << std::right << std::setw(10)
       << "proposed" << std::setw(10) << "cyclic" << std::setw(8) << "bound" << "  note\n";
    for (const auto& r : rows) {
        std::ostringstream shape;
        shape << r.c.k_a << 'x' << r.c.k_b;
        std::ostringstream prop;
        prop << r.proposed;
        if (!r.c.matrix_vector) {
            prop << " (" << r.proposed_a << 'x' << r.proposed_b << ')';
        }
        std::ostringstream cyc;
        cyc << r.cyclic;
        if (!r.c.matrix_vector) {
            cyc << " (" << r.cyclic_a << 'x' << r.cyclic_b << ')';
        }
        os << std::left << std::setw(16) << r.c.label << std::setw(5)
           << (r.c.matrix_vector ? "mv" : "mm") << std::setw(5) << r.c.n << std::setw(5) << r.c.s
           << std::setw(9) << shape.str() << std::right << std::setw(10) << prop.str()
           << std::setw(10) << cyc.str() << std::setw(8) << r.lower_bound << "  " << r.c.note
           << '\n';
    }
    return os.str();
}

int cmd_compare_weights(const std::string& cases, ShapeFlags& shape, bool csv,
                        const std::string& out_path, std::ostream& out) {
    std::vector<WeightRow> rows;
    if (cases == "paper") {
        for (const auto& c : bundled_weight_cases()) {
            rows.push_back(compare_weights(c));
        }
    } else if (cases.empty()) {
        if (shape.n == 0) {
            throw Error("compare-weights needs --cases paper or --n/--ka/--s");
        }
        const auto spec = shape.resolve("proposed");
        rows.push_back(compare_weights(
            {"custom", spec.k_b == 1, spec.n, spec.s, spec.k_a, spec.k_b, ""}));
    } else {
        throw Error("unknown case set '" + cases + "'");
    }
    emit(weight_table(rows, csv), out_path, out);
    return kExitOk;
}

int cmd_verify(const std::string& plan_path, bool exhaustive, int max_m, std::uint64_t samples,
               std::ostream& out) {
    const auto plan = plan_from_json(read_json_file(plan_path));
    oracle::EnumerationOptions opts;
    opts.exhaustive_cap = default_cap();
    opts.samples = samples;
    opts.seed = plan.seed;
    const int k = plan.unknowns();
    if (max_m <= 0) {
        max_m = std::min(k, plan.n);
    }
    bool ok = true;
    auto line = [&](const std::string& name, std::uint64_t checked, std::uint64_t failures,
                    const std::string& detail) {
        out << std::left << std::setw(22) << name << std::right << std::setw(10) << checked
            << std::setw(10) << failures << "  " << (failures == 0 ? "PASS" : "FAIL") << "  "
            << detail << '\n';
        ok = ok && failures == 0;
    };
    out << std::left << std::setw(22) << "check" << std::right << std::setw(10) << "subsets"
        << std::setw(10) << "failures" << "  result\n";

    const auto hall = oracle::hall_check(plan, max_m, opts);
    std::uint64_t hall_checked = 0, hall_failures = 0, sampled_levels = 0;
    for (const auto& level : hall.levels) {
        hall_checked += level.checked;
        hall_failures += level.failures;
        sampled_levels += level.exhaustive ? 0 : 1;
    }
    line("hall", hall_checked, hall_failures,
         "m <= " + std::to_string(max_m) + ", " + std::to_string(sampled_levels) +
             " sampled levels");

    if (plan.scheme == Scheme::ProposedMv || plan.scheme == Scheme::ProposedMm) {
        for (const auto& claim : oracle::claim_bounds_check(plan, opts)) {
            line(claim.name, claim.checked, claim.failures,
                 claim.statement + (claim.sampled ? " (sampled)" : ""));
        }
    }
    if (exhaustive) {
        const auto dec = oracle::exhaustive_decodability(plan, opts.exhaustive_cap);
        line("decodability", dec.subsets, dec.failures, "every k-subset full rank");
    }
    out << (ok ? "verification passed\n" : "verification FAILED\n");
    return ok ? kExitOk : kExitVerification;
}

}  // namespace

Workload load_inputs(const InputConfig& config) {
    Workload w;
    if (config.a_path) {
        w.a = read_matrix_market_file(*config.a_path);
    } else {
        if (config.rows < 1 || config.cols < 1) {
            throw Error("synthetic A needs --rows and --cols");
        }
        w.a = random_sparse(config.rows, config.cols, config.density, config.seed);
    }
    if (config.matrix_matrix) {
        if (config.b_path) {
            w.b = read_matrix_market_file(*config.b_path);
        } else {
            if (config.bcols < 1) {
                throw Error("synthetic B needs --bcols");
            }
            w.b = random_sparse(w.a.rows(), config.bcols, config.density, config.seed + 1);
        }
        if (w.b->rows() != w.a.rows()) {
            throw DimensionError("A and B must have the same number of rows");
        }
    } else {
        std::mt19937_64 rng(config.seed + 2);
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::VectorXd x(w.a.rows());
        for (Index r = 0; r < w.a.rows(); ++r) {
            x[r] = normal(rng);
        }
        w.x = std::move(x);
    }
    return w;
}

std::vector<WeightCase> bundled_weight_cases() {
    return {
        {"fig6-mv-30-9", true, 30, 9, 21, 1, ""},
        {"fig6-mm-36-8", false, 36, 8, 4, 7, "assumed factorization k = 28 = 4 x 7"},
        {"fig6-mm-56-14", false, 56, 14, 6, 7, "assumed factorization k = 42 = 6 x 7"},
        {"fig1-mv-6-2", true, 6, 2, 4, 1, ""},
        {"fig2-mv-12-3", true, 12, 3, 9, 1, ""},
        {"fig3-mm-20-4", false, 20, 4, 4, 4, ""},
        {"eval-mm-42-6", false, 42, 6, 6, 6, ""},
    };
}

WeightRow compare_weights(const WeightCase& c) {
    WeightRow r;
    r.c = c;
    r.lower_bound = min_weight(c.n, c.s);
    const auto proposed = proposed_weight_plan(c.k_a, c.matrix_vector ? 1 : c.k_b, c.s);
    if (proposed.n != c.n) {
        throw Error("case " + c.label + ": n != k_a * k_b + s");
    }
    r.proposed_a = proposed.omega_a;
    r.proposed_b = proposed.omega_b;
    r.proposed = proposed.omega();
    const auto cyclic = baseline_weight_cyclic(c.k_a, c.matrix_vector ? 1 : c.k_b, c.s);
    r.cyclic_a = cyclic.omega_a;
    r.cyclic_b = cyclic.omega_b;
    r.cyclic = cyclic.product();
    return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sparse straggler-resilient coded matrix computation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sparsecode 0.1.0");

    // plan
    ShapeFlags plan_shape;
    std::string plan_scheme = "proposed";
    std::uint64_t plan_seed = 0;
    int plan_trials = 1;
    std::string plan_out;
    auto* plan_cmd = app.add_subcommand("plan", "generate an encoding plan (JSON)");
    plan_shape.add_to(plan_cmd);
    plan_cmd->add_option("--scheme", plan_scheme, "proposed | poly | dense-random | cyclic");
    plan_cmd->add_option("--seed", plan_seed, "coefficient seed");
    plan_cmd->add_option("--trials", plan_trials, "keep the best of this many seeds by kappa_worst")
        ->check(CLI::PositiveNumber);
    plan_cmd->add_option("-o,--output", plan_out, "output file (default stdout)");

    // encode
    std::string enc_plan;
    std::string enc_dir = "encoded";
    InputConfig enc_inputs;
    std::string enc_a, enc_b;
    auto* enc_cmd = app.add_subcommand("encode", "encode operands into per-worker blocks");
    enc_cmd->add_option("--plan", enc_plan, "plan JSON")->required();
    enc_cmd->add_option("--a", enc_a, "Matrix Market file for A");
    enc_cmd->add_option("--b", enc_b, "Matrix Market file for B");
    enc_cmd->add_option("--rows", enc_inputs.rows, "synthetic rows");
    enc_cmd->add_option("--cols", enc_inputs.cols, "synthetic columns of A");
    enc_cmd->add_option("--bcols", enc_inputs.bcols, "synthetic columns of B");
    enc_cmd->add_option("--density", enc_inputs.density, "synthetic density")
        ->check(CLI::Range(0.0, 1.0));
    enc_cmd->add_option("--data-seed", enc_inputs.seed, "synthetic data seed");
    enc_cmd->add_option("--out-dir", enc_dir, "output directory");

    // simulate
    ShapeFlags sim_shape;
    std::vector<std::string> sim_schemes{"proposed", "poly", "dense-random", "cyclic"};
    std::vector<std::uint64_t> sim_seeds{1};
    InputConfig sim_dims;
    sim_dims.density = 0.02;
    DelayModel sim_delay;
    std::vector<int> sim_slow;
    std::string sim_out;
    auto* sim_cmd = app.add_subcommand("simulate", "seeded straggler simulation (CSV)");
    sim_shape.add_to(sim_cmd);
    sim_cmd->add_option("--schemes", sim_schemes, "schemes to compare")->delimiter(',');
    sim_cmd->add_option("--seeds", sim_seeds, "seeds, one run each")->delimiter(',');
    sim_cmd->add_option("--density", sim_dims.density, "nonzero probability")
        ->check(CLI::Range(0.0, 1.0));
    sim_cmd->add_option("--rows", sim_dims.rows, "rows t of A and B")->required();
    sim_cmd->add_option("--cols", sim_dims.cols, "columns r of A")->required();
    sim_cmd->add_option("--bcols", sim_dims.bcols, "columns w of B");
    sim_cmd->add_option("--rate", sim_delay.rate, "FLOPs per unit time");
    sim_cmd->add_option("--shift", sim_delay.shift, "shift of the exponential delay");
    sim_cmd->add_option("--slow", sim_slow, "worker ids forced slow")->delimiter(',');
    sim_cmd->add_option("--slowdown", sim_delay.slowdown, "multiplier for forced-slow workers");
    sim_cmd->add_option("-o,--output", sim_out, "CSV file (default stdout)");

    // kappa
    std::string kappa_plan;
    ShapeFlags kappa_shape;
    std::string kappa_scheme = "proposed";
    std::uint64_t kappa_seed = 0;
    int kappa_trials = 1;
    bool kappa_sampled = false;
    std::uint64_t kappa_samples = KappaOptions{}.samples;
    std::string kappa_out;
    auto* kappa_cmd = app.add_subcommand("kappa", "worst-case condition number (JSON)");
    kappa_cmd->add_option("--plan", kappa_plan, "plan JSON");
    kappa_cmd->add_option("--mode", kappa_shape.mode)->check(CLI::IsMember({"mv", "mm"}));
    kappa_cmd->add_option("--n", kappa_shape.n);
    kappa_cmd->add_option("--ka", kappa_shape.k_a);
    kappa_cmd->add_option("--kb", kappa_shape.k_b);
    kappa_cmd->add_option("--s", kappa_shape.s);
    kappa_cmd->add_option("--scheme", kappa_scheme);
    kappa_cmd->add_option("--seed", kappa_seed, "base seed");
    kappa_cmd->add_option("--trials", kappa_trials)->check(CLI::PositiveNumber);
    auto* sampled_flag = kappa_cmd->add_flag("--sampled", kappa_sampled, "sample subsets");
    kappa_cmd->add_flag("--exhaustive", "enumerate every subset (default)")->excludes(sampled_flag);
    kappa_cmd->add_option("--samples", kappa_samples, "subsets drawn in sampled mode");
    kappa_cmd->add_option("-o,--output", kappa_out);

    // compare-weights
    std::string cw_cases;
    ShapeFlags cw_shape;
    bool cw_csv = false;
    std::string cw_out;
    auto* cw_cmd = app.add_subcommand("compare-weights", "proposed vs cyclic weights and the bound");
    cw_cmd->add_option("--cases", cw_cases, "'paper' for the bundled parameter sets");
    cw_cmd->add_option("--mode", cw_shape.mode)->check(CLI::IsMember({"mv", "mm"}));
    cw_cmd->add_option("--n", cw_shape.n);
    cw_cmd->add_option("--ka", cw_shape.k_a);
    cw_cmd->add_option("--kb", cw_shape.k_b);
    cw_cmd->add_option("--s", cw_shape.s);
    cw_cmd->add_flag("--csv", cw_csv, "CSV instead of a table");
    cw_cmd->add_option("-o,--output", cw_out);

    // verify
    std::string ver_plan;
    bool ver_exhaustive = false;
    int ver_max_m = 0;
    std::uint64_t ver_samples = oracle::EnumerationOptions{}.samples;
    auto* ver_cmd = app.add_subcommand("verify", "run the combinatorial and rank oracles");
    ver_cmd->add_option("--plan", ver_plan, "plan JSON")->required();
    ver_cmd->add_flag("--exhaustive", ver_exhaustive, "check every k-subset for full rank");
    ver_cmd->add_option("--max-m", ver_max_m, "largest subset size for the Hall check");
    ver_cmd->add_option("--samples", ver_samples, "samples per level beyond the cap");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();  // program name
    }
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << "sparsecode 0.1.0\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitValidation;
    }

    try {
        if (*plan_cmd) {
            return cmd_plan(plan_shape, plan_scheme, plan_seed, plan_trials, plan_out, out);
        }
        if (*enc_cmd) {
            if (!enc_a.empty()) {
                enc_inputs.a_path = enc_a;
            }
            if (!enc_b.empty()) {
                enc_inputs.b_path = enc_b;
            }
            return cmd_encode(enc_plan, enc_inputs, enc_dir, out);
        }
        if (*sim_cmd) {
            sim_delay.forced_slow.insert(sim_slow.begin(), sim_slow.end());
            return cmd_simulate(sim_shape, sim_schemes, sim_seeds, sim_dims, sim_delay, sim_out,
                                out, err);
        }
        if (*kappa_cmd) {
            return cmd_kappa(kappa_plan, kappa_shape, kappa_scheme, kappa_seed, kappa_trials,
                             kappa_sampled, kappa_samples, kappa_out, out);
        }
        if (*cw_cmd) {
            return cmd_compare_weights(cw_cases, cw_shape, cw_csv, cw_out, out);
        }
        if (*ver_cmd) {
            return cmd_verify(ver_plan, ver_exhaustive, ver_max_m, ver_samples, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}

int run(int argc, char** argv) {
    return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace sparsecode::cli
