#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sparsecode/cli.hpp"
#include "sparsecode/decoder.hpp"
#include "sparsecode/encoder.hpp"
#include "sparsecode/errors.hpp"
#include "sparsecode/hetero.hpp"
#include "sparsecode/oracle.hpp"
#include "sparsecode/simulator.hpp"
#include "sparsecode/stability.hpp"
#include "sparsecode/weights.hpp"

namespace py = pybind11;
using namespace sparsecode;

namespace {

SparseMatrix from_coo(Index rows, Index cols, const std::vector<Index>& r,
                      const std::vector<Index>& c, const std::vector<double>& v) {
    if (r.size() != c.size() || r.size() != v.size()) {
        throw DimensionError("row, col and value arrays differ in length");
    }
    std::vector<Triplet> t;
    t.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        t.push_back({r[i], c[i], v[i]});
    }
    return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

SparseMatrix from_dense(const Eigen::MatrixXd& d) {
    std::vector<Triplet> t;
    for (Index j = 0; j < d.cols(); ++j) {
        for (Index r = 0; r < d.rows(); ++r) {
            if (d(r, j) != 0.0) {
                t.push_back({r, j, d(r, j)});
            }
        }
    }
    return SparseMatrix::from_triplets(d.rows(), d.cols(), std::move(t));
}

py::dict kappa_dict(const KappaReport& r) {
    return py::module_::import("json").attr("loads")(kappa_report_to_json(r).dump());
}

}  // namespace

PYBIND11_MODULE(_sparsecode, m) {
    m.doc() = "Sparse straggler-resilient coded matrix computation";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<InvalidPartition>(m, "InvalidPartition", base.ptr());
    py::register_exception<UnsupportedRegime>(m, "UnsupportedRegime", base.ptr());
    py::register_exception<InfeasibleSplit>(m, "InfeasibleSplit", base.ptr());
    py::register_exception<InvalidMatrix>(m, "InvalidMatrix", base.ptr());
    py::register_exception<InvalidPlan>(m, "InvalidPlan", base.ptr());
    py::register_exception<ProfileError>(m, "ProfileError", base.ptr());
    py::register_exception<ModeError>(m, "ModeError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DecodeFailure>(m, "DecodeFailure", base.ptr());

    // sparse matrices
    py::class_<SparseMatrix>(m, "SparseMatrix")
        .def_static("from_coo", &from_coo, py::arg("rows"), py::arg("cols"), py::arg("row"),
                    py::arg("col"), py::arg("value"))
        .def_static("from_dense", &from_dense, py::arg("dense"))
        .def_static("random", &random_sparse, py::arg("rows"), py::arg("cols"),
                    py::arg("density"), py::arg("seed"))
        .def_property_readonly("rows", &SparseMatrix::rows)
        .def_property_readonly("cols", &SparseMatrix::cols)
        .def_property_readonly("nnz", &SparseMatrix::nnz)
        .def_property_readonly("shape", [](const SparseMatrix& s) { return py::make_tuple(s.rows(), s.cols()); })
        .def("to_dense", &SparseMatrix::to_dense)
        .def("__eq__", [](const SparseMatrix& a, const SparseMatrix& b) { return a == b; })
        .def("__repr__", [](const SparseMatrix& s) {
            return "SparseMatrix(" + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                   ", nnz=" + std::to_string(s.nnz()) + ")";
        });
    m.def("read_matrix_market", &read_matrix_market_file, py::arg("path"));
    m.def("write_matrix_market", &write_matrix_market_file, py::arg("path"), py::arg("matrix"));
    m.def("spmv_t", [](const SparseMatrix& a, const Eigen::VectorXd& x) { return spmv_t(a, x); },
          py::arg("a"), py::arg("x"));
    m.def("spmm_t", &spmm_t, py::arg("a"), py::arg("b"));
    m.def("expected_coded_nnz", &expected_coded_nnz, py::arg("rows"), py::arg("cols"),
          py::arg("k"), py::arg("density"), py::arg("weight"));

    // weights
    m.def("min_weight", &min_weight, py::arg("n"), py::arg("s"));
    m.def("split_weight_mm",
          [](int ka, int kb, int hat) {
              const auto w = split_weight_mm(ka, kb, hat);
              return py::make_tuple(w.omega_a, w.omega_b);
          },
          py::arg("k_a"), py::arg("k_b"), py::arg("omega_hat"));
    m.def("baseline_weight_cyclic",
          [](int ka, int kb, int s) {
              const auto w = baseline_weight_cyclic(ka, kb, s);
              return py::make_tuple(w.omega_a, w.omega_b);
          },
          py::arg("k_a"), py::arg("k_b"), py::arg("s"));

    // plans
    m.def("mv_supports", &mv_supports, py::arg("n"), py::arg("k_a"), py::arg("s"));
    m.def("mm_supports",
          [](int n, int ka, int kb, int s, int wa, int wb) {
              auto p = mm_supports(n, ka, kb, s, wa, wb);
              return py::make_tuple(p.a, p.b);
          },
          py::arg("n"), py::arg("k_a"), py::arg("k_b"), py::arg("s"), py::arg("omega_a"),
          py::arg("omega_b"));

    py::class_<EncodingPlan>(m, "EncodingPlan")
        .def_property_readonly("scheme", [](const EncodingPlan& p) { return std::string(to_string(p.scheme)); })
        .def_readonly("n", &EncodingPlan::n)
        .def_readonly("k_a", &EncodingPlan::k_a)
        .def_readonly("k_b", &EncodingPlan::k_b)
        .def_readonly("s", &EncodingPlan::s)
        .def_readonly("seed", &EncodingPlan::seed)
        .def_readonly("supports_a", &EncodingPlan::supports_a)
        .def_readonly("supports_b", &EncodingPlan::supports_b)
        .def_readonly("coeffs_a", &EncodingPlan::coeffs_a)
        .def_readonly("coeffs_b", &EncodingPlan::coeffs_b)
        .def_readonly("assumptions", &EncodingPlan::assumptions)
        .def_property_readonly("omega", [](const EncodingPlan& p) {
            return py::make_tuple(p.weights.omega_a, p.weights.omega_b);
        })
        .def_property_readonly("is_matrix_vector", &EncodingPlan::is_matrix_vector)
        .def("to_json", [](const EncodingPlan& p) { return plan_to_json(p).dump(2); })
        .def_static("from_json", [](const std::string& s) {
            try {
                return plan_from_json(nlohmann::json::parse(s));
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError(e.what(), 0);
            }
        })
        .def("__eq__", [](const EncodingPlan& a, const EncodingPlan& b) { return a == b; });

    m.def("make_plan",
          [](const std::string& scheme, int n, int ka, int kb, std::optional<int> s,
             std::uint64_t seed) {
              Scheme tag;
              if (scheme == "proposed") {
                  tag = kb == 1 ? Scheme::ProposedMv : Scheme::ProposedMm;
              } else if (scheme == "cyclic") {
                  tag = Scheme::CyclicBaseline;
              } else {
                  tag = scheme_from_string(scheme);
              }
              const int stragglers = s.value_or(n - ka * kb);
              if (stragglers != n - ka * kb) {
                  throw DimensionError("n must equal k_a * k_b + s");
              }
              return make_plan({tag, n, ka, kb, stragglers}, seed);
          },
          py::arg("scheme"), py::arg("n"), py::arg("k_a"), py::arg("k_b") = 1,
          py::arg("s") = py::none(), py::arg("seed") = 0);

    m.def("encode",
          [](const SparseMatrix& a, const EncodingPlan& plan, bool b_side) {
              const int k = b_side ? plan.k_b : plan.k_a;
              const auto& sup = b_side ? plan.supports_b : plan.supports_a;
              const auto& coef = b_side ? plan.coeffs_b : plan.coeffs_a;
              return encode_blocks(a, partition_columns(a, k), sup, coef);
          },
          py::arg("matrix"), py::arg("plan"), py::arg("b_side") = false,
          "Coded blocks for every worker.");

    m.def("decode_mv",
          [](const std::vector<Eigen::VectorXd>& results, const EncodingPlan& plan,
             const std::vector<int>& subset, Index cols) {
              return decode_mv(results, plan, subset, partition_columns(cols, plan.k_a));
          },
          py::arg("results"), py::arg("plan"), py::arg("subset"), py::arg("cols"));
    m.def("decode_mm",
          [](const std::vector<Eigen::MatrixXd>& results, const EncodingPlan& plan,
             const std::vector<int>& subset, Index cols_a, Index cols_b) {
              return decode_mm(results, plan, subset, partition_columns(cols_a, plan.k_a),
                               partition_columns(cols_b, plan.k_b));
          },
          py::arg("results"), py::arg("plan"), py::arg("subset"), py::arg("cols_a"),
          py::arg("cols_b"));

    m.def("decoding_matrix", [](const EncodingPlan& p, const std::vector<int>& sub) {
        return assemble(p, sub).matrix;
    });
    m.def("condition_number", &condition_number, py::arg("matrix"));
    m.def("is_decodable",
          [](const EncodingPlan& p, const std::vector<int>& sub) { return is_decodable(p, sub); },
          py::arg("plan"), py::arg("subset"));

    // stability and verification
    m.def("kappa_worst",
          [](const EncodingPlan& plan, bool sampled, std::uint64_t samples, std::uint64_t cap) {
              KappaOptions o;
              o.mode = sampled ? KappaMode::Sampled : KappaMode::Exhaustive;
              o.samples = samples;
              o.exhaustive_cap = cap;
              return kappa_dict(kappa_worst(plan, o));
          },
          py::arg("plan"), py::arg("sampled") = false, py::arg("samples") = 2000,
          py::arg("cap") = 100000);
    m.def("best_of_trials",
          [](const EncodingPlan& like, int trials, std::uint64_t base_seed) {
              auto [plan, report] =
                  best_of_trials({like.scheme, like.n, like.k_a, like.k_b, like.s}, trials, base_seed);
              return py::make_tuple(plan, kappa_dict(report));
          },
          py::arg("like"), py::arg("trials"), py::arg("base_seed") = 0,
          "Best of `trials` plans shaped like `like`, by worst-case condition number.");
    m.def("exhaustive_decodability",
          [](const EncodingPlan& plan, std::uint64_t cap) {
              const auto r = oracle::exhaustive_decodability(plan, cap);
              return py::make_tuple(r.subsets, r.failures);
          },
          py::arg("plan"), py::arg("cap") = 100000);
    m.def("hall_check",
          [](const EncodingPlan& plan, int max_m) { return oracle::hall_check(plan, max_m).pass; },
          py::arg("plan"), py::arg("max_m"));

    // heterogeneous devices
    m.def("expand_profile",
          [](const std::vector<int>& caps, int split) {
              const auto v = expand_profile({caps, split});
              return py::make_tuple(v.n, v.k_a, v.s, v.ranges);
          },
          py::arg("capacities"), py::arg("split"));
    m.def("partial_recovery",
          [](const std::vector<int>& caps, int split, const std::vector<int>& done,
             std::uint64_t seed) {
              const auto h = assign_hetero({caps, split}, seed);
              const auto r = recover_from_partial(completed_prefixes(h.map, done), h.plan, h.map);
              return py::make_tuple(r.decodable, r.subset);
          },
          py::arg("capacities"), py::arg("split"), py::arg("done"), py::arg("seed") = 0,
          "Decodability when device d finished its first done[d] tasks.");

    // simulation and CLI
    m.def("simulate_csv",
          [](int n, int ka, int kb, int s, Index rows, Index cols_a, Index cols_b, double density,
             const std::vector<std::string>& schemes, const std::vector<std::uint64_t>& seeds) {
              CompareConfig c;
              c.n = n;
              c.k_a = ka;
              c.k_b = kb;
              c.s = s;
              c.rows = rows;
              c.cols_a = cols_a;
              c.cols_b = cols_b;
              c.density = density;
              c.seeds = seeds;
              for (const auto& tag : schemes) {
                  c.schemes.push_back(tag == "proposed"
                                          ? (kb == 1 ? Scheme::ProposedMv : Scheme::ProposedMm)
                                          : scheme_from_string(tag));
              }
              std::ostringstream os;
              write_results_csv(os, compare_schemes(c).rows);
              return os.str();
          },
          py::arg("n"), py::arg("k_a"), py::arg("k_b"), py::arg("s"), py::arg("rows"),
          py::arg("cols_a"), py::arg("cols_b") = 0, py::arg("density") = 0.02,
          py::arg("schemes") = std::vector<std::string>{"proposed", "cyclic-baseline"},
          py::arg("seeds") = std::vector<std::uint64_t>{1});

    m.def("cli",
          [](std::vector<std::string> args) {
              args.insert(args.begin(), "sparsecode");
              std::ostringstream out, err;
              const int code = cli::run(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Runs a CLI command; returns (exit code, stdout, stderr).");
}
