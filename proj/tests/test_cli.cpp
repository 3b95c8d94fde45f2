#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sparsecode/cli.hpp"
#include "sparsecode/encoder.hpp"
#include "sparsecode/errors.hpp"

using namespace sparsecode;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args) {
    args.insert(args.begin(), "sparsecode");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("sparsecode_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_F(CliTest, PlanMatchesFigureThreeSupports) {
    const auto r = call({"plan", "--mode", "mm", "--n", "20", "--ka", "4", "--kb", "4", "--s", "4",
                         "--seed", "7", "-o", path("plan.json")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto plan = plan_from_json(nlohmann::json::parse(slurp(path("plan.json"))));
    const auto sup = mm_supports(20, 4, 4, 4, 2, 2);
    EXPECT_EQ(plan.supports_a, sup.a);
    EXPECT_EQ(plan.supports_b, sup.b);
    EXPECT_EQ(plan.seed, 7u);
}

TEST_F(CliTest, PlanIsReproducible) {
    const auto a = call({"plan", "--n", "12", "--ka", "9", "--seed", "3"});
    const auto b = call({"plan", "--n", "12", "--ka", "9", "--seed", "3"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, InconsistentParameters) {
    const auto r = call({"plan", "--n", "12", "--ka", "9", "--s", "2"});
    EXPECT_EQ(r.code, cli::kExitValidation);
    EXPECT_NE(r.err.find("inconsistent"), std::string::npos);
}

TEST_F(CliTest, UnknownFlagAndHelp) {
    EXPECT_EQ(call({"plan", "--bogus"}).code, cli::kExitValidation);
    EXPECT_EQ(call({}).code, cli::kExitValidation);
    const auto h = call({"--help"});
    EXPECT_EQ(h.code, cli::kExitOk);
    EXPECT_NE(h.out.find("compare-weights"), std::string::npos);
}

TEST_F(CliTest, CompareWeightsBundledCases) {
    const auto r = call({"compare-weights", "--cases", "paper", "--csv"});
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    std::map<std::string, std::array<int, 3>> got;
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            f.push_back(cell);
        }
        got[f[0]] = {std::stoi(f[6]), std::stoi(f[8]), std::stoi(f[10])};
    }
    EXPECT_EQ(got["fig6-mv-30-9"], (std::array<int, 3>{7, 10, 7}));
    EXPECT_EQ(got["fig6-mm-36-8"], (std::array<int, 3>{8, 9, 7}));
    EXPECT_EQ(got["fig6-mm-56-14"], (std::array<int, 3>{12, 15, 12}));
    EXPECT_EQ(call({"compare-weights", "--cases", "paper"}).out,
              call({"compare-weights", "--cases", "paper"}).out);
}

TEST_F(CliTest, VerifyPassesAndFails) {
    ASSERT_EQ(call({"plan", "--n", "6", "--ka", "4", "--seed", "1", "-o", path("p.json")}).code, 0);
    const auto ok = call({"verify", "--plan", path("p.json"), "--exhaustive"});
    EXPECT_EQ(ok.code, cli::kExitOk);
    EXPECT_NE(ok.out.find("decodability"), std::string::npos);

    auto j = nlohmann::json::parse(slurp(path("p.json")));
    for (auto& w : j["supports_a"]) {
        w = {0, 1};
    }
    std::ofstream(path("bad.json")) << j.dump();
    EXPECT_EQ(call({"verify", "--plan", path("bad.json"), "--exhaustive"}).code,
              cli::kExitVerification);
}

TEST_F(CliTest, KappaJson) {
    const auto r = call({"kappa", "--n", "12", "--ka", "9", "--trials", "3", "--seed", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["trial_reports"].size(), 3u);
    EXPECT_EQ(j["subsets_evaluated"], 220);
    const auto s = call({"kappa", "--n", "12", "--ka", "9", "--sampled", "--samples", "50"});
    EXPECT_EQ(nlohmann::json::parse(s.out)["subsets_evaluated"], 50);
    EXPECT_EQ(call({"kappa", "--n", "12", "--ka", "9", "--sampled", "--exhaustive"}).code, 1);
}

TEST_F(CliTest, SimulateCsvReproducible) {
    const std::vector<std::string> args{"simulate", "--n", "12", "--ka", "9", "--rows", "200",
                                        "--cols", "180", "--seeds", "1,2", "--slow", "0,3"};
    const auto a = call(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, call(args).out);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 9);
}

TEST_F(CliTest, EncodeWritesWorkerFiles) {
    ASSERT_EQ(call({"plan", "--mode", "mm", "--n", "20", "--ka", "4", "--kb", "4", "-o",
                    path("p.json")})
                  .code,
              0);
    const auto r = call({"encode", "--plan", path("p.json"), "--rows", "40", "--cols", "16",
                         "--bcols", "12", "--density", "0.2", "--out-dir", path("enc")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto manifest = nlohmann::json::parse(slurp(path("enc/manifest.json")));
    EXPECT_EQ(manifest["workers"].size(), 20u);
    EXPECT_TRUE(fs::exists(path("enc/worker_19_B.mtx")));
}

TEST_F(CliTest, LoadInputsErrors) {
    std::ofstream(path("bad.mtx")) << "%%MatrixMarket matrix array real general\n1 1\n1\n";
    ASSERT_EQ(call({"plan", "--n", "6", "--ka", "4", "-o", path("p.json")}).code, 0);
    const auto r = call({"encode", "--plan", path("p.json"), "--a", path("bad.mtx")});
    EXPECT_EQ(r.code, cli::kExitValidation);

    std::ofstream(path("zero.mtx"))
        << "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 0.0\n";
    cli::InputConfig cfg;
    cfg.a_path = path("zero.mtx");
    EXPECT_THROW(cli::load_inputs(cfg), ParseError);
}

TEST_F(CliTest, SyntheticInputDensity) {
    cli::InputConfig cfg;
    cfg.rows = 2000;
    cfg.cols = 1500;
    cfg.density = 0.01;
    cfg.seed = 3;
    const auto w = cli::load_inputs(cfg);
    EXPECT_NEAR(static_cast<double>(w.a.nnz()), 30000.0, 900.0);
    ASSERT_TRUE(w.x.has_value());
}

TEST_F(CliTest, OutputDirectoryOverride) {
    setenv("SPARSECODE_OUT_DIR", dir_.c_str(), 1);
    const auto r = call({"plan", "--n", "6", "--ka", "4", "-o", "env_plan.json"});
    unsetenv("SPARSECODE_OUT_DIR");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(fs::exists(path("env_plan.json")));
}
