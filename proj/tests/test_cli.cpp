#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "maser/cli/commands.hpp"

using namespace maser::cli;
namespace fs = std::filesystem;

namespace {

struct Invocation {
    int status;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "maser");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

class TempDir : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("maser_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST(Cli, PointAtResonance) {
    const Invocation r = invoke({"point"});
    ASSERT_EQ(r.status, exit_code::ok) << r.err;
    EXPECT_NE(r.out.find("\"q\": 1.678112162824127"), std::string::npos);
    EXPECT_NE(r.out.find("\"timestamp\""), std::string::npos);
    EXPECT_NE(r.out.find("\"config\""), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(invoke({"point", "--epsilon", "0"}).status, exit_code::domain);
    EXPECT_NE(invoke({"point", "--epsilon", "0"}).err.find("epsilon"), std::string::npos);
    EXPECT_EQ(invoke({"point", "--n-l", "0.027"}).status, exit_code::domain);
    EXPECT_EQ(invoke({"point", "--gamma-u", "-1"}).status, exit_code::domain);
    EXPECT_EQ(invoke({"point", "--format", "xml"}).status, exit_code::usage);
    EXPECT_EQ(invoke({"point", "--nope"}).status, exit_code::usage);
    EXPECT_EQ(invoke({}).status, exit_code::usage);
    EXPECT_EQ(invoke({"sweep", "--points", "1"}).status, exit_code::usage);
    EXPECT_EQ(invoke({"sweep", "--axis", "omega"}).status, exit_code::usage);
    EXPECT_EQ(invoke({"sweep", "--from", "-1", "--log"}).status, exit_code::usage);
    EXPECT_EQ(invoke({"--help"}).status, exit_code::ok);
}

TEST(Cli, SweepCsvLayout) {
    const Invocation r = invoke({"sweep", "--axis", "delta", "--from", "-0.5", "--to", "0.5", "--points", "3"});
    ASSERT_EQ(r.status, exit_code::ok) << r.err;
    std::istringstream lines(r.out);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    EXPECT_EQ(header, "delta,q,q_cl,b,mean,variance,sigma,rho_ul_re,rho_ul_im,status");
    EXPECT_EQ(first.rfind("-0.5,", 0), 0u);
    EXPECT_EQ(first.substr(first.size() - 3), ",ok");
    EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, SeventeenSignificantDigits) {
    const Invocation r = invoke({"sweep", "--from", "0.1", "--to", "0.2", "--points", "2", "--format", "csv"});
    std::istringstream lines(r.out);
    std::string row;
    std::getline(lines, row);
    std::getline(lines, row);
    const std::string q = row.substr(row.find(',') + 1, row.find(',', row.find(',') + 1) - row.find(',') - 1);
    std::size_t digits = 0;
    for (char c : q) digits += std::isdigit(static_cast<unsigned char>(c)) != 0;
    EXPECT_GE(digits, 16u) << q;
}

TEST_F(TempDir, FlagsOverrideConfigFile) {
    std::ofstream(path("run.cfg")) << "# comment\nepsilon = 0.3\ngamma_u = 1.5\n";
    const Invocation r = invoke({"point", "--config", path("run.cfg"), "--epsilon", "0.2"});
    ASSERT_EQ(r.status, exit_code::ok) << r.err;
    EXPECT_NE(r.out.find("\"epsilon\": 0.2"), std::string::npos);
    EXPECT_NE(r.out.find("\"gamma_u\": 1.5"), std::string::npos);
}

TEST_F(TempDir, UnknownConfigKeyRejected) {
    std::ofstream(path("bad.cfg")) << "epsilon = 0.3\nwavelength = 2\n";
    EXPECT_EQ(invoke({"point", "--config", path("bad.cfg")}).status, exit_code::usage);
}

TEST_F(TempDir, ConfigForAnotherCommandRejected) {
    ASSERT_EQ(invoke({"sweep", "--points", "3", "--format", "json", "--out", path("s.json")}).status, exit_code::ok);
    EXPECT_EQ(invoke({"point", "--config", path("s.json")}).status, exit_code::usage);
}

TEST_F(TempDir, JsonDocumentsRoundTrip) {
    ASSERT_EQ(invoke({"sweep", "--axis", "n_u", "--from", "0.01", "--to", "1", "--points", "9", "--log", "--format",
                      "json", "--epsilon", "0.2", "--out", path("a.json")})
                  .status,
              exit_code::ok);
    ASSERT_EQ(invoke({"sweep", "--config", path("a.json"), "--out", path("b.json")}).status, exit_code::ok);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));

    ASSERT_EQ(invoke({"montecarlo", "--samples", "3000", "--seed", "5", "--with-bound", "--out", path("m.json")}).status,
              exit_code::ok);
    ASSERT_EQ(invoke({"montecarlo", "--config", path("m.json"), "--workers", "3", "--out", path("n.json")}).status,
              exit_code::ok);
    EXPECT_EQ(slurp(path("m.json")), slurp(path("n.json")));
}

TEST_F(TempDir, CsvSidecarRoundTrips) {
    ASSERT_EQ(invoke({"heatmap", "--points", "5", "--delta-points", "3", "--out", path("h.csv")}).status, exit_code::ok);
    ASSERT_TRUE(fs::exists(path("h.csv.config")));
    ASSERT_EQ(invoke({"heatmap", "--config", path("h.csv.config"), "--out", path("g.csv")}).status, exit_code::ok);
    EXPECT_EQ(slurp(path("h.csv")), slurp(path("g.csv")));
    EXPECT_EQ(slurp(path("h.csv")).rfind("delta,epsilon,q,q_cl,abs_rho_ul,im_rho_ul,status\n", 0), 0u);
}

TEST(Cli, VerifyDefaultPasses) {
    const Invocation r = invoke({"verify", "--verify-samples", "30"});
    EXPECT_EQ(r.status, exit_code::ok) << r.err;
    EXPECT_NE(r.out.find("\"passed\": true"), std::string::npos);
}

TEST(Cli, VerifyCatchesPerturbedCoefficient) {
    const Invocation r = invoke({"verify", "--verify-samples", "10", "--perturb-a1", "1e-3"});
    EXPECT_EQ(r.status, exit_code::verify_failed);
    EXPECT_NE(r.err.find("FAIL oracle_mean_quantum"), std::string::npos);
}

TEST(Cli, VerifyZeroToleranceFails) {
    const Invocation r = invoke({"verify", "--verify-samples", "10", "--oracle-tolerance", "0"});
    EXPECT_EQ(r.status, exit_code::verify_failed);
    EXPECT_NE(r.err.find("FAIL oracle_variance_quantum"), std::string::npos);
}

TEST(Cli, ConfigTextIsLoadable) {
    RunConfig cfg;
    cfg.command = Command::montecarlo;
    cfg.samples = 123;
    cfg.params.epsilon = 0.1 + 0.2;  // not exactly representable as written
    const std::string text = to_config_text(cfg);
    EXPECT_NE(text.find("epsilon = 0.30000000000000004"), std::string::npos);
    EXPECT_NE(text.find("samples = 123"), std::string::npos);
}

TEST(Cli, BinaryExitStatus) {
    const std::string cmd = std::string(MASER_BINARY) + " point --epsilon 0 >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    EXPECT_EQ(WEXITSTATUS(raw), exit_code::domain);
}
