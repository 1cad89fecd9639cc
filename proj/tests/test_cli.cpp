#include "json.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

std::string binary() {
    const char* p = std::getenv("MOMENT_FIBER_CLI");
    return p ? p : MOMENT_FIBER_CLI;
}

// Runs the CLI through the shell; `tail` is appended verbatim (redirections).
Run run(const std::string& args, const std::string& tail = "2>/dev/null", const std::string& env = "") {
    const std::string cmd = env + " '" + binary() + "' " + args + " " + tail;
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json run_json(const std::string& args) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << args;
    return json::parse(r.out);
}

}  // namespace

TEST(CliAnalyze, OppositePair) {
    const auto j = run_json("analyze '[[1],[-1]]' --format json");
    EXPECT_TRUE(j["properties"]["stable"]);
    EXPECT_TRUE(j["properties"]["visible"]);
    EXPECT_TRUE(j["properties"]["irreducible"]);
    EXPECT_TRUE(j["properties"]["normal"]);
    EXPECT_EQ(j["fiber_dimension"], 3);
}

TEST(CliAnalyze, ZeroWeightHasTwoComponents) {
    const auto j = run_json("analyze '{\"weights\": [[1],[0]]}' --format json");
    EXPECT_EQ(j["components"]["count"], "2");
    EXPECT_FALSE(j["properties"]["normal"]);
}

TEST(CliAnalyze, NonVisibleWithWitness) {
    const auto j = run_json("analyze '[[1],[1],[-2]]' --format json");
    EXPECT_TRUE(j["properties"]["stable"]);
    EXPECT_FALSE(j["properties"]["visible"]);
    EXPECT_TRUE(j["certificates"]["visible"].contains("reason"));
    EXPECT_FALSE(j["certificates"]["nonvisible_witness"].is_null());
}

TEST(CliAnalyze, FileAndStdinInputs) {
    const std::string path = ::testing::TempDir() + "mf_weights.csv";
    {
        std::ofstream f(path);
        f << "# opposite pair\n1\n-1\n";
    }
    EXPECT_EQ(run_json("analyze '" + path + "' --format json")["fiber_dimension"], 3);
    const auto r = run("analyze - --format json", "< '" + path + "' 2>/dev/null");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["rank"], 1);
}

TEST(CliAnalyze, FloatHintAndCap) {
    const auto j = run_json("analyze '[[1,0,0],[0,1,0],[0,0,1]]' --format json --max-components 4 --float-hint");
    EXPECT_EQ(j["components"]["count"], "8");
    EXPECT_FALSE(j["components"]["listed"]);
    const auto k = run_json("analyze '[[1],[-1]]' --format json --float-hint");
    EXPECT_TRUE(k["certificates"]["stable"].contains("inside_approx"));
}

TEST(CliAnalyze, MalformedInputExitsTwoWithPosition) {
    auto r = run("analyze '[[1],[2,'", "2>&1");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("line 1"), std::string::npos);
    r = run("analyze '1,2\n3,q'", "2>&1");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("line 2, column 3"), std::string::npos);
}

TEST(CliAnalyze, LargeNonVisibleWitnessIsRefused) {
    std::string rows = "[";
    for (int i = 0; i < 24; ++i) rows += "[1],";
    rows += "[-2]]";
    EXPECT_EQ(run("analyze '" + rows + "' --format json").code, 3);
}

TEST(CliAnalyze, ColorFollowsEnvironment) {
    const auto on = run("analyze '[[1],[0]]'", "2>/dev/null", "MOMENT_FIBER_COLOR=1");
    EXPECT_NE(on.out.find("\033["), std::string::npos);
    const auto off = run("analyze '[[1],[0]]'", "2>/dev/null", "MOMENT_FIBER_COLOR=0");
    EXPECT_EQ(off.out.find("\033["), std::string::npos);
    EXPECT_NE(off.out.find("components: 2"), std::string::npos);
}

TEST(CliKac, E6OrderNine) {
    const auto j = run_json("kac 'E6 twist=1 labels=1,1,0,1,1,1,1' --format json");
    EXPECT_EQ(j["m"], 9);
    EXPECT_EQ(j["delta"], 1);
}

TEST(CliKac, A2AllOnes) {
    const auto j = run_json("kac 'A2 twist=1 labels=1,1,1' --format json");
    EXPECT_EQ(j["m"], 3);
    EXPECT_EQ(j["dims"], (json{2, 3, 3}));
}

TEST(CliKac, E7ScanHasNoViolations) {
    const auto r = run("kac 'E7 twist=1 scan' --delta-ge 2 --check-order-not-div 9,14 --format json");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_TRUE(j["violations"].empty());
    EXPECT_FALSE(j["entries"].empty());
    // Separate tokens are accepted as well.
    EXPECT_EQ(run("kac E8 twist=1 scan --delta-ge 2 --check-order-not-div 9,14").code, 0);
}

TEST(CliKac, ViolatedOrderCheckExitsOne) {
    const auto r = run("kac 'E7 twist=1 scan' --delta-ge 2 --check-order-not-div 2");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("violations"), std::string::npos);
}

TEST(CliKac, TwistedLabelingNeedsFlag) {
    EXPECT_EQ(run("kac 'E6 twist=2 labels=1,0,1,1,1' --format json").code, 3);
    const auto j = run_json("kac 'E6 twist=2 labels=1,0,1,1,1' --format json --allow-twisted");
    EXPECT_EQ(j["m"], 12);
    EXPECT_EQ(j["delta"], 1);
    EXPECT_EQ(run_json("kac 'E6 twist=2 labels=1,1,1,1,1' --format json")["delta"], 1);
    EXPECT_EQ(run("kac 'E6 twist=2 scan'").code, 3);
}

TEST(CliKac, BadSpecExitsTwo) {
    EXPECT_EQ(run("kac 'E6 twist=1 labels=1,1'").code, 2);
    EXPECT_EQ(run("kac 'Q6 scan'").code, 2);
}

TEST(CliSelftest, DefaultRunPasses) {
    const auto r = run("selftest");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(CliSelftest, SeedAndJobs) {
    const auto a = run("selftest --seed 9 --count 40 --max-n 6");
    const auto b = run("--jobs 3 selftest --seed 9 --count 40 --max-n 6");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(CliSelftest, InjectedFaultFailsWithMatrixEcho) {
    const auto r = run("selftest --count 5 --inject-fault");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("MISMATCH components seed=0 S=[[0]]"), std::string::npos);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(CliUsage, BadInvocationsExitTwo) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("analyze").code, 2);
    EXPECT_EQ(run("analyze '[[1]]' --format yaml").code, 2);
    EXPECT_EQ(run("selftest --max-n 9").code, 2);
}

TEST(CliUsage, HelpExitsZero) { EXPECT_EQ(run("--help", ">/dev/null 2>&1").code, 0); }
