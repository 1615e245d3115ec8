#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "dcspec/runner.hpp"
#include "dcspec/verify.hpp"

using namespace dcspec;
namespace fs = std::filesystem;

namespace {

RunConfig config(const std::string& command, const std::string& dir, json params = json::object()) {
    RunConfig c;
    c.command = command;
    c.outDir = (fs::path(testing::TempDir()) / ("dcspec_runner_" + dir)).string();
    fs::remove_all(c.outDir);
    c.params = std::move(params);
    return c;
}

int count_lines(const fs::path& p) {
    std::ifstream in(p);
    int n = 0;
    for (std::string line; std::getline(in, line);) ++n;
    return n;
}

}  // namespace

TEST(ExactSuite, AllIdentitiesHoldExactly) {
    const auto recs = exact_identity_suite();
    ASSERT_FALSE(recs.empty());
    for (const auto& r : recs) {
        EXPECT_TRUE(r.passed()) << r.name;
        EXPECT_EQ(r.deviation, 0.0) << r.name;
    }
}

TEST(ExactSuite, PerturbedBetaBreaksAnticommutation) {
    bool anticommutationFailed = false, vecMatPassed = false;
    for (const auto& r : exact_identity_suite(1, true)) {
        if (r.name == "anticommutation") anticommutationFailed = !r.passed();
        if (r.name == "vec-mat") vecMatPassed = r.passed();
    }
    EXPECT_TRUE(anticommutationFailed);
    EXPECT_TRUE(vecMatPassed);  // identities that do not involve beta are unaffected
}

TEST(VerifyAll, OnlyTheFormRecordsFail) {
    const ProbeReport r = verify_all();
    EXPECT_EQ(r.label, "identity");
    std::vector<std::string> failing;
    for (const auto& c : r.checks)
        if (!c.passed()) failing.push_back(c.name);
    EXPECT_EQ(failing, (std::vector<std::string>{"form-equality-plus", "form-equality-minus"}));
    for (const char* name : {"anticommutation", "kron-sum-blocks", "vec-mat", "orthogonal-S", "block-canonical-form",
                             "two-body-symbol", "dense-oracle-hdc", "dense-oracle-plus", "dense-oracle-minus",
                             "exchange-invariance", "square-identity"})
        EXPECT_NE(r.find(name), nullptr) << name;
}

TEST(RunConfig, JsonRoundTrip) {
    RunConfig c = config("hardy", "cfg", json{{"which", "ha"}, {"trials", 3}});
    c.seed = 42;
    c.tolerances["hardy-win"] = 1e-2;
    const RunConfig back = json(c).get<RunConfig>();
    EXPECT_EQ(back.command, c.command);
    EXPECT_EQ(back.outDir, c.outDir);
    EXPECT_EQ(back.seed, 42u);
    EXPECT_EQ(back.params, c.params);
    EXPECT_EQ(back.tolerances, c.tolerances);
}

TEST(Run, RejectsUnknownCommandsAndParameters) {
    EXPECT_THROW(run(config("nonsense", "bad1")), std::invalid_argument);
    EXPECT_THROW(run(config("assemble", "bad2", json{{"bogus", 1}})), std::invalid_argument);
    EXPECT_THROW(run(config("eig", "bad3", json{{"op", "sideways"}})), std::invalid_argument);
    const auto& cmds = run_commands();
    for (const char* c : {"verify", "assemble", "eig", "weyl-probe", "hardy", "square-check", "hydrogenic",
                          "kappa-scan", "model"})
        EXPECT_NE(std::find(cmds.begin(), cmds.end(), c), cmds.end()) << c;
}

TEST(Run, WeylProbeWritesThreeMonotoneRows) {
    const RunConfig c = config("weyl-probe", "weyl", json{{"n", {4, 8, 16}}});
    const ProbeReport r = run(c);
    EXPECT_TRUE(r.all_passed());
    const fs::path csv = fs::path(c.outDir) / "weyl.csv";
    ASSERT_TRUE(fs::exists(csv));
    EXPECT_EQ(count_lines(csv), 4);
    ASSERT_NE(r.find("weyl-decreasing"), nullptr);
    EXPECT_TRUE(r.find("weyl-decreasing")->passed());
    EXPECT_TRUE(fs::exists(fs::path(c.outDir) / "weyl-probe.json"));
}

TEST(Run, EigOnTwoBodyOperatorMatchesDense) {
    const ProbeReport r = run(config("eig", "eig", json{{"op", "hdc"}, {"grid", 2}}));
    ASSERT_NE(r.find("eig-dense-oracle"), nullptr);
    EXPECT_TRUE(r.find("eig-dense-oracle")->passed());
    EXPECT_TRUE(r.find("eig-residuals")->passed());
}

TEST(Run, ToleranceOverrideChangesStatus) {
    RunConfig c = config("square-check", "tol", json{{"grid", 8}});
    c.tolerances["square-plus"] = 0.0;
    c.tolerances["no-such-check"] = 1.0;
    const ProbeReport r = run(c);
    ASSERT_NE(r.find("square-plus"), nullptr);
    EXPECT_EQ(r.find("square-plus")->tolerance, 0.0);
    EXPECT_FALSE(r.warnings.empty());
}

TEST(Rerun, ReproducesEveryDeviation) {
    const RunConfig c = config("hardy", "rerun", json{{"which", "ha"}, {"trials", 4}, {"grid", 16}});
    run(c);
    const RerunResult rr = rerun(fs::path(c.outDir) / "hardy.json");
    EXPECT_TRUE(rr.differences.empty());
    EXPECT_TRUE(rr.threadsMatch);
    EXPECT_EQ(rr.original.config["params"], rr.repeated.config["params"]);
    EXPECT_TRUE(fs::exists(fs::path(c.outDir) / "rerun" / "hardy.json"));
}

TEST(Rerun, CompareReportsFlagsChanges) {
    ProbeReport a;
    a.command = "x";
    a.add(make_check("c", "", 1e-13, 1e-12));
    ProbeReport b = a;
    EXPECT_TRUE(compare_reports(a, b).empty());
    b.checks[0].deviation = 2e-13;
    EXPECT_EQ(compare_reports(a, b).size(), 1u);
    b = a;
    b.results["v"] = 1;
    EXPECT_EQ(compare_reports(a, b).size(), 1u);
}
