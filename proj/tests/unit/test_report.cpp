#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "dcspec/field_io.hpp"
#include "dcspec/report.hpp"
#include "test_util.hpp"

using namespace dcspec;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::path(testing::TempDir()) / ("dcspec_report_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST(CheckRecord, StatusFromDeviation) {
    EXPECT_TRUE(make_check("a", "x = y", 1e-13, 1e-12).passed());
    EXPECT_FALSE(make_check("a", "x = y", 2e-12, 1e-12).passed());
    EXPECT_TRUE(make_check("a", "x = y", 0.0, 0.0).passed());
    EXPECT_FALSE(make_check("a", "x = y", std::nan(""), 1.0).passed());
}

TEST(ProbeReport, JsonRoundTripKeepsEveryDigit) {
    ProbeReport r;
    r.command = "verify";
    r.label = "identity";
    r.config = json{{"command", "verify"}, {"seed", 3}};
    r.add(make_check("one", "a = b", 0.1 + 0.2, 1.0));
    r.add(make_check("two", "c <= d", std::numeric_limits<double>::infinity(), 1.0));
    CheckRecord v{"three", "vacuous bound", CheckStatus::Vacuous, std::nan(""), 1e-3};
    r.add(v);
    r.results = json{{"value", 1.0 / 3.0}};
    r.warnings = {"careful"};
    r.artifacts = {"verify.json"};
    r.seconds = 0.5;
    EXPECT_FALSE(r.all_passed());
    EXPECT_EQ(r.failures(), 1);
    ASSERT_NE(r.find("three"), nullptr);
    EXPECT_EQ(r.find("missing"), nullptr);

    const fs::path dir = scratch("roundtrip");
    write_report(dir / "r.json", r);
    const ProbeReport back = read_report(dir / "r.json");
    ASSERT_EQ(back.checks.size(), 3u);
    EXPECT_EQ(back.checks[0].deviation, 0.1 + 0.2);
    EXPECT_TRUE(std::isinf(back.checks[1].deviation));
    EXPECT_TRUE(std::isnan(back.checks[2].deviation));
    EXPECT_EQ(back.checks[2].status, CheckStatus::Vacuous);
    EXPECT_EQ(back.results["value"].get<double>(), 1.0 / 3.0);
    EXPECT_EQ(back.warnings, r.warnings);
    EXPECT_EQ(back.artifacts, r.artifacts);
    EXPECT_EQ(back.config, r.config);
    EXPECT_EQ(read_json(dir / "r.json")["passed"], false);
}

TEST(ProbeReport, VacuousCountsAsPassed) {
    ProbeReport r;
    r.add(CheckRecord{"v", "", CheckStatus::Vacuous, 0, 0});
    r.add(make_check("p", "", 0, 0));
    EXPECT_TRUE(r.all_passed());
    EXPECT_EQ(parse_status("vacuous"), CheckStatus::Vacuous);
    EXPECT_EQ(parse_status("pass"), CheckStatus::Pass);
    EXPECT_EQ(parse_status("fail"), CheckStatus::Fail);
}

TEST(GridSpecJson, RoundTrip) {
    GridSpec g;
    g.N = 12;
    g.L = 7.25;
    g.offset = false;
    g.zeroNyquist = true;
    g.regularization = RegularizationKind::Cap;
    const GridSpec back = json(g).get<GridSpec>();
    EXPECT_EQ(back, g);
    const Vec3 v(0.1, -2.0, 3.5);
    EXPECT_EQ(vec3_from_json(vec3_json(v)), v);
}

TEST(CsvTable, FormatsRows) {
    CsvTable t({"n", "value", "name"});
    t.add_row({4LL, 0.1, std::string("plain")});
    t.add_row({8LL, 1.0 / 3.0, std::string("with,comma")});
    EXPECT_EQ(t.rows(), 2u);
    const std::string s = t.str();
    EXPECT_EQ(s.substr(0, s.find('\n')), "n,value,name");
    EXPECT_NE(s.find("4,0.10000000000000001,plain"), std::string::npos);
    EXPECT_NE(s.find("\"with,comma\""), std::string::npos);
    EXPECT_THROW(t.add_row({1LL}), std::invalid_argument);
}

TEST(FieldIo, RoundTripWithMetadata) {
    GridSpec g;
    g.N = 4;
    g.L = 3.0;
    const Field f = random_field(Lattice{g, 3}, 4, 7);
    const fs::path dir = scratch("field");
    const FieldFiles files = write_field(dir / "psi", f, json{{"eigenvalue", 0.25}});
    EXPECT_TRUE(fs::exists(files.data));
    EXPECT_TRUE(fs::exists(files.sidecar));
    EXPECT_EQ(fs::file_size(files.data), f.size() * sizeof(cplx));
    json meta;
    const Field back = read_field(files.sidecar, &meta);
    EXPECT_TRUE(back.same_shape(f));
    EXPECT_EQ(back.vector(), f.vector());
    EXPECT_EQ(meta["eigenvalue"].get<double>(), 0.25);
    const Field byStem = read_field(dir / "psi");
    EXPECT_EQ(byStem.vector(), f.vector());
}

TEST(FieldIo, DetectsTruncatedData) {
    GridSpec g;
    g.N = 2;
    g.L = 1.0;
    const Field f = random_field(Lattice{g, 3}, 4, 1);
    const fs::path dir = scratch("truncated");
    const FieldFiles files = write_field(dir / "x", f);
    fs::resize_file(files.data, fs::file_size(files.data) - 16);
    EXPECT_THROW(read_field(files.sidecar), std::runtime_error);
}
