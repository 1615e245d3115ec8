#include "dcspec/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace dcspec {

bool ProbeReport::all_passed() const { return failures() == 0; }

int ProbeReport::failures() const {
    int n = 0;
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) ++n;
    return n;
}

const CheckRecord* ProbeReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

CheckStatus parse_status(const std::string& s) {
    if (s == "pass") return CheckStatus::Pass;
    if (s == "fail") return CheckStatus::Fail;
    if (s == "vacuous") return CheckStatus::Vacuous;
    throw std::invalid_argument("unknown check status '" + s + "'");
}

namespace {

// JSON has no representation for non-finite numbers; they are stored as
// strings and restored on read.
json number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

double read_number(const json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    throw std::invalid_argument("expected a number, got '" + s + "'");
}

}  // namespace

void to_json(json& j, const CheckRecord& r) {
    j = json{{"name", r.name},
             {"anchor", r.anchor},
             {"status", to_string(r.status)},
             {"deviation", number(r.deviation)},
             {"tolerance", number(r.tolerance)}};
}

void from_json(const json& j, CheckRecord& r) {
    r.name = j.at("name").get<std::string>();
    r.anchor = j.at("anchor").get<std::string>();
    r.status = parse_status(j.at("status").get<std::string>());
    r.deviation = read_number(j.at("deviation"));
    r.tolerance = read_number(j.at("tolerance"));
}

void to_json(json& j, const ProbeReport& r) {
    j = json{{"command", r.command},
             {"label", r.label},
             {"config", r.config},
             {"checks", r.checks},
             {"passed", r.all_passed()},
             {"results", r.results},
             {"warnings", r.warnings},
             {"seconds", r.seconds},
             {"artifacts", r.artifacts}};
}

void from_json(const json& j, ProbeReport& r) {
    r.command = j.at("command").get<std::string>();
    r.label = j.value("label", std::string{});
    r.config = j.at("config");
    r.checks = j.at("checks").get<std::vector<CheckRecord>>();
    r.results = j.value("results", json::object());
    r.warnings = j.value("warnings", std::vector<std::string>{});
    r.seconds = j.value("seconds", 0.0);
    r.artifacts = j.value("artifacts", std::vector<std::string>{});
}

void to_json(json& j, const GridSpec& g) {
    j = json{{"N", g.N},
             {"L", g.L},
             {"offset", g.offset},
             {"zeroNyquist", g.zeroNyquist},
             {"regularization", g.regularization == RegularizationKind::Bn ? "bn" : "cap"}};
}

void from_json(const json& j, GridSpec& g) {
    g.N = j.at("N").get<int>();
    g.L = j.at("L").get<double>();
    g.offset = j.value("offset", true);
    g.zeroNyquist = j.value("zeroNyquist", false);
    const std::string reg = j.value("regularization", std::string("bn"));
    if (reg == "bn")
        g.regularization = RegularizationKind::Bn;
    else if (reg == "cap")
        g.regularization = RegularizationKind::Cap;
    else
        throw std::invalid_argument("unknown regularization '" + reg + "'");
}

json vec3_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

Vec3 vec3_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-vector");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void write_json(const std::filesystem::path& path, const json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return json::parse(in);
}

void write_report(const std::filesystem::path& path, const ProbeReport& r) { write_json(path, json(r)); }

ProbeReport read_report(const std::filesystem::path& path) { return read_json(path).get<ProbeReport>(); }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<Cell> row) {
    if (row.size() != header_.size()) throw std::invalid_argument("CsvTable: row width does not match the header");
    rows_.push_back(std::move(row));
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

}  // namespace

std::string CsvTable::str() const {
    std::ostringstream os;
    os << std::setprecision(17);
    for (std::size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << quote(header_[i]);
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            std::visit(
                [&](const auto& v) {
                    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::string>)
                        os << quote(v);
                    else
                        os << v;
                },
                row[i]);
        }
        os << '\n';
    }
    return os.str();
}

void CsvTable::write(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << str();
}

}  // namespace dcspec
