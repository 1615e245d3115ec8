#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dcspec/check.hpp"
#include "dcspec/clifford.hpp"
#include "dcspec/grid.hpp"

namespace dcspec {

using json = nlohmann::json;

// Machine-readable outcome of one command. `config` is the fully resolved
// run configuration (every default filled in), so the report alone is
// enough to repeat the run.
struct ProbeReport {
    std::string command;
    std::string label;  // "evidence" for numerical probes, "identity" for exact checks
    json config = json::object();
    std::vector<CheckRecord> checks;
    json results = json::object();
    std::vector<std::string> warnings;
    double seconds = 0.0;
    std::vector<std::string> artifacts;  // paths relative to the output directory

    bool all_passed() const;  // vacuous records count as passed
    int failures() const;
    void add(CheckRecord r) { checks.push_back(std::move(r)); }
    void add(const std::vector<CheckRecord>& rs) { checks.insert(checks.end(), rs.begin(), rs.end()); }
    const CheckRecord* find(const std::string& name) const;
};

void to_json(json& j, const CheckRecord& r);
void from_json(const json& j, CheckRecord& r);
void to_json(json& j, const ProbeReport& r);
void from_json(const json& j, ProbeReport& r);
void to_json(json& j, const GridSpec& g);
void from_json(const json& j, GridSpec& g);

CheckStatus parse_status(const std::string& s);
json vec3_json(const Vec3& v);
Vec3 vec3_from_json(const json& j);

// Doubles are written with enough digits to round-trip exactly.
void write_json(const std::filesystem::path& path, const json& j);
json read_json(const std::filesystem::path& path);
void write_report(const std::filesystem::path& path, const ProbeReport& r);
ProbeReport read_report(const std::filesystem::path& path);

// Plain CSV: one header line, then one line per row. Numbers use 17
// significant digits; strings containing separators are quoted.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    using Cell = std::variant<double, long long, std::string>;
    void add_row(std::vector<Cell> row);
    std::size_t rows() const { return rows_.size(); }
    const std::vector<std::string>& header() const { return header_; }
    void write(const std::filesystem::path& path) const;
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

}  // namespace dcspec
