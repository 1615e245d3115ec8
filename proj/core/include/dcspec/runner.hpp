#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dcspec/report.hpp"

namespace dcspec {

// Everything needed to repeat a command. `params` holds the subcommand
// flags by name; keys that are absent take their documented defaults, and
// the report echoes the resolved set so a rerun sees the same values.
struct RunConfig {
    std::string command;
    std::string outDir = "dcspec-out";
    std::uint64_t seed = 1;
    json params = json::object();
    std::map<std::string, double> tolerances;  // check name -> replacement tolerance
};

void to_json(json& j, const RunConfig& c);
void from_json(const json& j, RunConfig& c);

const std::vector<std::string>& run_commands();

// Runs one command, writes `<outDir>/<command>.json` plus any curves and
// fields, and returns the report. Throws std::invalid_argument for unknown
// commands or parameters and for invalid parameter combinations.
ProbeReport run(const RunConfig& cfg);

struct RerunResult {
    ProbeReport original;
    ProbeReport repeated;
    std::vector<std::string> differences;  // empty when every deviation and result matched exactly
    bool threadsMatch = true;
};

// Re-executes the configuration embedded in a report. An empty `outDir`
// writes into `<original outDir>/rerun`.
RerunResult rerun(const std::filesystem::path& reportPath, const std::string& outDir = {});

// Compares checks and results of two reports field by field; timing is
// ignored.
std::vector<std::string> compare_reports(const ProbeReport& a, const ProbeReport& b);

}  // namespace dcspec
