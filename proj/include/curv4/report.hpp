#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curv4/scan.hpp"

namespace curv4 {

struct RunConfig {
    std::string metric = "page";
    std::optional<double> a;  // page shape parameter override
    ScanConfig scan;
    int loop_steps = 2048;
    std::string out_dir = "out";
    std::vector<std::string> formats = {"json"};

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
    /// selector string passed to the catalog ("page(a=...)" when a is set)
    std::string metric_selector() const;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string comparator = "<";  // measured <comparator> tolerance
    std::optional<Vec4> location;
    std::string details;
};

CheckResult make_check(const std::string& name, double measured, const std::string& cmp,
                       double tolerance, std::optional<Vec4> location = std::nullopt,
                       std::string details = "");

struct RunReport {
    std::string version = "0.1.0";
    nlohmann::json config_echo;
    std::vector<CheckResult> checks;
    nlohmann::json results = nlohmann::json::object();
    double wall_seconds = 0.0;
    std::string timestamp;

    bool all_passed() const;
    nlohmann::json to_json() const;
};

nlohmann::json to_json(const ScanReport& r);
nlohmann::json to_json(const EinsteinScanReport& r);
nlohmann::json to_json(const EstimatesReport& r);

/// writes report.json (UTF-8, stable key order) into cfg.out_dir
std::filesystem::path write_report(const RunReport& rep, const RunConfig& cfg);

/// field_<name>.csv: header row "names...,value", rows in lexicographic grid
/// order
std::filesystem::path write_field_csv(const std::string& name,
                                      const std::vector<std::string>& coord_names,
                                      const std::vector<std::pair<Vec4, double>>& rows,
                                      const RunConfig& cfg, int coord_count = 4);

std::string iso_timestamp();

}  // namespace curv4
