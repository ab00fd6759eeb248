#include "curv4/report.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "curv4/errors.hpp"

namespace curv4 {

namespace {

nlohmann::json vec4_json(const Vec4& x) {
    return nlohmann::json::array({x(0), x(1), x(2), x(3)});
}

nlohmann::json vec3_json(const Vector3& x) { return nlohmann::json::array({x(0), x(1), x(2)}); }

nlohmann::json scan_config_json(const ScanConfig& c) {
    return {{"grid", c.grid},
            {"sphere_points", c.sphere_points},
            {"refine_iters", c.refine_iters},
            {"fd_step", c.fd_step},
            {"margin", c.margin},
            {"seed", c.seed},
            {"threads", c.threads},
            {"consistency_grid", c.consistency_grid}};
}

ScanConfig scan_config_from_json(const nlohmann::json& j, ScanConfig base = {}) {
    ScanConfig c = base;
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (g.is_number_integer()) c.grid.fill(g.get<int>());
        else for (int mu = 0; mu < 4; ++mu) c.grid[mu] = g.at(mu).get<int>();
    }
    if (j.contains("sphere_points")) c.sphere_points = j.at("sphere_points").get<int>();
    if (j.contains("refine_iters")) c.refine_iters = j.at("refine_iters").get<int>();
    if (j.contains("fd_step")) c.fd_step = j.at("fd_step").get<double>();
    if (j.contains("margin")) c.margin = j.at("margin").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    if (j.contains("consistency_grid")) c.consistency_grid = j.at("consistency_grid").get<int>();
    return c;
}

}  // namespace

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j = scan_config_json(scan);
    j["metric"] = metric;
    if (a) j["a"] = *a;
    else j["a"] = nullptr;
    j["loop_steps"] = loop_steps;
    j["out"] = out_dir;
    j["formats"] = formats;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    c.scan = scan_config_from_json(j);
    if (j.contains("metric")) c.metric = j.at("metric").get<std::string>();
    if (j.contains("a") && !j.at("a").is_null()) c.a = j.at("a").get<double>();
    if (j.contains("loop_steps")) c.loop_steps = j.at("loop_steps").get<int>();
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("formats")) c.formats = j.at("formats").get<std::vector<std::string>>();
    return c;
}

std::string RunConfig::metric_selector() const {
    if (!a) return metric;
    const auto open = metric.find('(');
    const std::string base = open == std::string::npos ? metric : metric.substr(0, open);
    std::ostringstream out;
    out.precision(17);
    out << base << "(a=" << *a << ")";
    return out.str();
}

CheckResult make_check(const std::string& name, double measured, const std::string& cmp,
                       double tolerance, std::optional<Vec4> location, std::string details) {
    CheckResult c;
    c.name = name;
    c.measured = measured;
    c.tolerance = tolerance;
    c.comparator = cmp;
    c.location = location;
    c.details = std::move(details);
    c.passed = cmp == "<"   ? measured < tolerance
               : cmp == "<="  ? measured <= tolerance
               : cmp == ">"   ? measured > tolerance
               : cmp == ">=" ? measured >= tolerance
                             : false;
    return c;
}

bool RunReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc = {{"name", c.name},
                             {"passed", c.passed},
                             {"measured", c.measured},
                             {"tolerance", c.tolerance},
                             {"comparator", c.comparator},
                             {"details", c.details}};
        if (c.location) jc["location"] = vec4_json(*c.location);
        arr.push_back(jc);
    }
    return {{"version", version},
            {"config", config_echo},
            {"checks", arr},
            {"results", results},
            {"wall_seconds", wall_seconds},
            {"timestamp", timestamp}};
}

nlohmann::json to_json(const ScanReport& r) {
    return {{"functional", r.functional},
            {"metric", r.metric},
            {"min", r.min_value},
            {"max", r.max_value},
            {"argmin", {{"x", vec4_json(r.argmin.x)},
                         {"phi_asd", vec3_json(r.argmin.phi)},
                         {"psi_asd", vec3_json(r.argmin.psi)}}},
            {"est_error", r.est_error},
            {"fd_error", r.fd_error},
            {"refine_delta", r.refine_delta},
            {"refine_trace", r.refine_trace},
            {"recheck", r.recheck_value},
            {"cell_mean", r.cell_mean},
            {"cell_stdev", r.cell_stdev},
            {"cells", r.cells},
            {"config", scan_config_json(r.config)}};
}

nlohmann::json to_json(const EinsteinScanReport& r) {
    return {{"metric", r.metric},
            {"max_residual", r.max_residual},
            {"arg_max", vec4_json(r.arg_max)},
            {"s_mean", r.s_mean},
            {"s_stdev", r.s_stdev},
            {"cells", r.cells},
            {"config", scan_config_json(r.config)}};
}

nlohmann::json to_json(const EstimatesReport& r) {
    return {{"metric", r.metric},
            {"first_estimate_max", r.first_estimate_max},
            {"first_estimate_arg", vec4_json(r.first_estimate_arg)},
            {"second_estimate_max", r.second_estimate_max},
            {"second_estimate_arg", vec4_json(r.second_estimate_arg)},
            {"stilde_min", r.stilde_min},
            {"stilde_max", r.stilde_max},
            {"consistency_max", r.consistency_max},
            {"cells", r.cells},
            {"config", scan_config_json(r.config)}};
}

std::filesystem::path write_report(const RunReport& rep, const RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    const std::filesystem::path path = std::filesystem::path(cfg.out_dir) / "report.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << rep.to_json().dump(2) << "\n";
    return path;
}

std::filesystem::path write_field_csv(const std::string& name,
                                      const std::vector<std::string>& coord_names,
                                      const std::vector<std::pair<Vec4, double>>& rows,
                                      const RunConfig& cfg, int coord_count) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    const std::filesystem::path path =
        std::filesystem::path(cfg.out_dir) / ("field_" + name + ".csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.precision(17);
    for (int i = 0; i < coord_count; ++i) out << coord_names.at(i) << ",";
    out << "value\n";
    for (const auto& [x, v] : rows) {
        for (int i = 0; i < coord_count; ++i) out << x(i) << ",";
        out << v << "\n";
    }
    return path;
}

}  // namespace curv4
