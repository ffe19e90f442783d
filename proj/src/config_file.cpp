#include "speedopt/config_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "speedopt/geodesy.hpp"
#include "speedopt/waypoint_io.hpp"

namespace speedopt {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad number '" + v + "' for key '" + key + "'");
    }
}

long to_long(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const long l = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing");
        return l;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad integer '" + v + "' for key '" + key + "'");
    }
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::runtime_error("config: bad boolean '" + v + "' for key '" + key + "'");
}

void apply_road(const IniSection& sec, RoadConfig& road) {
    for (const auto& [key, value] : sec.kv) {
        if (key == "source") road.source = value;
        else if (key == "length_m") road.synthetic.total_length_m = to_double(value, key);
        else if (key == "winding_fraction") road.synthetic.winding_fraction = to_double(value, key);
        else if (key == "radius_min_m") road.synthetic.radius_min_m = to_double(value, key);
        else if (key == "radius_max_m") road.synthetic.radius_max_m = to_double(value, key);
        else if (key == "seed") road.synthetic.seed = static_cast<std::uint64_t>(to_long(value, key));
        else throw std::runtime_error("config: unknown key '" + key + "' in [road]");
    }
}

void apply_limits(const IniSection& sec, Limits& limits) {
    for (const auto& [key, value] : sec.kv) {
        if (key == "a_max_total_mps2") limits.a_max_total = to_double(value, key);
        else if (key == "j_max_mps3") limits.j_max = to_double(value, key);
        else if (key == "v_min_mps") limits.v_min = to_double(value, key);
        else if (key == "v_max_mps") limits.v_max = to_double(value, key);
        else throw std::runtime_error("config: unknown key '" + key + "' in [limits]");
    }
}

void apply_mpc(const IniSection& sec, MissionConfig& config, CostSpec& defaults) {
    for (const auto& [key, value] : sec.kv) {
        if (key == "horizon_nodes") config.horizon_nodes = static_cast<int>(to_long(value, key));
        else if (key == "start_v_mps") config.start_v = to_double(value, key);
        else if (key == "start_a_mps2") config.start_a = to_double(value, key);
        else if (key == "kkt_tolerance") config.kkt_tolerance = to_double(value, key);
        else if (key == "max_iterations") config.max_iterations = static_cast<int>(to_long(value, key));
        else if (key == "c_t") defaults.c_t = to_double(value, key);
        else if (key == "c_u") defaults.c_u = to_double(value, key);
        else if (key == "linear_jerk_term") defaults.linear_jerk_term = to_bool(value, key);
        else if (key == "squared_lateral_term") defaults.squared_lateral_term = to_bool(value, key);
        else if (key == "accel_constraint") {
            if (value == "modulus") config.accel_mode = AccelConstraintMode::modulus;
            else if (value == "per_axis") config.accel_mode = AccelConstraintMode::per_axis;
            else throw std::runtime_error("config: accel_constraint must be modulus|per_axis");
        } else if (key == "adaptive_gate") {
            if (value == "rolled") config.gate_mode = AdaptiveGateMode::rolled;
            else if (value == "anchor") config.gate_mode = AdaptiveGateMode::anchor;
            else throw std::runtime_error("config: adaptive_gate must be rolled|anchor");
        } else {
            throw std::runtime_error("config: unknown key '" + key + "' in [mpc]");
        }
    }
}

void apply_sickness(const IniSection& sec, ConflictModelParams& params) {
    for (const auto& [key, value] : sec.kv) {
        if (key == "tau_sensed_s") params.tau_sensed = to_double(value, key);
        else if (key == "tau_vertical_s") params.tau_vertical = to_double(value, key);
        else if (key == "hill_half_mps2") params.hill_half = to_double(value, key);
        else if (key == "msi_gain_pct") params.msi_gain = to_double(value, key);
        else if (key == "mu_slow_s") params.mu_slow = to_double(value, key);
        else if (key == "mu_fast_s") params.mu_fast = to_double(value, key);
        else if (key == "slow_weight") params.slow_weight = to_double(value, key);
        else throw std::runtime_error("config: unknown key '" + key + "' in [sickness]");
    }
}

RunRow parse_run(const IniSection& sec, const CostSpec& defaults) {
    RunRow row;
    row.label = trim(sec.name.substr(3));  // after "run"
    if (row.label.empty()) throw std::runtime_error("config: [run] section without a label");
    row.cost = defaults;
    for (const auto& [key, value] : sec.kv) {
        if (key == "kind") row.cost.kind = cost_kind_from_string(value);
        else if (key == "c_t") row.cost.c_t = to_double(value, key);
        else if (key == "c_u") row.cost.c_u = to_double(value, key);
        else if (key == "c_j") row.cost.c_j = to_double(value, key);
        else if (key == "c_a") row.cost.c_a = to_double(value, key);
        else if (key == "c_ms") row.cost.c_ms = to_double(value, key);
        else throw std::runtime_error("config: unknown key '" + key + "' in [" + sec.name + "]");
    }
    return row;
}

}  // namespace

std::vector<IniSection> parse_ini(const std::string& text, const std::string& origin) {
    std::vector<IniSection> sections;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                         ": unterminated section header");
            sections.push_back({trim(t.substr(1, t.size() - 2)), {}});
            if (sections.back().name.empty())
                throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                         ": empty section name");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        if (sections.empty())
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": key outside any section");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": empty key or value");
        if (!sections.back().kv.emplace(key, value).second)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                                     key + "'");
    }
    return sections;
}

std::vector<IniSection> parse_ini_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ini(buf.str(), path);
}

MatrixConfig load_matrix_config(const std::string& path) {
    MatrixConfig cfg;
    CostSpec defaults;
    const auto sections = parse_ini_file(path);
    // settings first so [run] rows see the final defaults regardless of order
    for (const auto& sec : sections) {
        if (sec.name == "road") apply_road(sec, cfg.road);
        else if (sec.name == "limits") apply_limits(sec, cfg.matrix.config.limits);
        else if (sec.name == "mpc") apply_mpc(sec, cfg.matrix.config, defaults);
        else if (sec.name == "sickness") apply_sickness(sec, cfg.matrix.config.sickness);
        else if (sec.name.rfind("run ", 0) != 0 && sec.name != "run")
            throw std::runtime_error(path + ": unknown section [" + sec.name + "]");
    }
    for (const auto& sec : sections) {
        if (sec.name.rfind("run ", 0) == 0 || sec.name == "run")
            cfg.matrix.rows.push_back(parse_run(sec, defaults));
    }
    cfg.matrix.validate();
    return cfg;
}

RoadConfig load_road_config(const std::string& path) {
    RoadConfig road;
    for (const auto& sec : parse_ini_file(path)) {
        if (sec.name == "road") apply_road(sec, road);
        // other sections are allowed so a matrix config doubles as a road spec
    }
    return road;
}

PathSpline build_road(const RoadConfig& road) {
    if (road.source == "synthetic") return generate_synthetic_road(road.synthetic);
    const auto waypoints = ingest_waypoint_file(road.source);
    return fit_spline(latlon_to_ned(waypoints, waypoints.front()));
}

}  // namespace speedopt
