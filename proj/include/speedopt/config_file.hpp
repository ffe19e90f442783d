#pragma once

// Mission/matrix configuration from a human-readable key-value document:
// INI-style sections, `key = value` pairs, `#`/`;` comments.  A `[road]`
// section picks the road source; every `[run <label>]` section adds a
// matrix row.  See configs/ for complete examples.

#include <map>
#include <string>
#include <vector>

#include "speedopt/road_synth.hpp"
#include "speedopt/run_matrix.hpp"

namespace speedopt {

struct IniSection {
    std::string name;                         // e.g. "road" or "run min_time"
    std::map<std::string, std::string> kv;
};

// Throws std::runtime_error naming the offending line on parse errors.
std::vector<IniSection> parse_ini(const std::string& text, const std::string& origin);
std::vector<IniSection> parse_ini_file(const std::string& path);

struct RoadConfig {
    std::string source = "synthetic";  // "synthetic" or a waypoint file path
    SyntheticRoadSpec synthetic;
};

struct MatrixConfig {
    RoadConfig road;
    RunMatrix matrix;
};

// Build the full configuration from an INI document.  Unknown keys are
// errors so typos do not silently fall back to defaults.
MatrixConfig load_matrix_config(const std::string& path);

// Load just a [road] section (for `road synth --spec`).
RoadConfig load_road_config(const std::string& path);

PathSpline build_road(const RoadConfig& road);

}  // namespace speedopt
