#include "speedopt/cost.hpp"

namespace speedopt {

std::string to_string(CostKind kind) {
    switch (kind) {
        case CostKind::minimum_time: return "minimum_time";
        case CostKind::jerk: return "jerk";
        case CostKind::acceleration: return "acceleration";
        case CostKind::ms: return "ms";
        case CostKind::adaptive_ms: return "adaptive_ms";
    }
    return "unknown";
}

CostKind cost_kind_from_string(const std::string& name) {
    if (name == "minimum_time") return CostKind::minimum_time;
    if (name == "jerk") return CostKind::jerk;
    if (name == "acceleration") return CostKind::acceleration;
    if (name == "ms") return CostKind::ms;
    if (name == "adaptive_ms") return CostKind::adaptive_ms;
    throw std::invalid_argument("unknown cost kind '" + name + "'");
}

}  // namespace speedopt
