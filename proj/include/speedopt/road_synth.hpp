#pragma once

// Synthetic test roads: a winding leading section (alternating arcs and
// short straights joined by linear curvature ramps) followed by a
// near-straight final section.  Deterministic for a given seed.

#include <cstdint>

#include "speedopt/spline.hpp"

namespace speedopt {

struct SyntheticRoadSpec {
    double total_length_m = 12000.0;
    double winding_fraction = 2.0 / 3.0;  // share of length that winds
    double radius_min_m = 150.0;
    double radius_max_m = 600.0;
    std::uint64_t seed = 7;

    void validate() const;  // throws std::invalid_argument
};

PathSpline generate_synthetic_road(const SyntheticRoadSpec& spec);

}  // namespace speedopt
