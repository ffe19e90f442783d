#pragma once

// Geodetic waypoints and the local tangent-plane projection used to turn
// them into a flat north/east description of a road.

#include <vector>

namespace speedopt {

struct GeoWaypoint {
    double latitude_deg = 0.0;   // WGS84, [-90, 90]
    double longitude_deg = 0.0;  // WGS84, [-180, 180]
};

struct PlanarPoint {
    double north_m = 0.0;
    double east_m = 0.0;
};

// WGS84 mean earth radius (IUGG R1).
inline constexpr double kEarthRadius = 6371008.7714;

// Equirectangular tangent-plane projection about `origin`:
//   north = R * dlat, east = R * cos(lat0) * dlon.
// Sub-0.1% error at motorway scale; the down component is dropped.
// Throws std::invalid_argument on fewer than two waypoints or
// out-of-range coordinates.
std::vector<PlanarPoint> latlon_to_ned(const std::vector<GeoWaypoint>& waypoints,
                                       const GeoWaypoint& origin);

// Inverse of the projection, for round-trip checks and debug output.
GeoWaypoint ned_to_latlon(const PlanarPoint& point, const GeoWaypoint& origin);

}  // namespace speedopt
