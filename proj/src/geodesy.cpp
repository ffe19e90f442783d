#include "speedopt/geodesy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace speedopt {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

void check_waypoint(const GeoWaypoint& w, std::size_t index) {
    if (!std::isfinite(w.latitude_deg) || !std::isfinite(w.longitude_deg) ||
        w.latitude_deg < -90.0 || w.latitude_deg > 90.0 || w.longitude_deg < -180.0 ||
        w.longitude_deg > 180.0) {
        throw std::invalid_argument("latlon_to_ned: invalid waypoint at index " +
                                    std::to_string(index));
    }
}

}  // namespace

std::vector<PlanarPoint> latlon_to_ned(const std::vector<GeoWaypoint>& waypoints,
                                       const GeoWaypoint& origin) {
    if (waypoints.size() < 2)
        throw std::invalid_argument("latlon_to_ned: need at least two waypoints");
    check_waypoint(origin, static_cast<std::size_t>(-1));

    const double cos_lat0 = std::cos(origin.latitude_deg * kDegToRad);
    std::vector<PlanarPoint> out;
    out.reserve(waypoints.size());
    for (std::size_t i = 0; i < waypoints.size(); ++i) {
        check_waypoint(waypoints[i], i);
        PlanarPoint p;
        p.north_m = kEarthRadius * (waypoints[i].latitude_deg - origin.latitude_deg) * kDegToRad;
        p.east_m = kEarthRadius * cos_lat0 *
                   (waypoints[i].longitude_deg - origin.longitude_deg) * kDegToRad;
        out.push_back(p);
    }
    return out;
}

GeoWaypoint ned_to_latlon(const PlanarPoint& point, const GeoWaypoint& origin) {
    const double cos_lat0 = std::cos(origin.latitude_deg * kDegToRad);
    GeoWaypoint w;
    w.latitude_deg = origin.latitude_deg + point.north_m / kEarthRadius / kDegToRad;
    w.longitude_deg = origin.longitude_deg + point.east_m / (kEarthRadius * cos_lat0) / kDegToRad;
    return w;
}

}  // namespace speedopt
