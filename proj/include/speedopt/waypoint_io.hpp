#pragma once

// Waypoint ingestion from local files: CSV ("lat,lon" header, decimal
// degrees) or GeoJSON (one LineString Feature/geometry, [lon, lat] order).

#include <string>
#include <vector>

#include "speedopt/geodesy.hpp"

namespace speedopt {

enum class WaypointFormat { csv, geojson };

// Parse errors name the offending row/position; fewer than two points is
// an error as well.  Throws std::runtime_error.
std::vector<GeoWaypoint> ingest_waypoint_file(const std::string& path, WaypointFormat format);

// Convenience: pick the format from the file extension (.csv vs .geojson/.json).
std::vector<GeoWaypoint> ingest_waypoint_file(const std::string& path);

}  // namespace speedopt
