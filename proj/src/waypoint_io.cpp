#include "speedopt/waypoint_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace speedopt {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<GeoWaypoint> parse_csv(std::istream& in, const std::string& path) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path + ": empty waypoint file");
    {
        std::string header = trim(line);
        std::transform(header.begin(), header.end(), header.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (header != "lat,lon")
            throw std::runtime_error(path + ": expected header 'lat,lon', got '" + line + "'");
    }
    std::vector<GeoWaypoint> out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto comma = t.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path + ": row " + std::to_string(row) + ": missing comma");
        auto parse_number = [&](const std::string& field) {
            const std::string f = trim(field);
            std::size_t used = 0;
            const double v = std::stod(f, &used);  // throws on empty/garbage
            if (used != f.size()) throw std::invalid_argument("trailing characters");
            return v;
        };
        try {
            GeoWaypoint w;
            w.latitude_deg = parse_number(t.substr(0, comma));
            w.longitude_deg = parse_number(t.substr(comma + 1));
            out.push_back(w);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": row " + std::to_string(row) +
                                     ": cannot parse '" + t + "'");
        }
    }
    return out;
}

std::vector<GeoWaypoint> parse_geojson(std::istream& in, const std::string& path) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": invalid JSON: " + e.what());
    }
    // accept a Feature wrapping a LineString, or a bare geometry
    const nlohmann::json* geom = &doc;
    if (doc.value("type", "") == "Feature") {
        if (!doc.contains("geometry"))
            throw std::runtime_error(path + ": Feature without geometry");
        geom = &doc["geometry"];
    }
    if (geom->value("type", "") != "LineString")
        throw std::runtime_error(path + ": expected a LineString geometry");
    if (!geom->contains("coordinates") || !(*geom)["coordinates"].is_array())
        throw std::runtime_error(path + ": LineString without coordinates");

    std::vector<GeoWaypoint> out;
    std::size_t idx = 0;
    for (const auto& pos : (*geom)["coordinates"]) {
        if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number())
            throw std::runtime_error(path + ": bad coordinate at position " +
                                     std::to_string(idx));
        // GeoJSON order is [lon, lat]
        out.push_back({pos[1].get<double>(), pos[0].get<double>()});
        ++idx;
    }
    return out;
}

}  // namespace

std::vector<GeoWaypoint> ingest_waypoint_file(const std::string& path, WaypointFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::vector<GeoWaypoint> out = format == WaypointFormat::csv ? parse_csv(in, path)
                                                                 : parse_geojson(in, path);
    if (out.size() < 2)
        throw std::runtime_error(path + ": need at least 2 waypoints, got " +
                                 std::to_string(out.size()));
    return out;
}

std::vector<GeoWaypoint> ingest_waypoint_file(const std::string& path) {
    const auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == "csv") return ingest_waypoint_file(path, WaypointFormat::csv);
    if (ext == "geojson" || ext == "json")
        return ingest_waypoint_file(path, WaypointFormat::geojson);
    throw std::runtime_error(path + ": unknown waypoint format (expected .csv or .geojson)");
}

}  // namespace speedopt
