#include "speedopt/road_synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace speedopt {

namespace {

constexpr double kRampLength = 50.0;  // m, linear curvature transition
constexpr double kStep = 1.0;         // m, table resolution

struct Piece {
    double length;
    double curv_start;  // signed
    double curv_end;
};

}  // namespace

void SyntheticRoadSpec::validate() const {
    if (!(total_length_m > 0.0))
        throw std::invalid_argument("SyntheticRoadSpec: total_length_m must be positive");
    if (!(winding_fraction > 0.0) || !(winding_fraction < 1.0))
        throw std::invalid_argument("SyntheticRoadSpec: winding_fraction must be in (0,1)");
    if (!(radius_min_m > 0.0) || radius_max_m < radius_min_m)
        throw std::invalid_argument("SyntheticRoadSpec: bad radius range");
}

PathSpline generate_synthetic_road(const SyntheticRoadSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> radius_dist(spec.radius_min_m, spec.radius_max_m);
    std::uniform_real_distribution<double> arc_dist(150.0, 400.0);
    std::uniform_real_distribution<double> gap_dist(60.0, 200.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    const double winding_end = spec.winding_fraction * spec.total_length_m;

    std::vector<Piece> pieces;
    double cursor = 0.0;
    auto push = [&](double length, double c0, double c1) {
        if (length <= 0.0) return;
        pieces.push_back({length, c0, c1});
        cursor += length;
    };

    // lead-in straight so missions start feasible at motorway entry speed
    push(std::min(150.0, winding_end), 0.0, 0.0);

    double sign = coin(rng) < 0.5 ? 1.0 : -1.0;
    while (cursor < winding_end) {
        const double curv = sign / radius_dist(rng);
        double arc_len = arc_dist(rng);
        // keep the ramp pair + arc inside the winding section
        const double room = winding_end - cursor - 2.0 * kRampLength;
        if (room <= 0.0) break;
        arc_len = std::min(arc_len, room);
        push(kRampLength, 0.0, curv);
        push(arc_len, curv, curv);
        push(kRampLength, curv, 0.0);
        push(std::min(gap_dist(rng), winding_end - cursor), 0.0, 0.0);
        // mostly alternate turn direction, occasionally repeat
        if (coin(rng) < 0.8) sign = -sign;
    }
    // remainder of the path is straight
    push(spec.total_length_m - cursor, 0.0, 0.0);

    // integrate heading and position over the piecewise-linear curvature
    const std::size_t n = static_cast<std::size_t>(std::ceil(spec.total_length_m / kStep)) + 1;
    const double h = spec.total_length_m / static_cast<double>(n - 1);

    std::vector<double> north(n), east(n), curv(n);
    double theta = 0.0, x = 0.0, y = 0.0;
    double piece_pos = 0.0;
    std::size_t pi = 0;

    auto curv_at = [&](double local, const Piece& p) {
        return p.curv_start + (p.curv_end - p.curv_start) * (p.length > 0 ? local / p.length : 0.0);
    };

    north[0] = 0.0;
    east[0] = 0.0;
    curv[0] = std::abs(pieces.empty() ? 0.0 : pieces[0].curv_start);
    for (std::size_t i = 1; i < n; ++i) {
        // advance one table step, splitting across piece boundaries
        double remaining = h;
        while (remaining > 1e-12 && pi < pieces.size()) {
            const Piece& p = pieces[pi];
            const double take = std::min(remaining, p.length - piece_pos);
            const double c0 = curv_at(piece_pos, p);
            const double c1 = curv_at(piece_pos + take, p);
            // heading is quadratic in s over a linear curvature ramp
            const double theta_mid = theta + take * 0.5 * (c0 + 0.5 * (c1 - c0) * 0.5);
            const double theta_end = theta + take * 0.5 * (c0 + c1);
            // Simpson on the unit tangent
            x += take / 6.0 * (std::cos(theta) + 4.0 * std::cos(theta_mid) + std::cos(theta_end));
            y += take / 6.0 * (std::sin(theta) + 4.0 * std::sin(theta_mid) + std::sin(theta_end));
            theta = theta_end;
            piece_pos += take;
            remaining -= take;
            if (piece_pos >= p.length - 1e-12) {
                ++pi;
                piece_pos = 0.0;
            }
        }
        north[i] = x;
        east[i] = y;
        if (pi < pieces.size()) {
            curv[i] = std::abs(curv_at(piece_pos, pieces[pi]));
        } else {
            curv[i] = 0.0;
        }
    }

    return PathSpline::from_samples(std::move(north), std::move(east), std::move(curv), h);
}

}  // namespace speedopt
