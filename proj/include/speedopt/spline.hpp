#pragma once

// Arc-length-parameterized planar path with a curvature query.
//
// A PathSpline is a dense table of cubic Hermite pieces over arc length,
// one knot per ~meter, plus a curvature sample per knot.  fit_spline()
// builds one from scattered planar points (parametric natural cubics,
// reparameterized by integrated arc length, finite-difference curvature
// smoothed over a 50 m window); the synthetic road generator builds one
// directly from an exact curvature profile.
//
// Immutable after construction; safe to share across threads.

#include <iosfwd>
#include <vector>

#include "speedopt/geodesy.hpp"

namespace speedopt {

class PathSpline {
  public:
    double total_length() const { return length_; }

    // Unsigned curvature magnitude [1/m].  Throws std::domain_error for
    // s outside [0, total_length].
    double curvature(double s) const;

    PlanarPoint position(double s) const;

    // d(position)/ds; unit magnitude up to interpolation error.
    PlanarPoint tangent(double s) const;

    // Debug export: header "s,north,east,curvature", one row per `spacing`
    // meters plus the final station.
    void export_csv(std::ostream& os, double spacing) const;

    // Assemble from equally spaced arc-length samples.  `curv` entries are
    // unsigned; `step` is the knot spacing.  Positions get Catmull-Rom
    // style slopes limited per the Fritsch-Carlson rule.
    static PathSpline from_samples(std::vector<double> north, std::vector<double> east,
                                   std::vector<double> curv, double step);

    std::size_t knot_count() const { return north_.size(); }
    double knot_spacing() const { return step_; }

  private:
    PathSpline() = default;

    double hermite(const std::vector<double>& v, const std::vector<double>& d, double s,
                   bool derivative) const;

    double step_ = 0.0;
    double length_ = 0.0;
    std::vector<double> north_, east_;    // knot positions
    std::vector<double> dnorth_, deast_;  // knot slopes wrt s
    std::vector<double> curv_;            // unsigned curvature at knots
};

// Fit a path through planar points.  Requires at least 4 points; throws
// std::invalid_argument on short input and on coincident consecutive
// points (degenerate geometry).
PathSpline fit_spline(const std::vector<PlanarPoint>& points);

// Largest deviation between the fitted spline and the input points (the
// fit interpolates, so this reports resampling error only).
double fit_deviation(const PathSpline& spline, const std::vector<PlanarPoint>& points);

}  // namespace speedopt
