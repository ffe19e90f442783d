#include "speedopt/spline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace speedopt {

namespace {

constexpr double kKnotSpacing = 1.0;        // m, dense table resolution
constexpr double kSmoothingWindow = 50.0;   // m, curvature moving average

// 7-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                               0.0,                 0.4058451513773972,  0.7415311855993945,
                               0.9491079123427585};
constexpr double kGlWeight[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                                 0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                 0.1294849661688697};

// Natural cubic spline through (t_i, y_i): returns second derivatives.
std::vector<double> natural_cubic_m(const std::vector<double>& t, const std::vector<double>& y) {
    const std::size_t n = t.size();
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0), m(n, 0.0);
    b[0] = b[n - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = t[i] - t[i - 1];
        const double h1 = t[i + 1] - t[i];
        a[i] = h0 / 6.0;
        b[i] = (h0 + h1) / 3.0;
        c[i] = h1 / 6.0;
        r[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    }
    // Thomas algorithm
    for (std::size_t i = 1; i < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        r[i] -= w * r[i - 1];
    }
    m[n - 1] = r[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m[i] = (r[i] - c[i] * m[i + 1]) / b[i];
    return m;
}

struct ParametricCubic {
    std::vector<double> t, x, y, mx, my;  // knots, values, second derivatives

    double eval(const std::vector<double>& v, const std::vector<double>& m, double tt,
                int deriv) const {
        const std::size_t n = t.size();
        std::size_t j = std::upper_bound(t.begin(), t.end(), tt) - t.begin();
        j = std::clamp<std::size_t>(j, 1, n - 1) - 1;
        const double h = t[j + 1] - t[j];
        const double A = (t[j + 1] - tt) / h;
        const double B = (tt - t[j]) / h;
        if (deriv == 0)
            return A * v[j] + B * v[j + 1] +
                   ((A * A * A - A) * m[j] + (B * B * B - B) * m[j + 1]) * h * h / 6.0;
        if (deriv == 1)
            return (v[j + 1] - v[j]) / h +
                   (-(3.0 * A * A - 1.0) * m[j] + (3.0 * B * B - 1.0) * m[j + 1]) * h / 6.0;
        return A * m[j] + B * m[j + 1];
    }

    double speed(double tt) const {
        const double dx = eval(x, mx, tt, 1);
        const double dy = eval(y, my, tt, 1);
        return std::hypot(dx, dy);
    }

    // Arc length over [t0, t1] by composite 7-point Gauss-Legendre.
    double arc(double t0, double t1) const {
        double sum = 0.0;
        const double mid = 0.5 * (t0 + t1);
        const double half = 0.5 * (t1 - t0);
        for (int k = 0; k < 7; ++k) sum += kGlWeight[k] * speed(mid + half * kGlNode[k]);
        return sum * half;
    }
};

// Fritsch-Carlson limited slopes for shape-preserving cubic Hermite data.
std::vector<double> limited_slopes(const std::vector<double>& v, double h) {
    const std::size_t n = v.size();
    std::vector<double> d(n, 0.0);
    std::vector<double> sec(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) sec[i] = (v[i + 1] - v[i]) / h;
    d[0] = sec[0];
    d[n - 1] = sec[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (sec[i - 1] * sec[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            // harmonic mean keeps the interpolant free of overshoot
            d[i] = 2.0 * sec[i - 1] * sec[i] / (sec[i - 1] + sec[i]);
        }
    }
    return d;
}

std::vector<double> moving_average(const std::vector<double>& v, int halfwidth) {
    const int n = static_cast<int>(v.size());
    std::vector<double> out(v.size());
    // prefix sums; windows shrink symmetrically near the ends
    std::vector<double> ps(v.size() + 1, 0.0);
    for (int i = 0; i < n; ++i) ps[i + 1] = ps[i] + v[i];
    for (int i = 0; i < n; ++i) {
        const int w = std::min({halfwidth, i, n - 1 - i});
        out[i] = (ps[i + w + 1] - ps[i - w]) / (2 * w + 1);
    }
    return out;
}

}  // namespace

PathSpline PathSpline::from_samples(std::vector<double> north, std::vector<double> east,
                                    std::vector<double> curv, double step) {
    if (north.size() < 2 || north.size() != east.size() || north.size() != curv.size())
        throw std::invalid_argument("PathSpline::from_samples: inconsistent sample arrays");
    PathSpline p;
    p.step_ = step;
    p.length_ = step * static_cast<double>(north.size() - 1);
    p.dnorth_ = limited_slopes(north, step);
    p.deast_ = limited_slopes(east, step);
    p.north_ = std::move(north);
    p.east_ = std::move(east);
    p.curv_ = std::move(curv);
    return p;
}

double PathSpline::hermite(const std::vector<double>& v, const std::vector<double>& d, double s,
                           bool derivative) const {
    const std::size_t n = v.size();
    std::size_t j = static_cast<std::size_t>(s / step_);
    if (j >= n - 1) j = n - 2;
    const double u = (s - step_ * static_cast<double>(j)) / step_;
    const double u2 = u * u, u3 = u2 * u;
    if (!derivative) {
        return (2 * u3 - 3 * u2 + 1) * v[j] + (u3 - 2 * u2 + u) * step_ * d[j] +
               (-2 * u3 + 3 * u2) * v[j + 1] + (u3 - u2) * step_ * d[j + 1];
    }
    return ((6 * u2 - 6 * u) * v[j] + (3 * u2 - 4 * u + 1) * step_ * d[j] +
            (-6 * u2 + 6 * u) * v[j + 1] + (3 * u2 - 2 * u) * step_ * d[j + 1]) /
           step_;
}

double PathSpline::curvature(double s) const {
    if (!(s >= 0.0) || s > length_ + 1e-9)
        throw std::domain_error("PathSpline::curvature: s=" + std::to_string(s) +
                                " outside [0, " + std::to_string(length_) + "]");
    s = std::min(s, length_);
    std::size_t j = static_cast<std::size_t>(s / step_);
    if (j >= curv_.size() - 1) j = curv_.size() - 2;
    const double u = (s - step_ * static_cast<double>(j)) / step_;
    return (1.0 - u) * curv_[j] + u * curv_[j + 1];
}

PlanarPoint PathSpline::position(double s) const {
    if (!(s >= 0.0) || s > length_ + 1e-9)
        throw std::domain_error("PathSpline::position: s outside path");
    s = std::min(s, length_);
    return {hermite(north_, dnorth_, s, false), hermite(east_, deast_, s, false)};
}

PlanarPoint PathSpline::tangent(double s) const {
    if (!(s >= 0.0) || s > length_ + 1e-9)
        throw std::domain_error("PathSpline::tangent: s outside path");
    s = std::min(s, length_);
    return {hermite(north_, dnorth_, s, true), hermite(east_, deast_, s, true)};
}

void PathSpline::export_csv(std::ostream& os, double spacing) const {
    if (spacing <= 0.0) throw std::invalid_argument("export_csv: spacing must be positive");
    os << "s,north,east,curvature\n";
    char line[160];
    double s = 0.0;
    while (true) {
        const PlanarPoint p = position(s);
        std::snprintf(line, sizeof(line), "%.3f,%.6f,%.6f,%.9g\n", s, p.north_m, p.east_m,
                      curvature(s));
        os << line;
        if (s >= length_) break;
        s = std::min(s + spacing, length_);
    }
}

PathSpline fit_spline(const std::vector<PlanarPoint>& points) {
    if (points.size() < 4)
        throw std::invalid_argument("fit_spline: need at least 4 points, got " +
                                    std::to_string(points.size()));

    // chordal parameterization
    ParametricCubic pc;
    pc.t.resize(points.size());
    pc.x.resize(points.size());
    pc.y.resize(points.size());
    pc.t[0] = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        pc.x[i] = points[i].north_m;
        pc.y[i] = points[i].east_m;
        if (i > 0) {
            const double chord =
                std::hypot(points[i].north_m - points[i - 1].north_m,
                           points[i].east_m - points[i - 1].east_m);
            if (chord < 1e-9)
                throw std::invalid_argument(
                    "fit_spline: coincident consecutive points at index " + std::to_string(i));
            pc.t[i] = pc.t[i - 1] + chord;
        }
    }
    pc.mx = natural_cubic_m(pc.t, pc.x);
    pc.my = natural_cubic_m(pc.t, pc.y);

    // cumulative arc length on a refined t grid (4 subdivisions per segment)
    std::vector<double> tg, sg;
    tg.push_back(0.0);
    sg.push_back(0.0);
    for (std::size_t i = 0; i + 1 < pc.t.size(); ++i) {
        for (int k = 1; k <= 4; ++k) {
            const double t1 = pc.t[i] + (pc.t[i + 1] - pc.t[i]) * k / 4.0;
            sg.push_back(sg.back() + pc.arc(tg.back(), t1));
            tg.push_back(t1);
        }
    }
    const double total = sg.back();

    // resample at uniform arc length
    const double step = std::min(kKnotSpacing, total / 64.0);
    const std::size_t n = static_cast<std::size_t>(std::ceil(total / step)) + 1;
    const double h = total / static_cast<double>(n - 1);

    std::vector<double> north(n), east(n);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = h * static_cast<double>(i);
        while (seg + 1 < sg.size() && sg[seg + 1] < target) ++seg;
        // Newton from the bracketing grid entry
        double t = tg[seg];
        double s_here = sg[seg];
        for (int it = 0; it < 30; ++it) {
            const double f = s_here - target;
            if (std::abs(f) < 1e-10) break;
            const double sp = pc.speed(t);
            double tn = t - f / sp;
            tn = std::clamp(tn, tg[seg], seg + 1 < tg.size() ? tg[seg + 1] : tg.back());
            s_here += pc.arc(t, tn);
            t = tn;
        }
        north[i] = pc.eval(pc.x, pc.mx, t, 0);
        east[i] = pc.eval(pc.y, pc.my, t, 0);
    }

    // signed curvature by central differences on the uniform table
    std::vector<double> curv(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double dx = (north[i + 1] - north[i - 1]) / (2.0 * h);
        const double dy = (east[i + 1] - east[i - 1]) / (2.0 * h);
        const double ddx = (north[i + 1] - 2.0 * north[i] + north[i - 1]) / (h * h);
        const double ddy = (east[i + 1] - 2.0 * east[i] + east[i - 1]) / (h * h);
        const double denom = std::pow(dx * dx + dy * dy, 1.5);
        curv[i] = denom > 0.0 ? (dx * ddy - dy * ddx) / denom : 0.0;
    }
    curv[0] = curv[1];
    curv[n - 1] = curv[n - 2];

    const int halfwidth = std::max(1, static_cast<int>(std::round(0.5 * kSmoothingWindow / h)));
    curv = moving_average(curv, halfwidth);
    for (double& c : curv) c = std::abs(c);

    return PathSpline::from_samples(std::move(north), std::move(east), std::move(curv), h);
}

double fit_deviation(const PathSpline& spline, const std::vector<PlanarPoint>& points) {
    // nearest-sample distance; adequate for a dense table
    double worst = 0.0;
    for (const auto& p : points) {
        double best = std::numeric_limits<double>::max();
        const double L = spline.total_length();
        const double coarse = std::max(spline.knot_spacing(), L / 4096.0);
        for (double s = 0.0; s <= L; s += coarse) {
            const PlanarPoint q = spline.position(s);
            best = std::min(best, std::hypot(q.north_m - p.north_m, q.east_m - p.east_m));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace speedopt
