#include "raylander/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace raylander {

namespace {

constexpr double kPi = std::numbers::pi;

// 1 - kappa(d) = sum_{m>=0} 2 t^{2m+2} / ((2m+1)(2m+3)) with t = e^{-d};
// every term positive, geometric convergence for t < 1. Used for d >= 2
// (t <= 0.135, ~20 terms reach full precision).
double complement_series(double d) {
    const double t = std::exp(-d);
    const double t2 = t * t;
    double term = t2;
    double sum = 0.0;
    for (int m = 0; m < 64; ++m) {
        const double add = 2.0 * term / ((2.0 * m + 1.0) * (2.0 * m + 3.0));
        sum += add;
        if (add < sum * 1e-18) break;
        term *= t2;
    }
    return sum;
}

} // namespace

double kappa_contraction(double d) {
    if (!(d >= 0.0)) {
        throw DomainError("negative-d", "contraction estimate needs d >= 0");
    }
    if (d == 0.0) return 0.0;
    if (d < 1e-6) {
        // sinh/tanh form; each factor is accurate near 0 where the raw
        // expression cancels catastrophically.
        return -std::sinh(d) * std::log(std::tanh(0.5 * d));
    }
    if (d < 2.0) {
        const double em1 = std::expm1(d); // e^d - 1
        const double sinh_d = std::sinh(d);
        return -sinh_d * std::log(em1 / (em1 + 2.0));
    }
    const double kappa = 1.0 - complement_series(d);
    // The true value never attains 1; keep the double below it too.
    return std::min(kappa, std::nextafter(1.0, 0.0));
}

double kappa_complement(double d) {
    if (!(d >= 0.0)) {
        throw DomainError("negative-d", "contraction estimate needs d >= 0");
    }
    if (d == 0.0) return 1.0;
    if (d < 2.0) return 1.0 - kappa_contraction(d);
    return complement_series(d);
}

double puncture_ratio(double x) {
    if (!(x > 0.0) || !(x < 1.0)) {
        throw DomainError("ratio-argument-out-of-range",
                          "puncture ratio needs x strictly inside (0, 1)");
    }
    const double u = 1.0 - x;                               // exact for x >= 0.5
    const double lx = x > 0.5 ? std::log1p(-u) : std::log(x);
    const double ratio = -2.0 * x * lx / (u * (1.0 + x));
    return std::min(ratio, std::nextafter(1.0, 0.0));
}

KappaBound kappa_annulus(double r_n, double delta) {
    if (!(r_n > 0.0) || !(r_n < 1.0)) {
        throw DomainError("radius-out-of-range",
                          "annulus radius must lie strictly inside (0, 1)");
    }
    if (!(delta >= 0.0)) {
        throw DomainError("negative-delta", "ladder gap delta must be >= 0");
    }
    const double d = delta + kPi / std::abs(std::log(r_n));
    return KappaBound{d, kappa_contraction(d), KappaProvenance::prop27};
}

PunctureLadder PunctureLadder::from_points(std::vector<Complex> pts) {
    if (pts.size() < 2) {
        throw DomainError("ladder-too-short", "a puncture ladder needs at least two points");
    }
    const ModelDomain dstar = ModelDomain::punctured_unit_disk();
    PunctureLadder ladder;
    ladder.points = std::move(pts);
    ladder.radii.reserve(ladder.points.size());
    for (Complex p : ladder.points) {
        if (!dstar.contains(p)) {
            throw DomainError("point-outside-domain",
                              "ladder points must lie in the punctured unit disk");
        }
        ladder.radii.push_back(std::abs(p));
    }
    for (std::size_t i = 1; i < ladder.radii.size(); ++i) {
        if (!(ladder.radii[i] < ladder.radii[i - 1])) {
            throw DomainError("ladder-not-decreasing",
                              "ladder radii must be strictly decreasing");
        }
    }
    double delta = 0.0;
    for (std::size_t i = 1; i < ladder.points.size(); ++i) {
        delta = std::max(delta, distance(dstar, ladder.points[i - 1], ladder.points[i]));
    }
    ladder.delta = delta;
    return ladder;
}

namespace {

void check_ladder_range(Complex z, const PunctureLadder& ladder) {
    if (ladder.points.empty()) {
        throw DomainError("empty-ladder", "puncture ladder has no points");
    }
    const double r = std::abs(z);
    const double slack = 1e-12;
    if (r > ladder.radii.front() * (1.0 + slack) || r < ladder.radii.back() * (1.0 - slack)) {
        std::ostringstream os;
        os << "|z| = " << r << " outside the ladder range [" << ladder.radii.back() << ", "
           << ladder.radii.front() << "]";
        throw DomainError("z-outside-ladder-range", os.str());
    }
}

} // namespace

double distance_to_ladder(Complex z, const PunctureLadder& ladder) {
    check_ladder_range(z, ladder);
    const ModelDomain dstar = ModelDomain::punctured_unit_disk();
    double best = std::numeric_limits<double>::infinity();
    for (Complex w : ladder.points) {
        if (z == w) return 0.0;
        best = std::min(best, distance(dstar, z, w));
    }
    return best;
}

double ladder_case_bound(Complex z, const PunctureLadder& ladder) {
    check_ladder_range(z, ladder);
    const double r = std::abs(z);
    // On a ladder circle the arc to the puncture costs at most half the
    // circle length; inside an annulus the gap delta is paid once more.
    for (double rn : ladder.radii) {
        if (std::abs(r - rn) <= 1e-12 * rn) {
            return kPi / std::abs(std::log(rn));
        }
    }
    double rn = ladder.radii.front();
    for (double radius : ladder.radii) {
        if (radius >= r) rn = radius;
    }
    return ladder.delta + kPi / std::abs(std::log(rn));
}

std::pair<double, double> density_bounds(Complex z,
                                         std::span<const Complex> boundary_samples) {
    if (boundary_samples.empty()) {
        throw DomainError("empty-boundary-samples", "density bounds need boundary samples");
    }
    double dmin = std::numeric_limits<double>::infinity();
    std::size_t nearest = 0;
    for (std::size_t i = 0; i < boundary_samples.size(); ++i) {
        const double d = std::abs(z - boundary_samples[i]);
        if (d < dmin) {
            dmin = d;
            nearest = i;
        }
    }
    if (dmin <= kBoundaryMargin) {
        throw DomainError("point-on-boundary-sample",
                          "z coincides with a boundary sample");
    }
    const double hi = 2.0 / dmin;

    const Complex p = boundary_samples[nearest];
    double lo = 0.0;
    for (std::size_t i = 0; i < boundary_samples.size(); ++i) {
        if (i == nearest) continue;
        const Complex q = boundary_samples[i];
        const double scale = std::abs(q - p);
        if (scale <= kBoundaryMargin) continue;
        const double zeta = std::abs((z - p) / (q - p));
        const double bound =
            1.0 / (2.0 * zeta * scale * (kTwicePuncturedPlaneConstant + std::abs(std::log(zeta))));
        lo = std::max(lo, bound);
    }
    return {lo, hi};
}

} // namespace raylander
