#include "raylander/hypgeo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace raylander {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void throw_outside(const ModelDomain& domain, Complex z) {
    std::ostringstream os;
    os << "point (" << z.real() << ", " << z.imag() << ") is not strictly inside the "
       << domain.name();
    throw DomainError("point-outside-domain", os.str());
}

} // namespace

bool ModelDomain::contains(Complex z) const noexcept {
    const double r = std::abs(z);
    switch (kind) {
    case DomainKind::unit_disk:
        return r < 1.0 - kBoundaryMargin;
    case DomainKind::punctured_unit_disk:
        return r > kBoundaryMargin && r < 1.0 - kBoundaryMargin;
    case DomainKind::right_half_plane:
        return z.real() > kBoundaryMargin;
    }
    return false;
}

const char* ModelDomain::name() const noexcept {
    switch (kind) {
    case DomainKind::unit_disk: return "unit_disk";
    case DomainKind::punctured_unit_disk: return "punctured_unit_disk";
    case DomainKind::right_half_plane: return "right_half_plane";
    }
    return "?";
}

Polyline::Polyline(std::vector<Complex> pts) : points(std::move(pts)) {
    if (points.size() < 2) {
        throw DomainError("polyline-too-short", "a polyline needs at least two points");
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i] == points[i - 1]) {
            throw DomainError("polyline-degenerate-segment",
                              "consecutive polyline points must be distinct");
        }
    }
}

double density(const ModelDomain& domain, Complex z) {
    if (domain.kind == DomainKind::punctured_unit_disk && std::abs(z) <= kBoundaryMargin) {
        throw DomainError("puncture-hit", "density requested at the puncture z = 0");
    }
    if (!domain.contains(z)) {
        throw_outside(domain, z);
    }
    switch (domain.kind) {
    case DomainKind::unit_disk:
        return 2.0 / (1.0 - std::norm(z));
    case DomainKind::punctured_unit_disk: {
        const double r = std::abs(z);
        return -1.0 / (r * std::log(r));
    }
    case DomainKind::right_half_plane:
        return 1.0 / z.real();
    }
    return 0.0; // unreachable
}

double half_plane_distance(Complex z, Complex w) {
    // sinh(d/2) = |z-w| / (2 sqrt(Re z Re w)); exact rearrangement of the
    // arccosh(1 + |z-w|^2/(2 Re z Re w)) formula, stable for nearby points.
    const double q = std::abs(z - w) / (2.0 * std::sqrt(z.real() * w.real()));
    return 2.0 * std::asinh(q);
}

namespace {

// Left half-plane distance between logarithmic lifts (Re < 0), minimized
// over the 2 pi i deck translates of the covering exp : {Re < 0} -> D*.
double punctured_distance(Complex z, Complex w) {
    const Complex a = std::log(z);
    const Complex b = std::log(w);
    const double xa = -a.real(); // both positive
    const double xb = -b.real();
    const long cutoff =
        1 + static_cast<long>(std::ceil(std::abs(a.imag() - b.imag()) / kTwoPi)) + 2;
    double best = std::numeric_limits<double>::infinity();
    long best_k = 0;
    for (long k = -cutoff; k <= cutoff; ++k) {
        const Complex gap = a - b - Complex(0.0, kTwoPi * static_cast<double>(k));
        const double d = 2.0 * std::asinh(std::abs(gap) / (2.0 * std::sqrt(xa * xb)));
        if (d < best) {
            best = d;
            best_k = k;
        }
    }
    if (std::labs(best_k) == cutoff) {
        throw ConvergenceError("branch-cutoff-exceeded",
                               "minimizing deck translate sits at the scan cutoff");
    }
    return best;
}

} // namespace

double distance(const ModelDomain& domain, Complex z, Complex w) {
    if (!domain.contains(z)) throw_outside(domain, z);
    if (!domain.contains(w)) throw_outside(domain, w);
    if (z == w) return 0.0;
    switch (domain.kind) {
    case DomainKind::unit_disk: {
        const double rho = std::abs((z - w) / (1.0 - std::conj(z) * w));
        return 2.0 * std::atanh(rho);
    }
    case DomainKind::punctured_unit_disk:
        return punctured_distance(z, w);
    case DomainKind::right_half_plane:
        return half_plane_distance(z, w);
    }
    return 0.0; // unreachable
}

double circle_length_punctured(double r) {
    if (!(r > 0.0) || !(r < 1.0)) {
        throw DomainError("radius-out-of-range",
                          "circle radius must lie strictly inside (0, 1)");
    }
    return -kTwoPi / std::log(r);
}

namespace {

struct SegmentIntegrand {
    const ModelDomain& domain;
    Complex a;
    Complex b;

    double operator()(double s) const {
        return density(domain, a + s * (b - a)) * std::abs(b - a);
    }
};

double simpson(const SegmentIntegrand& f, double lo, double hi, double flo, double fmid,
               double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
}

double adaptive_simpson(const SegmentIntegrand& f, double lo, double hi, double flo,
                        double fmid, double fhi, double whole, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double fl = f(0.5 * (lo + mid));
    const double fr = f(0.5 * (mid + hi));
    const double left = simpson(f, lo, mid, flo, fl, fmid);
    const double right = simpson(f, mid, hi, fmid, fr, fhi);
    const double refined = left + right;
    if (depth <= 0 ||
        std::abs(refined - whole) <= 15.0 * kQuadratureRelTol * (std::abs(refined) + 1e-300)) {
        return refined + (refined - whole) / 15.0;
    }
    return adaptive_simpson(f, lo, mid, flo, fl, fmid, left, depth - 1) +
           adaptive_simpson(f, mid, hi, fmid, fr, fhi, right, depth - 1);
}

double segment_length(const ModelDomain& domain, Complex a, Complex b) {
    SegmentIntegrand f{domain, a, b};
    const double flo = f(0.0);
    const double fmid = f(0.5);
    const double fhi = f(1.0);
    const double whole = simpson(f, 0.0, 1.0, flo, fmid, fhi);
    return adaptive_simpson(f, 0.0, 1.0, flo, fmid, fhi, whole, 40);
}

} // namespace

double polyline_length(const ModelDomain& domain, const Polyline& line) {
    for (Complex p : line.points) {
        if (domain.kind == DomainKind::punctured_unit_disk && std::abs(p) <= kBoundaryMargin) {
            throw DomainError("puncture-hit", "polyline touches the puncture z = 0");
        }
        if (!domain.contains(p)) throw_outside(domain, p);
    }
    double total = 0.0;
    for (std::size_t i = 1; i < line.points.size(); ++i) {
        total += segment_length(domain, line.points[i - 1], line.points[i]);
    }
    return total;
}

} // namespace raylander
