#pragma once

#include <complex>
#include <vector>

#include "raylander/errors.hpp"

namespace raylander {

using Complex = std::complex<double>;

/// Model plane domains carrying exact hyperbolic densities, all in the
/// curvature -1 normalization fixed by lambda_D(z) = 2/(1-|z|^2):
///
///   unit disk            lambda(z) = 2 / (1 - |z|^2)
///   punctured unit disk  lambda(z) = -1 / (|z| log|z|)
///   right half-plane     lambda(z) = 1 / Re z
///
/// The half-plane density follows from the disk one through the Cayley
/// map; the punctured-disk density through the exponential covering
/// from the left half-plane. Both identities are exercised by tests.
enum class DomainKind {
    unit_disk,
    punctured_unit_disk,
    right_half_plane,
};

struct ModelDomain {
    DomainKind kind;

    static ModelDomain unit_disk() { return {DomainKind::unit_disk}; }
    static ModelDomain punctured_unit_disk() { return {DomainKind::punctured_unit_disk}; }
    static ModelDomain right_half_plane() { return {DomainKind::right_half_plane}; }

    /// Strict interior membership; points within kBoundaryMargin of the
    /// boundary count as outside (rejected rather than clamped, since
    /// densities blow up there and silent clamping corrupts estimates).
    bool contains(Complex z) const noexcept;

    const char* name() const noexcept;
};

inline constexpr double kBoundaryMargin = 1e-14;

/// Relative tolerance of the adaptive Simpson quadrature used by
/// polyline_length, per segment.
inline constexpr double kQuadratureRelTol = 1e-10;

/// Ordered polyline; at least two points, consecutive points distinct.
/// Domain membership is checked per operation (it depends on the domain).
struct Polyline {
    std::vector<Complex> points;

    explicit Polyline(std::vector<Complex> pts);
};

/// Exact hyperbolic density at an interior point. Throws DomainError
/// ("point-outside-domain", or "puncture-hit" for z = 0 in the
/// punctured disk).
double density(const ModelDomain& domain, Complex z);

/// Exact hyperbolic distance.
///
/// Disk: 2 atanh |(z-w)/(1 - conj(z) w)|. Half-plane: the stable sinh
/// form of arccosh(1 + |z-w|^2 / (2 Re z Re w)). Punctured disk: the
/// minimum over deck translates of half-plane distances between
/// logarithmic lifts; the translate index is scanned over
/// |k| <= 1 + ceil(|Im log z - Im log w| / 2pi) + 2, which covers every
/// geodesic (it never winds more than the endpoint angular offset plus
/// slack). If the scan minimum sits at the cutoff the function throws
/// ConvergenceError("branch-cutoff-exceeded") instead of returning a
/// possibly-truncated minimum.
double distance(const ModelDomain& domain, Complex z, Complex w);

/// Hyperbolic distance between two points of the right half-plane.
/// Exposed separately because the tract chart of the exponential family
/// works directly in this model.
double half_plane_distance(Complex z, Complex w);

/// Hyperbolic length of the circle |z| = r in the punctured unit disk:
/// -2 pi / log r. Strictly decreasing to 0 as r -> 0.
double circle_length_punctured(double r);

/// Hyperbolic length of a polyline: the density integrated along each
/// straight segment by adaptive Simpson quadrature (relative tolerance
/// kQuadratureRelTol per segment). Always >= distance of the endpoints.
double polyline_length(const ModelDomain& domain, const Polyline& line);

} // namespace raylander
