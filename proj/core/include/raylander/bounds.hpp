#pragma once

#include <span>
#include <utility>
#include <vector>

#include "raylander/hypgeo.hpp"

namespace raylander {

enum class KappaProvenance { lemma22, prop27 };

/// A certified contraction bound kappa in [0,1) together with the
/// hyperbolic distance d it was derived from and the chain of reasoning
/// that produced it.
struct KappaBound {
    double d = 0.0;
    double kappa = 0.0;
    KappaProvenance provenance = KappaProvenance::lemma22;
};

/// The contraction estimate
///
///   kappa(d) = -((e^{2d}-1)/(2 e^d)) log((e^d-1)/(e^d+1)),  kappa(0) = 0,
///
/// equivalently -sinh(d) log tanh(d/2). Strictly increasing on [0,inf)
/// with supremum 1, never attained. For d < 1e-6 the sinh/tanh form is
/// used directly (the raw expression suffers 0*inf cancellation); for
/// large d the value is assembled from kappa_complement and clamped to
/// the largest double below 1 so the [0,1) contract survives rounding.
double kappa_contraction(double d);

/// 1 - kappa(d), computed without cancellation (series in e^{-d} for
/// d >= 2). Use this for strict-inequality work near kappa = 1, where the
/// double representation of kappa itself saturates.
double kappa_complement(double d);

/// Two-point density ratio of the disk over the punctured disk at -x:
/// -2x log x / (1 - x^2) for x in (0,1). Strictly increasing, < 1,
/// -> 0 as x -> 0+. Substituting x = (e^d-1)/(e^d+1) recovers
/// kappa_contraction(d) exactly.
double puncture_ratio(double x);

/// Contraction bound for a punctured neighborhood threaded by a ladder
/// of punctures: d = delta + pi/|log r_n|, kappa = kappa_contraction(d).
/// (The source writes d = delta - pi/log r_n with log r_n < 0; the
/// stored form is the manifestly positive equivalent.)
KappaBound kappa_annulus(double r_n, double delta);

/// A sequence of punctures w_n spiraling into 0 inside the punctured
/// unit disk: |w_n| = r_n strictly decreasing, delta = the largest
/// punctured-disk distance between consecutive punctures.
struct PunctureLadder {
    std::vector<double> radii;
    std::vector<Complex> points;
    double delta = 0.0;

    /// Builds a ladder from the puncture points; computes radii and
    /// delta and validates monotonicity. Needs at least two points.
    static PunctureLadder from_points(std::vector<Complex> pts);
};

/// Exact punctured-disk distance from z to the nearest ladder point.
/// Requires radii.back() <= |z| <= radii.front() (up to roundoff slack).
double distance_to_ladder(Complex z, const PunctureLadder& ladder);

/// The case-split bound the ladder construction guarantees for
/// distance_to_ladder: pi/|log r_n| when z lies on the circle |z| = r_n,
/// and delta + pi/|log r_n| when z lies in the annulus below r_n, where
/// r_n is the smallest ladder radius >= |z|.
double ladder_case_bound(Complex z, const PunctureLadder& ladder);

/// Lower constant of the twice-punctured-plane density estimate
/// lambda(z) >= 1 / (2|z| (K + |log|z||)): K = Gamma(1/4)^4 / (4 pi^2).
inline constexpr double kTwicePuncturedPlaneConstant = 4.376879230452953;

/// Diagnostic two-sided density estimate for an implicit domain known
/// only through samples of its boundary:
///
///   hi = 2 / dist(z, samples)            (inscribed-disk comparison)
///   lo = max over sample pairs (p, q), p nearest to z, of the
///        twice-punctured-plane lower estimate transported by the
///        affine map sending (p, q) to (0, 1).
///
/// Always lo <= hi. With a single sample lo = 0 (one puncture carries no
/// hyperbolic information). Diagnostics only; never used in landing
/// decisions.
std::pair<double, double> density_bounds(Complex z,
                                         std::span<const Complex> boundary_samples);

} // namespace raylander
