#pragma once

#include <complex>
#include <vector>

#include "raylander/errors.hpp"
#include "raylander/hypgeo.hpp"

namespace raylander {

/// The exponential family f(z) = lambda e^z. Its only singular value is
/// the asymptotic value 0; there are no critical points.
struct ExpMap {
    Complex lambda;

    explicit ExpMap(Complex lam);

    Complex apply(Complex z) const { return lambda * std::exp(z); }
};

struct EvalResult {
    Complex value;
    Complex derivative; // equals value for this family
};

/// f and f' in one call. Throws ConvergenceError("exp-overflow") when
/// Re z exceeds the representable exponent range; callers must switch to
/// log-space paths (the rays module) instead of clamping.
EvalResult map_eval(const ExpMap& m, Complex z);

/// The j-th inverse branch: Log(w/lambda) + 2 pi i j with principal Log.
/// f(inverse_branch(m, w, j)) == w to roundoff. w = 0 has no preimage.
Complex inverse_branch(const ExpMap& m, Complex w, long j);

enum class BoundednessStatus { bounded, unbounded, inconclusive };
enum class BoundednessCertificate { attracting, parabolic, none };

/// Forward orbit of the singular value 0 with a boundedness verdict.
/// "bounded" is only declared on a basin certificate (attracting or
/// parabolic); an orbit that merely stayed inside the escape radius for
/// every computed step is reported inconclusive.
struct PostsingularData {
    std::vector<Complex> orbit;          // orbit[0] = 0
    BoundednessStatus status = BoundednessStatus::inconclusive;
    BoundednessCertificate certificate = BoundednessCertificate::none;
    double radius = 0.0;                 // smallest R with orbit in D(0,R), when bounded
    int iterations = 0;
    Complex basin_point{0.0, 0.0};       // certified fixed point, when certificate != none

    bool bounded() const { return status == BoundednessStatus::bounded; }
};

/// Iterates the singular value. Bounded verdicts come from one of two
/// certificates:
///   - attracting: a fixed point p with |p| < 1 (the multiplier of a
///     fixed point of lambda e^z is the point itself) plus an invariant
///     disk around it the orbit has entered;
///   - parabolic/attracting real chain: for real lambda in (0, 1/e] the
///     orbit of 0 increases toward the smallest real fixed point q and
///     stays below it, so sup |orbit| = q exactly.
/// Unbounded is declared when |orbit| exceeds escape_radius while both
/// Re z and |z| are still growing with Re z > 0.
PostsingularData postsingular(const ExpMap& m, int max_iter, double escape_radius);

/// The two real solutions of x = lambda e^x for real lambda in (0, 1/e),
/// q_minus < 1 < q_plus, found by bisection. Multipliers equal the points
/// themselves. lambda at the tangency 1/e raises
/// DomainError("parabolic-tangency").
std::pair<double, double> real_fixed_points(const ExpMap& m);

/// Translation chart of the exponential tract {Re z > a}, a = log(R/|lambda|):
/// phi(z) = z + Log lambda - log R maps the tract onto the right
/// half-plane with exp(phi(z)) = f(z)/R.
struct TractChart {
    double R = 0.0;
    double a = 0.0;          // tract boundary abscissa log(R/|lambda|)
    Complex shift{0.0, 0.0}; // Log lambda branch used by the chart
};

/// A 2 pi i ladder of preimages of a base point z0 outside the closed
/// disk of radius R, together with the half-plane gap delta between
/// consecutive rungs (independent of the rung index).
struct PreimageLadder {
    std::vector<Complex> points; // Log(z0/lambda) + 2 pi i j, j = j_min..j_max
    long j_min = 0;
    double delta = 0.0;
    TractChart chart;
};

PreimageLadder preimage_ladder(const ExpMap& m, Complex z0, long j_min, long j_max,
                               double R);

struct PeriodicPoint {
    Complex w;
    Complex multiplier;  // (f^k)'(w) = product of the orbit points
    double residual;     // |f^k(w) - w|
    int iterations;
};

/// Newton refinement of a period-k point from a seed inside its basin.
/// Converges to |f^k(w) - w| < 1e-12 (linearly at parabolic points,
/// quadratically otherwise); throws ConvergenceError otherwise.
PeriodicPoint refine_periodic_point(const ExpMap& m, int k, Complex seed);

} // namespace raylander
