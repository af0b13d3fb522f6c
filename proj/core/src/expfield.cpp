#include "raylander/expfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace raylander {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kExpArgLimit = 709.0; // exp overflows just above this

double bisect(double lo, double hi, auto&& f) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-16 * std::max(1.0, std::abs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

ExpMap::ExpMap(Complex lam) : lambda(lam) {
    if (lambda == Complex(0.0, 0.0)) {
        throw DomainError("lambda-zero", "the exponential family needs lambda != 0");
    }
}

EvalResult map_eval(const ExpMap& m, Complex z) {
    if (z.real() + std::log(std::abs(m.lambda)) > kExpArgLimit) {
        std::ostringstream os;
        os << "lambda e^z overflows at Re z = " << z.real()
           << "; use the log-space ray paths instead";
        throw ConvergenceError("exp-overflow", os.str());
    }
    const Complex v = m.apply(z);
    return EvalResult{v, v};
}

Complex inverse_branch(const ExpMap& m, Complex w, long j) {
    if (w == Complex(0.0, 0.0)) {
        throw DomainError("asymptotic-value-no-preimage",
                          "the asymptotic value 0 has no preimage under lambda e^z");
    }
    return std::log(w / m.lambda) + Complex(0.0, kTwoPi * static_cast<double>(j));
}

namespace {

// Invariant-disk certificate around an attracting fixed point p (|p| < 1,
// since the multiplier of a fixed point of lambda e^z is the point itself):
// on D(p, r) with r = min(1, -log|p|/2) the derivative modulus stays below
// sqrt(|p|) < 1, so the disk maps into itself and the tail contracts into p.
struct AttractingCertificate {
    Complex p;
    double r;
    bool valid = false;
};

AttractingCertificate try_attracting_certificate(const ExpMap& m, Complex seed) {
    AttractingCertificate cert;
    Complex z = seed;
    for (int i = 0; i < 60; ++i) {
        if (z.real() + std::log(std::abs(m.lambda)) > kExpArgLimit) return cert;
        const Complex f = m.apply(z);
        const Complex g = f - z;
        const Complex dg = f - 1.0;
        if (std::abs(dg) < 1e-14) return cert;
        const Complex step = g / dg;
        z -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    if (z.real() + std::log(std::abs(m.lambda)) > kExpArgLimit) return cert;
    if (std::abs(m.apply(z) - z) > 1e-12) return cert;
    const double mod = std::abs(z);
    if (mod >= 1.0 - 1e-9) return cert;
    cert.p = z;
    cert.r = std::min(1.0, 0.5 * -std::log(mod));
    cert.valid = true;
    return cert;
}

} // namespace

PostsingularData postsingular(const ExpMap& m, int max_iter, double escape_radius) {
    if (max_iter < 1) {
        throw DomainError("max-iter-out-of-range", "postsingular needs max_iter >= 1");
    }
    if (!(escape_radius > 0.0)) {
        throw DomainError("escape-radius-out-of-range",
                          "postsingular needs escape_radius > 0");
    }

    PostsingularData data;
    data.orbit.push_back(Complex(0.0, 0.0));

    // Real chain certificate: for real lambda in (0, 1/e] the orbit of 0
    // increases toward the smallest real fixed point q and never exceeds
    // it, so it is bounded with sup exactly q. The tangency test tolerates
    // the roundoff of lambda = 1/e passed as a double.
    double real_q = -1.0;
    BoundednessCertificate real_kind = BoundednessCertificate::none;
    if (m.lambda.imag() == 0.0 && m.lambda.real() > 0.0) {
        const double lam = m.lambda.real();
        const double tangency = lam * std::numbers::e - 1.0;
        if (tangency <= 1e-12) {
            if (tangency >= -1e-12) {
                real_q = 1.0;
                real_kind = BoundednessCertificate::parabolic;
            } else {
                real_q = bisect(0.0, 1.0, [lam](double x) { return lam * std::exp(x) - x; });
                real_kind = real_q > 1.0 - 1e-9 ? BoundednessCertificate::parabolic
                                                : BoundednessCertificate::attracting;
            }
        }
    }

    Complex z(0.0, 0.0);
    const double loglam = std::log(std::abs(m.lambda));
    for (int n = 1; n <= max_iter; ++n) {
        if (z.real() + loglam > kExpArgLimit) {
            // The next iterate leaves the representable range entirely.
            data.iterations = n - 1;
            if (std::abs(z) > escape_radius && z.real() > 0.0) {
                data.status = BoundednessStatus::unbounded;
            } else {
                data.status = BoundednessStatus::inconclusive;
            }
            return data;
        }
        const Complex prev = z;
        z = m.apply(z);
        data.orbit.push_back(z);
        data.iterations = n;

        if (real_kind != BoundednessCertificate::none) {
            // The chain certificate already bounds the whole orbit by q;
            // the escape heuristic must not override it.
            if (std::abs(z - Complex(real_q, 0.0)) < 1e-15) break; // orbit settled
            continue;
        }

        if (std::abs(z) > escape_radius && z.real() > 0.0 && z.real() >= prev.real() &&
            std::abs(z) >= std::abs(prev)) {
            data.status = BoundednessStatus::unbounded;
            return data;
        }

        // Generic attracting-basin certificate, attempted sparsely.
        if ((n & 7) == 0) {
            const AttractingCertificate cert = try_attracting_certificate(m, z);
            if (cert.valid && std::abs(z - cert.p) <= cert.r) {
                data.status = BoundednessStatus::bounded;
                data.certificate = BoundednessCertificate::attracting;
                data.basin_point = cert.p;
                double sup = std::abs(cert.p) + std::abs(z - cert.p);
                for (Complex o : data.orbit) sup = std::max(sup, std::abs(o));
                data.radius = sup;
                return data;
            }
        }
    }

    if (real_kind != BoundednessCertificate::none) {
        data.status = BoundednessStatus::bounded;
        data.certificate = real_kind;
        data.basin_point = Complex(real_q, 0.0);
        data.radius = real_q;
        return data;
    }

    data.status = BoundednessStatus::inconclusive;
    return data;
}

std::pair<double, double> real_fixed_points(const ExpMap& m) {
    if (m.lambda.imag() != 0.0 || !(m.lambda.real() > 0.0)) {
        throw DomainError("lambda-out-of-range",
                          "real fixed points need real lambda in (0, 1/e)");
    }
    const double lam = m.lambda.real();
    const double tangency = lam * std::numbers::e - 1.0;
    if (std::abs(tangency) <= 1e-12) {
        throw DomainError("parabolic-tangency",
                          "lambda = 1/e: both real fixed points collapse to 1");
    }
    if (tangency > 0.0) {
        throw DomainError("lambda-out-of-range",
                          "lambda above 1/e has no real fixed points");
    }
    const auto g = [lam](double x) { return lam * std::exp(x) - x; };
    const double q_minus = bisect(0.0, 1.0, g);
    double hi = 2.0;
    while (g(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e4) {
            throw ConvergenceError("bracket-failure", "no upper bracket for q_plus");
        }
    }
    const double q_plus = bisect(1.0, hi, g);
    return {q_minus, q_plus};
}

PreimageLadder preimage_ladder(const ExpMap& m, Complex z0, long j_min, long j_max,
                               double R) {
    if (!(R > 0.0)) {
        throw DomainError("radius-out-of-range", "tract chart needs R > 0");
    }
    if (j_min > j_max) {
        throw DomainError("empty-j-range", "preimage ladder needs j_min <= j_max");
    }
    if (!(std::abs(z0) > R)) {
        std::ostringstream os;
        os << "|z0| = " << std::abs(z0) << " must exceed the excluded-disk radius R = " << R;
        throw DomainError("z0-inside-excluded-disk", os.str());
    }

    PreimageLadder ladder;
    ladder.j_min = j_min;
    ladder.chart.R = R;
    ladder.chart.a = std::log(R / std::abs(m.lambda));
    ladder.chart.shift = std::log(m.lambda);

    const Complex base = std::log(z0 / m.lambda);
    for (long j = j_min; j <= j_max; ++j) {
        ladder.points.push_back(base + Complex(0.0, kTwoPi * static_cast<double>(j)));
    }

    // phi(w) = w + Log lambda - log R sends the rungs to a vertical ladder
    // in the right half-plane at abscissa log(|z0|/R); the gap between
    // consecutive rungs must come out independent of j.
    const auto phi = [&](Complex w) { return w + ladder.chart.shift - std::log(R); };
    double delta = 0.0;
    double delta_min = std::numeric_limits<double>::infinity();
    if (ladder.points.size() >= 2) {
        for (std::size_t i = 1; i < ladder.points.size(); ++i) {
            const double d =
                half_plane_distance(phi(ladder.points[i - 1]), phi(ladder.points[i]));
            delta = std::max(delta, d);
            delta_min = std::min(delta_min, d);
        }
        if (delta - delta_min > 1e-12 * std::max(1.0, delta)) {
            throw ConvergenceError("rung-gap-not-constant",
                                   "half-plane rung gaps differ across j");
        }
    } else {
        const double x = std::log(std::abs(z0) / R);
        delta = 2.0 * std::asinh(std::numbers::pi / x);
    }
    ladder.delta = delta;
    return ladder;
}

PeriodicPoint refine_periodic_point(const ExpMap& m, int k, Complex seed) {
    if (k < 1) {
        throw DomainError("period-out-of-range", "refinement needs period k >= 1");
    }
    const double loglam = std::log(std::abs(m.lambda));
    Complex z = seed;
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= 300; ++iter) {
        Complex w = z;
        Complex mult(1.0, 0.0);
        for (int i = 0; i < k; ++i) {
            if (w.real() + loglam > kExpArgLimit) {
                throw ConvergenceError("newton-escaped",
                                       "Newton iterate escaped the representable range");
            }
            w = m.apply(w);
            mult *= w; // f'(z) = lambda e^z = f(z); chain rule over the orbit
        }
        const Complex g = w - z;
        residual = std::abs(g);
        if (residual < 1e-13) {
            return PeriodicPoint{z, mult, residual, iter};
        }
        const Complex dg = mult - 1.0;
        if (dg == Complex(0.0, 0.0)) {
            throw ConvergenceError("newton-singular", "vanishing Newton denominator");
        }
        z -= g / dg;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e8) {
            throw ConvergenceError("newton-escaped", "Newton iterate diverged");
        }
    }
    throw ConvergenceError("newton-non-convergence",
                           "periodic-point refinement did not reach 1e-13 in 300 steps");
}

} // namespace raylander
