#include "raylander/rays.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace raylander {

namespace {

constexpr double kAsymptoticThreshold = 50.0;

} // namespace

ExternalAddress::ExternalAddress(std::vector<long> period_entries)
    : entries(std::move(period_entries)) {
    if (entries.empty()) {
        throw DomainError("empty-address", "an external address needs at least one entry");
    }
}

long ExternalAddress::bound() const {
    long b = 0;
    for (long e : entries) b = std::max(b, std::labs(e));
    return b;
}

double ray_model(double t, long n) {
    if (!(t >= 0.0)) {
        throw DomainError("potential-out-of-range", "the ray model needs t >= 0");
    }
    double x = t;
    if (n >= 0) {
        for (long i = 0; i < n; ++i) {
            if (x > 709.0) { // expm1 overflows just above this
                std::ostringstream os;
                os << "F^" << n << "(" << t << ") leaves the representable range at step "
                   << i << "; restructure the computation instead of clamping";
                throw ConvergenceError("overflow-restructure", os.str());
            }
            x = std::expm1(x);
        }
    } else {
        for (long i = 0; i < -n; ++i) {
            x = std::log1p(x);
        }
    }
    return x;
}

namespace {

struct DepthInfo {
    long depth;
    double reference_potential;
};

// Largest depth whose reference potential stays usable: advance F until the
// potential first exceeds the ceiling (that value, at most expm1(ceiling),
// is still representable and becomes the reference) or the depth cap binds.
DepthInfo usable_depth(double t, const TraceOptions& opts) {
    const long cap = opts.max_depth > 0 ? std::min(opts.max_depth, kMaxTraceDepth)
                                        : kMaxTraceDepth;
    long d = 0;
    double x = t;
    while (x <= opts.potential_ceiling && d < cap) {
        x = std::expm1(x);
        ++d;
    }
    return {d, x};
}

Complex trace_at_depth(const ExpMap& m, const ExternalAddress& addr, double t, long depth) {
    double x = t;
    for (long i = 0; i < depth; ++i) x = std::expm1(x);
    Complex z = Complex(x, 0.0) - std::log(m.lambda) +
                Complex(0.0, 2.0 * std::numbers::pi * static_cast<double>(addr.at(depth)));
    for (long i = depth - 1; i >= 0; --i) {
        z = inverse_branch(m, z, addr.at(i));
    }
    return z;
}

} // namespace

Complex trace_ray(const ExpMap& m, const ExternalAddress& addr, double t,
                  const TraceOptions& opts) {
    if (!(t > 0.0)) {
        throw DomainError("potential-out-of-range", "ray tracing needs t > 0");
    }
    const DepthInfo info = usable_depth(t, opts);

    // Reference error is O(e^{-T}) at reference potential T; past the
    // asymptotic threshold it is below any representable tolerance, and
    // the inverse branches only shrink it further along the chain.
    if (info.reference_potential > kAsymptoticThreshold) {
        return trace_at_depth(m, addr, t, info.depth);
    }

    // Depth-capped regime (tiny t): the backward iteration stabilizes long
    // before the cap; double the depth until two traces agree.
    long d = std::min<long>(info.depth, 4);
    Complex val = trace_at_depth(m, addr, t, d);
    while (d < info.depth) {
        const long d2 = std::min<long>(std::max<long>(2 * d, 8), info.depth);
        const Complex v2 = trace_at_depth(m, addr, t, d2);
        if (std::abs(v2 - val) < opts.tol) return v2;
        val = v2;
        d = d2;
    }
    if (info.depth >= 1) {
        const Complex v1 = trace_at_depth(m, addr, t, info.depth - 1);
        if (std::abs(val - v1) <= opts.tol) return val;
    }
    throw ConvergenceError("trace-non-convergence",
                           "successive-depth traces did not meet the tolerance at the "
                           "maximal usable depth");
}

namespace {

void check_functional_equation(const ExpMap& m, const RaySegment& seg, int k) {
    const Complex lo = seg.samples.front().z;
    const Complex hi = seg.samples.back().z;
    Complex w = lo;
    const double loglam = std::log(std::abs(m.lambda));
    for (int i = 0; i < k; ++i) {
        if (w.real() + loglam > 709.0) return; // too large to verify; tracing was exact there
        w = m.apply(w);
    }
    if (std::abs(w - hi) > 1e-8 * std::max(1.0, std::abs(hi))) {
        throw ConvergenceError("functional-equation-violation",
                               "f^k(g(t_lo)) does not reproduce g(F^k(t_lo))");
    }
}

} // namespace

RaySegment fundamental_segment(const ExpMap& m, const ExternalAddress& addr, double t,
                               int samples, const TraceOptions& opts) {
    if (samples < 2) {
        throw DomainError("samples-out-of-range", "a segment needs at least two samples");
    }
    const int k = addr.period();
    const double t_hi = ray_model(t, k);

    std::vector<RaySample> pts;
    pts.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double ti =
            t + (t_hi - t) * static_cast<double>(i) / static_cast<double>(samples - 1);
        pts.push_back(RaySample{ti, trace_ray(m, addr, ti, opts)});
    }

    if (samples > 2) {
        // Midpoint-deviation refinement: split while the traced midpoint
        // strays from the chord by more than 1e-3 of the local scale.
        std::size_t i = 0;
        int budget = 4096;
        while (i + 1 < pts.size() && budget > 0) {
            const RaySample& a = pts[i];
            const RaySample& b = pts[i + 1];
            const double chord = std::abs(b.z - a.z);
            const double floor = 1e-9 * std::max(1.0, std::abs(a.z));
            if (chord > floor) {
                const double tm = 0.5 * (a.t + b.t);
                const Complex zm = trace_ray(m, addr, tm, opts);
                if (std::abs(zm - 0.5 * (a.z + b.z)) > 1e-3 * chord) {
                    pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                               RaySample{tm, zm});
                    --budget;
                    continue;
                }
            }
            ++i;
        }
    }

    RaySegment seg{std::move(pts), t, t_hi, addr};
    check_functional_equation(m, seg, k);
    return seg;
}

namespace {

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double s = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(p - (a + s * ab));
}

double min_distance_to_samples(Complex z, std::span<const Complex> samples) {
    double best = std::numeric_limits<double>::infinity();
    for (Complex s : samples) best = std::min(best, std::abs(z - s));
    return best;
}

// Adaptive Simpson of 2/dist(z, samples) along one straight edge.
double upper_density_edge_length(Complex a, Complex b, std::span<const Complex> samples) {
    const double scale = std::abs(b - a);
    const auto f = [&](double s) {
        return 2.0 / min_distance_to_samples(a + s * (b - a), samples) * scale;
    };
    struct Frame {
        double lo, hi, flo, fmid, fhi, whole;
        int depth;
    };
    const auto simpson = [](double lo, double hi, double flo, double fmid, double fhi) {
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    };
    const double f0 = f(0.0);
    const double f5 = f(0.5);
    const double f1 = f(1.0);
    std::vector<Frame> stack{{0.0, 1.0, f0, f5, f1, simpson(0.0, 1.0, f0, f5, f1), 24}};
    double total = 0.0;
    while (!stack.empty()) {
        const Frame fr = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (fr.lo + fr.hi);
        const double fl = f(0.5 * (fr.lo + mid));
        const double fr2 = f(0.5 * (mid + fr.hi));
        const double left = simpson(fr.lo, mid, fr.flo, fl, fr.fmid);
        const double right = simpson(mid, fr.hi, fr.fmid, fr2, fr.fhi);
        const double refined = left + right;
        if (fr.depth <= 0 || std::abs(refined - fr.whole) <= 1e-8 * (std::abs(refined) + 1e-300)) {
            total += refined + (refined - fr.whole) / 15.0;
        } else {
            stack.push_back({fr.lo, mid, fr.flo, fl, fr.fmid, left, fr.depth - 1});
            stack.push_back({mid, fr.hi, fr.fmid, fr2, fr.fhi, right, fr.depth - 1});
        }
    }
    return total;
}

} // namespace

DiamStarEstimate diamstar_upper(const RaySegment& seg,
                                std::span<const Complex> boundary_samples) {
    if (boundary_samples.empty()) {
        throw DomainError("empty-boundary-samples",
                          "diam* estimation needs boundary samples");
    }
    if (seg.samples.size() < 2) {
        throw DomainError("segment-too-short", "diam* estimation needs a sampled segment");
    }
    // Rays avoid the post-singular set; touching the sample set means the
    // segment was traced wrongly.
    for (std::size_t i = 1; i < seg.samples.size(); ++i) {
        const Complex a = seg.samples[i - 1].z;
        const Complex b = seg.samples[i].z;
        const double scale = std::max(1.0, std::abs(a));
        for (Complex s : boundary_samples) {
            if (point_segment_distance(s, a, b) <= 1e-9 * scale) {
                throw DomainError("segment-intersects-boundary-samples",
                                  "segment passes through the boundary sample hull");
            }
        }
    }
    // The upper density dominates the true one pointwise, so the full
    // polyline length dominates the geodesic length of every sub-arc; the
    // sup over sub-arcs is the whole sum.
    double total = 0.0;
    for (std::size_t i = 1; i < seg.samples.size(); ++i) {
        total += upper_density_edge_length(seg.samples[i - 1].z, seg.samples[i].z,
                                           boundary_samples);
    }
    return DiamStarEstimate{seg.t_lo, total, static_cast<int>(boundary_samples.size())};
}

double m_surrogate(const ExpMap& m, const ExternalAddress& addr, double t,
                   std::span<const Complex> boundary_samples, int tau_samples,
                   int segment_samples, const TraceOptions& opts) {
    if (tau_samples < 1) {
        throw DomainError("samples-out-of-range", "m_surrogate needs tau_samples >= 1");
    }
    const int k = addr.period();
    const double t_hi = ray_model(t, k);
    double best = 0.0;
    for (int i = 0; i < tau_samples; ++i) {
        const double tau =
            tau_samples == 1
                ? t
                : t + (t_hi - t) * static_cast<double>(i) / static_cast<double>(tau_samples - 1);
        const RaySegment seg = fundamental_segment(m, addr, tau, segment_samples, opts);
        best = std::max(best, diamstar_upper(seg, boundary_samples).value);
    }
    return best;
}

} // namespace raylander
