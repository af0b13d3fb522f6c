#include "raylander/landing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace raylander {

const char* classification_name(Classification c) {
    switch (c) {
    case Classification::repelling: return "repelling";
    case Classification::parabolic: return "parabolic";
    case Classification::invalid_attracting: return "invalid_attracting";
    }
    return "?";
}

Classification classify(Complex multiplier, double tol) {
    const double mod = std::abs(multiplier);
    if (mod > 1.0 + tol) return Classification::repelling;
    if (mod < 1.0 - tol) return Classification::invalid_attracting;
    return Classification::parabolic;
}

RaySegment pullback_segment(const ExpMap& m, const ExternalAddress& addr,
                            const RaySegment& seg) {
    if (seg.samples.size() < 2) {
        throw DomainError("segment-too-short", "pullback needs a sampled segment");
    }
    const int k = addr.period();
    std::vector<RaySample> pulled;
    pulled.reserve(seg.samples.size());
    for (const RaySample& s : seg.samples) {
        Complex z = s.z;
        for (int i = k - 1; i >= 0; --i) {
            z = inverse_branch(m, z, addr.at(static_cast<std::size_t>(i)));
        }
        pulled.push_back(RaySample{ray_model(s.t, -k), z});
    }
    RaySegment out{std::move(pulled), ray_model(seg.t_lo, -k), seg.t_lo, addr};

    // g(F^k(t_lo)) pulled back one period must reproduce g(t_lo); anything
    // else means the branch indices left the ray.
    const Complex expected = seg.samples.front().z;
    const Complex got = out.samples.back().z;
    if (std::abs(got - expected) > 1e-10 * std::max(1.0, std::abs(expected))) {
        std::ostringstream os;
        os << "pullback endpoint drifted by " << std::abs(got - expected)
           << "; wrong address bookkeeping";
        throw ConvergenceError("branch-mismatch", os.str());
    }
    return out;
}

namespace {

double euclidean_diameter(const RaySegment& seg) {
    double best = 0.0;
    for (std::size_t i = 0; i < seg.samples.size(); ++i) {
        for (std::size_t j = i + 1; j < seg.samples.size(); ++j) {
            best = std::max(best, std::abs(seg.samples[i].z - seg.samples[j].z));
        }
    }
    return best;
}

// Least-squares slope of log(diam) against log(n) over the tail; a decay
// diam ~ C n^{-p} shows up as slope -p.
double fit_decay_exponent(const std::vector<double>& diameters) {
    const std::size_t n = diameters.size();
    if (n < 8) return std::numeric_limits<double>::quiet_NaN();
    const std::size_t lo = n / 2;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double count = 0.0;
    for (std::size_t i = lo; i < n; ++i) {
        if (!(diameters[i] > 0.0)) continue;
        const double x = std::log(static_cast<double>(i + 1));
        const double y = std::log(diameters[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        count += 1.0;
    }
    if (count < 4.0) return std::numeric_limits<double>::quiet_NaN();
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return -(count * sxy - sx * sy) / denom;
}

} // namespace

LandingCertificate land_ray(const ExpMap& m, const ExternalAddress& addr, double t0,
                            const LandingOptions& opts) {
    if (!(t0 > 0.0)) {
        throw DomainError("potential-out-of-range", "landing needs t0 > 0");
    }
    const PostsingularData psd = postsingular(m, 1000, 1e6);
    if (psd.status == BoundednessStatus::unbounded) {
        throw HypothesisError("postsingular-unbounded",
                              "the post-singular orbit is certified unbounded; the "
                              "landing hypothesis fails");
    }
    if (psd.status == BoundednessStatus::inconclusive) {
        throw HypothesisError("postsingular-inconclusive",
                              "no boundedness certificate for the post-singular set");
    }

    std::vector<Complex> boundary(psd.orbit.begin(), psd.orbit.end());
    if (psd.certificate != BoundednessCertificate::none) {
        boundary.push_back(psd.basin_point);
    }

    const int k = addr.period();
    LandingCertificate cert{m, addr};

    RaySegment seg = fundamental_segment(m, addr, t0, opts.initial_samples, opts.trace);
    cert.diameters.push_back(euclidean_diameter(seg));
    cert.hyp_bounds.push_back(diamstar_upper(seg, boundary).value);

    bool sub_geometric = false;
    int limit = opts.max_pullbacks;
    bool converged = false;
    int n = 0;
    while (n < limit) {
        seg = pullback_segment(m, addr, seg);
        ++n;
        cert.diameters.push_back(euclidean_diameter(seg));
        cert.hyp_bounds.push_back(diamstar_upper(seg, boundary).value);
        const std::size_t last = cert.hyp_bounds.size() - 1;
        cert.ratios.push_back(cert.hyp_bounds[last] / cert.hyp_bounds[last - 1]);
        if (cert.diameters.back() < opts.tol) {
            converged = true;
            break;
        }
        if (!sub_geometric && n == opts.max_pullbacks) {
            // Contraction that settles toward ratio 1 is the parabolic
            // signature; spend the enlarged budget instead of giving up.
            const double tail = cert.ratios.back();
            if (tail > 0.90 && tail < 1.0 + 1e-9) {
                sub_geometric = true;
                limit = opts.max_pullbacks * opts.parabolic_factor;
            }
        }
    }
    cert.pullbacks_used = n;
    cert.surrogate_flags.push_back("diamstar-surrogate");
    if (sub_geometric) {
        cert.surrogate_flags.push_back("sub-geometric-decay");
        cert.convergence_exponent = fit_decay_exponent(cert.diameters);
    }
    if (!converged) {
        const auto settle_begin =
            cert.ratios.begin() +
            static_cast<std::ptrdiff_t>(
                std::min<std::size_t>(static_cast<std::size_t>(opts.settle), cert.ratios.size()));
        const bool contracting =
            std::all_of(settle_begin, cert.ratios.end(), [](double r) { return r < 1.0; });
        throw ConvergenceError(contracting ? "pullback-budget-exhausted" : "non-contraction",
                               contracting
                                   ? "segment diameter did not reach tol within the budget"
                                   : "pullback ratios are not settling below 1");
    }

    const PeriodicPoint refined = refine_periodic_point(m, k, seg.samples.front().z);
    cert.w = refined.w;
    cert.residual = refined.residual;
    cert.multiplier = refined.multiplier;
    cert.classification = classify(refined.multiplier, opts.classification_tol);

    // Co-convergence of both endpoints to the refined point. Geometric
    // contraction puts the endpoints within a small multiple of the final
    // diameter of w; at a parabolic point the distance to the landing point
    // scales like sqrt(diameter) instead, so the check must too.
    const double diam = cert.diameters.back();
    const double co_tol = sub_geometric ? std::max(2.0 * opts.tol, 4.0 * std::sqrt(diam))
                                        : 2.0 * opts.tol;
    const double d_lo = std::abs(seg.samples.front().z - cert.w);
    const double d_hi = std::abs(seg.samples.back().z - cert.w);
    if (d_lo > co_tol || d_hi > co_tol) {
        std::ostringstream os;
        os << "segment endpoints sit " << std::max(d_lo, d_hi)
           << " from the refined landing point (allowed " << co_tol << ")";
        throw ConvergenceError("co-convergence-failed", os.str());
    }
    return cert;
}

} // namespace raylander
