#pragma once

#include <limits>
#include <string>
#include <vector>

#include "raylander/rays.hpp"

namespace raylander {

enum class Classification { repelling, parabolic, invalid_attracting };

const char* classification_name(Classification c);

/// Classification by multiplier modulus alone: repelling above 1 + tol,
/// parabolic within tol of 1, invalid_attracting below 1 - tol (a ray
/// landing point is never attracting, so that value flags an engine
/// inconsistency rather than a legitimate outcome). Total function.
Classification classify(Complex multiplier, double tol);

/// Full record of one landing run: the landing point with residual and
/// multiplier, its classification, and the per-pullback diagnostics
/// (Euclidean diameters, hyperbolic upper bounds, consecutive bound
/// quotients). Entry 0 of the sequences describes the initial segment.
struct LandingCertificate {
    ExpMap map;
    ExternalAddress address;
    Complex w{0.0, 0.0};
    double residual = 0.0;
    Complex multiplier{0.0, 0.0};
    Classification classification = Classification::repelling;
    std::vector<double> diameters;
    std::vector<double> hyp_bounds;
    std::vector<double> ratios;
    int pullbacks_used = 0;
    std::vector<std::string> surrogate_flags;
    double convergence_exponent = std::numeric_limits<double>::quiet_NaN();
};

struct LandingOptions {
    double tol = 1e-10;              // Euclidean diameter target
    int max_pullbacks = 64;
    int parabolic_factor = 100;      // max_pullbacks multiplier for sub-geometric runs
    int initial_samples = 17;
    double classification_tol = 1e-6;
    int settle = 5;                  // pullbacks excluded from ratio statistics
    TraceOptions trace;
};

/// One pullback of a fundamental segment along its ray: the k inverse
/// branches dictated by the address applied to every sample; the result
/// spans [F^{-k}(t_lo), t_lo]. The new upper endpoint must reproduce the
/// old lower endpoint (to 1e-10); a violation means the branch indices
/// left the expected ray and raises ConvergenceError("branch-mismatch").
RaySegment pullback_segment(const ExpMap& m, const ExternalAddress& addr,
                            const RaySegment& seg);

/// The landing engine: iterated pullback of the fundamental segment at t0
/// until its Euclidean diameter drops below tol, Newton refinement of the
/// limit, classification, and a co-convergence check of both endpoints
/// against the refined point. Requires a certified bounded post-singular
/// set (HypothesisError otherwise). Runs whose contraction turns
/// sub-geometric get the enlarged pullback budget and a fitted decay
/// exponent instead of a geometric ratio.
LandingCertificate land_ray(const ExpMap& m, const ExternalAddress& addr, double t0,
                            const LandingOptions& opts = {});

} // namespace raylander
