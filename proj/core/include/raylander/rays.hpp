#pragma once

#include <span>
#include <vector>

#include "raylander/expfield.hpp"

namespace raylander {

/// Periodic integer sequence selecting an inverse branch at each pullback
/// step; entries holds one period.
struct ExternalAddress {
    std::vector<long> entries;

    explicit ExternalAddress(std::vector<long> period_entries);

    int period() const { return static_cast<int>(entries.size()); }

    /// s_{i+1} of the infinite periodic sequence (0-based i).
    long at(std::size_t i) const { return entries[i % entries.size()]; }

    long bound() const;
};

/// Potential ceiling of the ray model iteration: reference potentials may
/// take one step past this value (expm1(700) is still representable) but
/// never two.
inline constexpr double kPotentialCeiling = 700.0;

/// Hard cap on pullback depth, reached only for extremely small
/// potentials; beyond it the backward iteration has long since stabilized.
inline constexpr long kMaxTraceDepth = 5'000'000;

/// Ray model dynamics F(t) = e^t - 1: continuous, unbounded, strictly
/// increasing, F(0) = 0. n < 0 applies the inverse log(1+t) |n| times.
/// Throws ConvergenceError("overflow-restructure") instead of clamping
/// when an iterate would leave the representable range.
double ray_model(double t, long n);

struct TraceOptions {
    double tol = 1e-12;
    long max_depth = 0;                    // <= 0: derive from the ceiling
    double potential_ceiling = kPotentialCeiling;
};

/// The point g(t) of the dynamic ray with the given external address,
/// computed as the limit of backward iterates: start from the reference
/// point F^d(t) - Log lambda + 2 pi i s_{d+1} and apply the inverse
/// branches s_d, ..., s_1. When the reference potential clears the
/// asymptotic threshold the reference error is below any representable
/// tolerance; otherwise (depth-capped regime of tiny t) depth is doubled
/// until two successive traces agree within tol.
Complex trace_ray(const ExpMap& m, const ExternalAddress& addr, double t,
                  const TraceOptions& opts = {});

struct RaySample {
    double t;
    Complex z;
};

/// Sampled ray piece between two potentials, t strictly increasing.
struct RaySegment {
    std::vector<RaySample> samples;
    double t_lo = 0.0;
    double t_hi = 0.0;
    ExternalAddress address;
};

/// Fundamental segment g[t, F^k(t)] of the k-periodic ray, sampled on an
/// initial grid of `samples` potentials and then refined where the
/// Euclidean midpoint deviation exceeds 1e-3 of the local scale.
/// samples == 2 returns exactly the two endpoints, unrefined.
RaySegment fundamental_segment(const ExpMap& m, const ExternalAddress& addr, double t,
                               int samples, const TraceOptions& opts = {});

struct DiamStarEstimate {
    double t = 0.0;                 // lower potential of the segment
    double value = 0.0;             // upper bound
    int boundary_samples_used = 0;
};

/// Upper bound for diam* of a sampled segment: the polyline length in the
/// pointwise upper density 2/dist(z, boundary_samples), which dominates
/// the true density and hence every geodesic representative. The
/// boundary samples approximate the post-singular set; a segment passing
/// through them signals a tracing fault and raises
/// DomainError("segment-intersects-boundary-samples").
DiamStarEstimate diamstar_upper(const RaySegment& seg,
                                std::span<const Complex> boundary_samples);

/// Surrogate for M(t) = sup over tau in [t, F^k(t)] of diam* of
/// g[tau, F^k(tau)]: diamstar_upper maximized over a grid of tau values.
/// Surrogate on two counts (upper density bound, sampled sup); report it
/// flagged as such.
double m_surrogate(const ExpMap& m, const ExternalAddress& addr, double t,
                   std::span<const Complex> boundary_samples, int tau_samples,
                   int segment_samples, const TraceOptions& opts = {});

} // namespace raylander
