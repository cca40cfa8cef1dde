#pragma once

#include "pulsewalk/core.hpp"
#include "pulsewalk/toggling.hpp"

#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace pulsewalk {

/// Closure tolerance for walks, in scaled units (epsilon*pi for amplitude, Delta for detuning).
inline constexpr double kClosureTolerance = 1e-9;

struct LineSegment {
    Vec3 start;
    Vec3 end;
};

/// Circular arc: start point swept by `sweep` radians about `axis` through `center`.
struct ArcSegment {
    Vec3 center;
    Vec3 axis;
    Vec3 start;
    double sweep = kPi;
};

struct WalkSegment {
    std::variant<LineSegment, ArcSegment> shape;
    std::size_t step = 0;   // 0-based step index
    double duration = 0.0;  // dimensionless time spent on the segment
};

Vec3 segment_point(const WalkSegment& seg, double fraction);

/// Error-integral walk in scaled units: amplitude walks in units of epsilon*pi (a pi-pulse
/// contributes a unit step), detuning walks in units of Delta (a pi-pulse contributes a
/// semicircle of radius 1 and a chord of length 2).
struct Walk {
    Channel kind = Channel::amplitude;
    TogglingPhases phases;
    std::vector<Vec3> steps;
    std::vector<WalkSegment> curve;
    Vec3 closure_residual = Vec3::Zero();
    std::optional<Vec3> vector_area;  // set only when the walk closes

    bool closed(double tol = kClosureTolerance) const { return closure_residual.norm() < tol; }
};

/// p_j = area_j (cos phi'_j, sin phi'_j, 0); `areas` in half-turns, one per phase.
Walk amplitude_walk(const TogglingPhases& phases, std::span<const double> areas);
/// p_j = area_j d_j for arbitrary toggling directions d_j; `phases` is left empty.
Walk amplitude_walk(std::span<const Vec3> directions, std::span<const double> areas);
/// All-pi-pulse amplitude walk.
Walk amplitude_walk(const TogglingPhases& phases);

/// p_j = 2 (-1)^(j-1) z' x n'_j: the pulse direction turned +90 deg on odd steps and -90 deg
/// on even steps. Each step traces a semicircle in the plane normal to n'_j, above the
/// x'y'-plane on odd steps and below it on even steps.
Walk detuning_walk(const TogglingPhases& phases);

/// Builds the walk for a sequence. Amplitude walks accept any sequence (a polyline that leaves
/// the x'y'-plane when the toggling drive does); detuning walks require a pi-pulse train.
Walk walk_for(const Sequence& seq, Channel channel);

/// 1/2 int p x dp along the curve, closed form. Defined for open curves too.
Vec3 area_integral(const Walk& w);

/// Vector area 1/2 \oint p x dp of a closed walk; throws ErrorCode::open_walk otherwise.
Vec3 vector_area(const Walk& w, double tol = kClosureTolerance);

/// sum_j sum_{k<j} sin(phi_j - phi_k) over toggling phases (amplitude) or over
/// phi''_j = phi'_j + (-1)^(j+1) pi/2 (detuning).
double pairwise_sine_sum(const TogglingPhases& phases, Channel channel);

/// phi''_j = phi'_j + (-1)^(j+1) pi/2, in half-turns.
TogglingPhases detuning_phases(const TogglingPhases& phases);

struct SecondOrderReport {
    Vec3 vector_area = Vec3::Zero();
    double pairwise_sine_sum = 0.0;
    bool fully_compensating = false;
    std::optional<Vec3> preserved_axis;
};

SecondOrderReport second_order_report(const Walk& w, double tol = kClosureTolerance);

/// Factor converting scaled walk units to physical error-integral units.
double walk_scale(Channel channel, const ErrorModel& err);

struct WalkSample {
    double t = 0.0;
    Vec3 p = Vec3::Zero();
    std::size_t step = 0;
};

/// Samples the curve: the origin, then `per_segment` evenly spaced points on each segment.
std::vector<WalkSample> sample_walk(const Walk& w, std::size_t per_segment);

}  // namespace pulsewalk
