#pragma once

#include "pulsewalk/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pulsewalk {

struct TrajectoryPoint {
    double t = 0.0;
    Vec3 r = Vec3::Zero();
};

struct SimResult {
    Vec3 final_lab = Vec3::Zero();
    Vec3 final_toggling = Vec3::Zero();
    Vec3 ideal = Vec3::Zero();
    double deviation = 0.0;
    std::vector<TrajectoryPoint> trajectory;
};

/// Exact lab-frame propagation: each step is a rotation about (1+epsilon) n_m + Delta z by
/// |field| * duration.
Rotation exact_rotation(const Sequence& seq, const ErrorModel& err);

/// Evolves r0 (|r0| = 1) through the sequence. `samples_per_step` > 0 also records a trajectory
/// (the initial point plus that many points per step).
SimResult evolve(const Sequence& seq, const ErrorModel& err, const Vec3& r0, std::size_t samples_per_step = 0);

/// Seed used for the random part of the default initial-state set.
inline constexpr std::uint64_t kDefaultSeed = 1790;

/// +-x, +-y, +-z.
std::vector<Vec3> axis_states();

/// The six axis states followed by 20 unit vectors drawn uniformly on the sphere from `seed`.
std::vector<Vec3> default_initial_states(std::uint64_t seed = kDefaultSeed);

/// Largest |r_final - r_ideal| over the given initial states.
double worst_case_deviation(const Sequence& seq, const ErrorModel& err, std::span<const Vec3> states);

struct SlopeRange {
    double lo = 1e-4;
    double hi = 1e-2;
    std::size_t points = 7;
};

struct SlopeReport {
    std::vector<double> error_values;
    std::vector<double> deviations;
    std::optional<double> slope;  // empty when every deviation is below 1e-14
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Least-squares slope of log(worst-case deviation) against log(error) over log-spaced error
/// magnitudes. An n-th order suppressing sequence shows slope n + 1.
SlopeReport scaling_slope(const Sequence& seq, Channel channel, std::span<const Vec3> states,
                          const SlopeRange& range = {});

}  // namespace pulsewalk
