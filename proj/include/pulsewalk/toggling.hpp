#pragma once

#include "pulsewalk/core.hpp"

#include <span>
#include <vector>

namespace pulsewalk {

/// Toggling-frame pulse directions phi'_j, in half-turns, wrapped into (-1, 1].
struct TogglingPhases {
    std::vector<double> phases;

    std::size_t size() const { return phases.size(); }
    double operator[](std::size_t j) const { return phases[j]; }
};

/// Lab-to-toggling phase map for a train of pi-pulses:
///   phi'_j = -(-1)^j phi_j - sum_{k<j} (-1)^k 2 phi_k   (j counted from 1).
/// The map is an involution, so the same call converts toggling phases back to lab phases.
TogglingPhases toggle_phases(std::span<const double> lab_phases);

/// Same map for a sequence; throws ErrorCode::unsupported_pulse_area unless every step is a pi-pulse.
TogglingPhases toggle_phases(const Sequence& seq);

/// Toggling-frame drive directions read off the nominal frame R(t_j)^-1 n_j. Works for any
/// sequence whose drive directions stay in the x'y'-plane (pi-trains, and pi-trains followed by
/// a final pulse once the prefix has net effect identity). Throws unsupported_pulse_area otherwise.
TogglingPhases planar_toggling_phases(const Sequence& seq);

/// Toggling-frame drive directions R(t_m)^-1 n_m for every step, planar or not.
std::vector<Vec3> toggling_directions(const Sequence& seq);

/// Nominal (error-free) frame rotation R(t), solving dR/dt = Omega(t) x R with R(0) = I.
/// Boundary rotations are cached, so point queries cost O(log N).
class NominalFrame {
public:
    explicit NominalFrame(Sequence seq);

    const Sequence& sequence() const { return seq_; }
    std::size_t step_count() const { return seq_.size(); }
    double total_duration() const { return starts_.back(); }
    double step_start(std::size_t m) const { return starts_.at(m); }
    double step_end(std::size_t m) const { return starts_.at(m + 1); }

    /// Index of the step containing t; the last step owns t_f.
    std::size_t step_at(double t) const;

    /// R(t_m) for m in [0, N]; boundary(N) is the nominal net rotation.
    const Rotation& boundary(std::size_t m) const { return boundaries_.at(m); }

    Rotation rotation_at(double t) const;

    /// Omega_1'(t) = R(t)^-1 (epsilon Omega(t) + Delta z).
    Vec3 error_at(const ErrorModel& err, double t) const;

    /// Omega_1' at time t_m + tau inside step m.
    Vec3 error_in_step(const ErrorModel& err, std::size_t m, double tau) const;

    /// Closed-form integral of Omega_1' over [t_m, t_m + tau] within step m.
    Vec3 partial_error_integral(const ErrorModel& err, std::size_t m, double tau) const;

    /// Error integral p(t) = int_0^t Omega_1'(s) ds, closed form.
    Vec3 error_integral(const ErrorModel& err, double t) const;

private:
    Sequence seq_;
    std::vector<double> starts_;
    std::vector<Rotation> boundaries_;
};

Rotation nominal_rotation(const Sequence& seq, double t);
Vec3 error_in_toggling_frame(const Sequence& seq, const ErrorModel& err, double t);

}  // namespace pulsewalk
