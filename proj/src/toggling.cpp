#include "pulsewalk/toggling.hpp"

#include <algorithm>
#include <cmath>

namespace pulsewalk {

TogglingPhases toggle_phases(std::span<const double> lab_phases) {
    TogglingPhases out;
    out.phases.reserve(lab_phases.size());
    // Running value of -sum_{k<j} (-1)^k 2 phi_k with k counted from 1.
    double prefix = 0.0;
    for (std::size_t i = 0; i < lab_phases.size(); ++i) {
        const std::size_t j = i + 1;
        const double sign_j = (j % 2 == 0) ? 1.0 : -1.0;  // (-1)^j
        out.phases.push_back(normalize_half_turns(-sign_j * lab_phases[i] + prefix));
        prefix -= sign_j * 2.0 * lab_phases[i];
    }
    return out;
}

TogglingPhases toggle_phases(const Sequence& seq) {
    if (!seq.is_pi_train()) {
        throw Error(ErrorCode::unsupported_pulse_area,
                    "toggling phase map applies to pi-pulse trains only; '" + seq.name() + "' has other pulse areas");
    }
    const auto lab = seq.phases();
    return toggle_phases(std::span<const double>(lab));
}

TogglingPhases planar_toggling_phases(const Sequence& seq) {
    NominalFrame frame(seq);
    TogglingPhases out;
    for (std::size_t m = 0; m < seq.size(); ++m) {
        Vec3 d = frame.boundary(m).inverse().apply(seq.steps()[m].axis());
        if (std::abs(d.z()) > 1e-12) {
            throw Error(ErrorCode::unsupported_pulse_area,
                        "step " + std::to_string(m + 1) + " of '" + seq.name() +
                            "' does not drive within the toggling x'y'-plane");
        }
        out.phases.push_back(normalize_half_turns(std::atan2(d.y(), d.x()) / kPi));
    }
    return out;
}

std::vector<Vec3> toggling_directions(const Sequence& seq) {
    NominalFrame frame(seq);
    std::vector<Vec3> out;
    out.reserve(seq.size());
    for (std::size_t m = 0; m < seq.size(); ++m) out.push_back(frame.boundary(m).inverse().apply(seq.steps()[m].axis()));
    return out;
}

NominalFrame::NominalFrame(Sequence seq) : seq_(std::move(seq)) {
    starts_.reserve(seq_.size() + 1);
    boundaries_.reserve(seq_.size() + 1);
    starts_.push_back(0.0);
    boundaries_.push_back(Rotation::identity());
    for (const auto& step : seq_.steps()) {
        starts_.push_back(starts_.back() + step.duration());
        boundaries_.push_back(Rotation::about(step.axis(), step.duration()) * boundaries_.back());
    }
}

std::size_t NominalFrame::step_at(double t) const {
    const double tf = total_duration();
    const double slack = 1e-12 * tf;
    if (!(t >= -slack) || !(t <= tf + slack)) {
        throw Error(ErrorCode::out_of_range,
                    "time " + std::to_string(t) + " outside [0, " + std::to_string(tf) + "]");
    }
    auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
    std::size_t m = it == starts_.begin() ? 0 : static_cast<std::size_t>(it - starts_.begin()) - 1;
    return std::min(m, seq_.size() - 1);
}

Rotation NominalFrame::rotation_at(double t) const {
    const std::size_t m = step_at(t);
    const auto& step = seq_.steps()[m];
    return Rotation::about(step.axis(), t - starts_[m]) * boundaries_[m];
}

Vec3 NominalFrame::error_at(const ErrorModel& err, double t) const {
    const std::size_t m = step_at(t);
    return error_in_step(err, m, t - starts_[m]);
}

Vec3 NominalFrame::error_in_step(const ErrorModel& err, std::size_t m, double tau) const {
    const Vec3 n = seq_.steps().at(m).axis();
    const Rotation r = Rotation::about(n, tau) * boundaries_[m];
    return r.inverse().apply(err.lab_field(n));
}

Vec3 NominalFrame::partial_error_integral(const ErrorModel& err, std::size_t m, double tau) const {
    const Vec3 n = seq_.steps().at(m).axis();
    const Vec3 v = err.lab_field(n);
    // int_0^tau R_n(-s) v ds, with R_n(-s) v = v cos s - (n x v) sin s + n (n.v)(1 - cos s).
    const Vec3 local = v * std::sin(tau) - n.cross(v) * (1.0 - std::cos(tau)) + n * n.dot(v) * (tau - std::sin(tau));
    return boundaries_[m].inverse().apply(local);
}

Vec3 NominalFrame::error_integral(const ErrorModel& err, double t) const {
    const std::size_t m = step_at(t);
    Vec3 p = Vec3::Zero();
    for (std::size_t k = 0; k < m; ++k) p += partial_error_integral(err, k, seq_.steps()[k].duration());
    return p + partial_error_integral(err, m, t - starts_[m]);
}

Rotation nominal_rotation(const Sequence& seq, double t) { return NominalFrame(seq).rotation_at(t); }

Vec3 error_in_toggling_frame(const Sequence& seq, const ErrorModel& err, double t) {
    return NominalFrame(seq).error_at(err, t);
}

}  // namespace pulsewalk
