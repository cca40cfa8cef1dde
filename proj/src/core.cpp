#include "pulsewalk/core.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pulsewalk {

const char* to_string(Channel channel) {
    return channel == Channel::amplitude ? "amplitude" : "detuning";
}

Channel parse_channel(const std::string& text) {
    if (text == "amplitude") return Channel::amplitude;
    if (text == "detuning") return Channel::detuning;
    throw Error(ErrorCode::invalid_argument, "unknown channel '" + text + "' (expected amplitude or detuning)");
}

double normalize_half_turns(double half_turns) {
    double r = std::fmod(half_turns, 2.0);
    if (r <= -1.0) r += 2.0;
    if (r > 1.0) r -= 2.0;
    // Values within rounding of -1 belong to the +1 end of the branch.
    if (std::abs(r + 1.0) < 1e-12) r = 1.0;
    return r;
}

bool same_half_turns(double a, double b, double tol) {
    double d = normalize_half_turns(a - b);
    return std::abs(d) < tol || std::abs(std::abs(d) - 2.0) < tol;
}

Rotation Rotation::about(const Vec3& axis, double angle) {
    double n = axis.norm();
    if (n == 0.0) {
        if (angle == 0.0) return Rotation();
        throw Error(ErrorCode::invalid_argument, "rotation axis has zero length");
    }
    return Rotation(Eigen::AngleAxisd(angle, axis / n).toRotationMatrix());
}

Rotation Rotation::from_matrix(const Mat3& m) {
    Rotation r(m);
    if (!m.allFinite() || r.orthogonality_defect() > 1e-9) {
        throw Error(ErrorCode::invalid_argument, "matrix is not a proper rotation");
    }
    return r;
}

Vec3 Rotation::rotation_vector() const {
    Eigen::AngleAxisd aa(m_);
    return aa.axis() * aa.angle();
}

double Rotation::orthogonality_defect() const {
    double ortho = (m_ * m_.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff();
    return std::max(ortho, std::abs(m_.determinant() - 1.0));
}

Vec3 rotate(const Rotation& r, const Vec3& v) { return r.apply(v); }

Rotation axis_angle_rotation(const Vec3& axis, double angle) { return Rotation::about(axis, angle); }

Rotation compose(const Rotation& a, const Rotation& b) { return a * b; }

PulseStep::PulseStep(double phase, double angle) : phase_(normalize_half_turns(phase)), angle_(angle) {
    if (!std::isfinite(phase) || !std::isfinite(angle)) {
        throw Error(ErrorCode::invalid_argument, "pulse phase and angle must be finite");
    }
    if (!(angle > 0.0) || angle > 2.0) {
        throw Error(ErrorCode::invalid_argument, "pulse angle must lie in (0, 2] half-turns");
    }
}

Vec3 PulseStep::axis() const {
    double phi = phase_ * kPi;
    return {std::cos(phi), std::sin(phi), 0.0};
}

bool PulseStep::is_pi_pulse(double tol) const { return std::abs(angle_ - 1.0) < tol; }

Sequence::Sequence(std::string name, std::vector<PulseStep> steps, NetEffect intended)
    : name_(std::move(name)), steps_(std::move(steps)), intended_(intended) {
    if (steps_.empty()) {
        throw Error(ErrorCode::invalid_argument, "sequence '" + name_ + "' has no steps");
    }
    if (!(intended_.axis.norm() > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "intended net effect needs a nonzero axis");
    }
    intended_.axis.normalize();
}

double Sequence::total_duration() const {
    return std::accumulate(steps_.begin(), steps_.end(), 0.0,
                           [](double acc, const PulseStep& s) { return acc + s.duration(); });
}

bool Sequence::is_pi_train(double tol) const {
    return std::all_of(steps_.begin(), steps_.end(), [tol](const PulseStep& s) { return s.is_pi_pulse(tol); });
}

std::vector<double> Sequence::phases() const {
    std::vector<double> out;
    out.reserve(steps_.size());
    for (const auto& s : steps_) out.push_back(s.phase());
    return out;
}

std::vector<double> Sequence::angles() const {
    std::vector<double> out;
    out.reserve(steps_.size());
    for (const auto& s : steps_) out.push_back(s.angle());
    return out;
}

ErrorModel::ErrorModel(double epsilon, double delta) : epsilon_(epsilon), delta_(delta) {
    if (!std::isfinite(epsilon) || !std::isfinite(delta) || std::abs(epsilon) >= 1.0 || std::abs(delta) >= 1.0) {
        throw Error(ErrorCode::invalid_argument, "error model requires |epsilon| < 1 and |delta| < 1");
    }
}

ErrorModel ErrorModel::of(Channel channel, double magnitude) {
    return channel == Channel::amplitude ? amplitude(magnitude) : detuning(magnitude);
}

Vec3 ErrorModel::lab_field(const Vec3& drive_axis) const { return epsilon_ * drive_axis + delta_ * Vec3::UnitZ(); }

}  // namespace pulsewalk
