#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pulsewalk {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

enum class ErrorCode {
    invalid_argument,
    unsupported_pulse_area,
    open_walk,
    out_of_range,
    infeasible,
    no_sign_change,
    unknown_name,
    parse_error,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Which systematic error a walk, slope or certificate refers to.
enum class Channel { amplitude, detuning };

const char* to_string(Channel channel);
Channel parse_channel(const std::string& text);

// Angles given "in units of pi" are called half-turns throughout: a pi-pulse has angle 1.

/// Wraps an angle in half-turns into (-1, 1].
double normalize_half_turns(double half_turns);

/// True when two half-turn angles agree modulo a full turn.
bool same_half_turns(double a, double b, double tol = 1e-12);

/// Proper rotation of R^3 stored as an orthogonal matrix with det +1.
class Rotation {
public:
    Rotation() : m_(Mat3::Identity()) {}

    static Rotation identity() { return Rotation(); }
    /// Right-handed rotation by `angle` radians about `axis` (normalized internally).
    static Rotation about(const Vec3& axis, double angle);
    /// Accepts a matrix that is orthogonal with det +1 to within 1e-9.
    static Rotation from_matrix(const Mat3& m);

    const Mat3& matrix() const { return m_; }
    Vec3 apply(const Vec3& v) const { return m_ * v; }
    Rotation inverse() const { return Rotation(m_.transpose()); }

    /// Composition: (*this * rhs).apply(v) == apply(rhs.apply(v)).
    Rotation operator*(const Rotation& rhs) const { return Rotation(m_ * rhs.m_); }

    /// Axis times angle, angle in [0, pi].
    Vec3 rotation_vector() const;

    /// Largest deviation of R R^T from I and of det R from 1.
    double orthogonality_defect() const;

private:
    explicit Rotation(const Mat3& m) : m_(m) {}
    Mat3 m_;
};

Vec3 rotate(const Rotation& r, const Vec3& v);
Rotation axis_angle_rotation(const Vec3& axis, double angle);
/// a applied after b.
Rotation compose(const Rotation& a, const Rotation& b);

/// One rectangular control pulse R_phase^angle. Both values in half-turns.
class PulseStep {
public:
    /// Phase is wrapped into (-1, 1]; angle must lie in (0, 2].
    PulseStep(double phase, double angle);

    double phase() const { return phase_; }
    double angle() const { return angle_; }
    /// Dimensionless duration (Omega_0 t) of the pulse at unit drive strength.
    double duration() const { return angle_ * kPi; }
    /// Lab-frame direction of the transverse drive field.
    Vec3 axis() const;
    bool is_pi_pulse(double tol = 1e-12) const;

private:
    double phase_;
    double angle_;
};

/// Net rotation a sequence is meant to realize.
struct NetEffect {
    Vec3 axis = Vec3::UnitX();
    double angle = 1.0;  // half-turns
};

class Sequence {
public:
    Sequence(std::string name, std::vector<PulseStep> steps, NetEffect intended = {});

    const std::string& name() const { return name_; }
    const std::vector<PulseStep>& steps() const { return steps_; }
    const NetEffect& intended_net_effect() const { return intended_; }
    std::size_t size() const { return steps_.size(); }

    double total_duration() const;
    bool is_pi_train(double tol = 1e-12) const;
    std::vector<double> phases() const;
    std::vector<double> angles() const;

private:
    std::string name_;
    std::vector<PulseStep> steps_;
    NetEffect intended_;
};

/// Constant amplitude fraction epsilon and detuning Delta (in units of Omega_0).
class ErrorModel {
public:
    ErrorModel() = default;
    ErrorModel(double epsilon, double delta);

    static ErrorModel amplitude(double epsilon) { return {epsilon, 0.0}; }
    static ErrorModel detuning(double delta) { return {0.0, delta}; }
    static ErrorModel of(Channel channel, double magnitude);

    double epsilon() const { return epsilon_; }
    double delta() const { return delta_; }
    bool is_zero() const { return epsilon_ == 0.0 && delta_ == 0.0; }

    /// Lab-frame error field epsilon * drive + Delta z for a step driven along `drive_axis`.
    Vec3 lab_field(const Vec3& drive_axis) const;

private:
    double epsilon_ = 0.0;
    double delta_ = 0.0;
};

}  // namespace pulsewalk
