#include "pulsewalk/magnus.hpp"

#include "pulsewalk/walks.hpp"
#include "quadrature.hpp"

#include <array>
#include <cmath>

namespace pulsewalk {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
constexpr double kQuadratureTolerance = 1e-13;

Mat2c make(cd a, cd b, cd c, cd d) {
    Mat2c m;
    m << a, b, c, d;
    return m;
}

Mat2c sigma_dot(const Vec3& v) { return v.x() * pauli(0) + v.y() * pauli(1) + v.z() * pauli(2); }

Mat2c exp_generator(const Vec3& a) {
    const double angle = a.norm();
    if (angle == 0.0) return Mat2c::Identity();
    const Vec3 axis = a / angle;
    return std::cos(angle / 2) * Mat2c::Identity() - kI * std::sin(angle / 2) * sigma_dot(axis);
}

Eigen::Vector2d pauli_plane_sum(const TogglingPhases& phases) {
    Mat2c s = Mat2c::Zero();
    for (double phi : phases.phases) s += std::cos(kPi * phi) * pauli(0) + std::sin(kPi * phi) * pauli(1);
    return {0.5 * (pauli(0) * s).trace().real(), 0.5 * (pauli(1) * s).trace().real()};
}

}  // namespace

const Mat2c& pauli(int k) {
    static const std::array<Mat2c, 3> sigma = {
        make(0.0, 1.0, 1.0, 0.0),
        make(0.0, -kI, kI, 0.0),
        make(1.0, 0.0, 0.0, -1.0),
    };
    if (k < 0 || k > 2) throw Error(ErrorCode::invalid_argument, "Pauli index must be 0, 1 or 2");
    return sigma[static_cast<std::size_t>(k)];
}

Mat2c su2_generator(const Vec3& a) { return -0.5 * kI * sigma_dot(a); }

Vec3 generator_vector(const Mat2c& g) {
    // g = -i a.sigma/2  =>  Tr(sigma_k g) = -i a_k.
    Vec3 a;
    for (int k = 0; k < 3; ++k) a[k] = -(pauli(k) * g).trace().imag();
    return a;
}

Mat2c commutator(const Mat2c& a, const Mat2c& b) { return a * b - b * a; }

Su2Operator Su2Operator::from_axis_angle_vector(const Vec3& a) { return Su2Operator(exp_generator(a)); }

Su2Operator Su2Operator::from_matrix(const Mat2c& u) {
    Su2Operator op(u);
    if (op.unitarity_defect() > 1e-9) throw Error(ErrorCode::invalid_argument, "matrix is not in SU(2)");
    return op;
}

Vec3 Su2Operator::axis_angle_vector() const {
    // U = w I - i v.sigma with w = cos(angle/2), v = sin(angle/2) axis.
    double w = 0.5 * u_.trace().real();
    Vec3 v;
    for (int k = 0; k < 3; ++k) v[k] = -0.5 * (pauli(k) * u_).trace().imag();
    if (w < 0.0) {
        w = -w;
        v = -v;
    }
    const double s = v.norm();
    if (s == 0.0) return Vec3::Zero();
    return (2.0 * std::atan2(s, w) / s) * v;
}

Rotation Su2Operator::to_rotation() const {
    Mat3 r;
    const Mat2c ud = u_.adjoint();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) r(i, j) = 0.5 * (pauli(i) * u_ * pauli(j) * ud).trace().real();
    }
    return Rotation::from_matrix(r);
}

double Su2Operator::projective_distance(const Su2Operator& other) const {
    return std::min((u_ - other.u_).norm(), (u_ + other.u_).norm());
}

double Su2Operator::unitarity_defect() const {
    const double unitary = (u_ * u_.adjoint() - Mat2c::Identity()).cwiseAbs().maxCoeff();
    return std::max(unitary, std::abs(u_.determinant() - 1.0));
}

Su2Operator propagate(const Sequence& seq, const ErrorModel& err) {
    Su2Operator u;
    for (const auto& step : seq.steps()) {
        const Vec3 field = step.axis() + err.lab_field(step.axis());
        u = Su2Operator::from_axis_angle_vector(field * step.duration()) * u;
    }
    return u;
}

Su2Operator nominal_propagator(const Sequence& seq) { return propagate(seq, ErrorModel(0.0, 0.0)); }

Su2Operator error_propagator(const Sequence& seq, const ErrorModel& err) {
    return nominal_propagator(seq).adjoint() * propagate(seq, err);
}

MagnusTerms magnus_terms(const Sequence& seq, const ErrorModel& err) {
    const NominalFrame frame(seq);
    MagnusTerms out;
    Vec3 p_start = Vec3::Zero();
    for (std::size_t m = 0; m < frame.step_count(); ++m) {
        const double t0 = frame.step_start(m);
        const double t1 = frame.step_end(m);
        out.phi1_vector += detail::integrate<Vec3>([&](double t) { return frame.error_in_step(err, m, t - t0); },
                                                   t0, t1, kQuadratureTolerance);
        auto integrand = [&](double t) -> Vec3 {
            const Vec3 p = p_start + frame.partial_error_integral(err, m, t - t0);
            return 0.5 * frame.error_in_step(err, m, t - t0).cross(p);
        };
        out.phi2_vector += detail::integrate<Vec3>(integrand, t0, t1, kQuadratureTolerance);
        p_start += frame.partial_error_integral(err, m, t1 - t0);
    }
    return out;
}

JonesSums jones_constraints(const TogglingPhases& phases) {
    return {pauli_plane_sum(phases), pauli_plane_sum(detuning_phases(phases))};
}

}  // namespace pulsewalk
