#pragma once

#include "pulsewalk/core.hpp"
#include "pulsewalk/toggling.hpp"

#include <Eigen/Core>

#include <complex>

namespace pulsewalk {

using Mat2c = Eigen::Matrix2cd;

/// Pauli matrices sigma_x, sigma_y, sigma_z.
const Mat2c& pauli(int k);

/// -i a.sigma/2, the su(2) generator whose exponential rotates the Bloch vector by a.
Mat2c su2_generator(const Vec3& a);

/// Inverse of su2_generator for traceless anti-Hermitian input.
Vec3 generator_vector(const Mat2c& g);

Mat2c commutator(const Mat2c& a, const Mat2c& b);

/// 2x2 special unitary. Global phase is treated as unphysical: comparisons are projective.
class Su2Operator {
public:
    Su2Operator() : u_(Mat2c::Identity()) {}

    static Su2Operator identity() { return Su2Operator(); }
    /// exp(-i a.sigma/2).
    static Su2Operator from_axis_angle_vector(const Vec3& a);
    /// Accepts a unitary with unit determinant to within 1e-9.
    static Su2Operator from_matrix(const Mat2c& u);

    const Mat2c& matrix() const { return u_; }

    /// The vector a with U = +-exp(-i a.sigma/2), |a| in [0, pi].
    Vec3 axis_angle_vector() const;

    Su2Operator adjoint() const { return Su2Operator(u_.adjoint()); }
    Su2Operator operator*(const Su2Operator& rhs) const { return Su2Operator(u_ * rhs.u_); }

    /// SO(3) image: R_ij = 1/2 Tr(sigma_i U sigma_j U^dagger).
    Rotation to_rotation() const;

    /// min(|U - V|, |U + V|) in the Frobenius norm.
    double projective_distance(const Su2Operator& other) const;

    double unitarity_defect() const;

private:
    explicit Su2Operator(const Mat2c& u) : u_(u) {}
    Mat2c u_;
};

/// Product of exact per-step exponentials exp(-i field.sigma tau/2), field = (1+eps) n + Delta z.
Su2Operator propagate(const Sequence& seq, const ErrorModel& err);

/// Error-free propagator U_0(t_f).
Su2Operator nominal_propagator(const Sequence& seq);

/// V = U_0^dagger U, the toggling-frame propagator whose axis-angle vector measures the error.
Su2Operator error_propagator(const Sequence& seq, const ErrorModel& err);

/// Vector coefficients of the first two Magnus terms of V, Phi_n = -i (vector).sigma/2, using the
/// standard time ordering Phi_2 = 1/2 int dt1 int_0^t1 dt2 [A(t1), A(t2)].
/// phi1 = p(t_f). phi2 = 1/2 int Omega_1'(t) x p(t) dt, which is -(1/2 \oint p x dp) on a closed
/// walk: the Magnus term carries the opposite orientation to the vector area.
struct MagnusTerms {
    Vec3 phi1_vector = Vec3::Zero();
    Vec3 phi2_vector = Vec3::Zero();
};

MagnusTerms magnus_terms(const Sequence& seq, const ErrorModel& err);

/// sum_j sigma_{phi'_j} and sum_j sigma_{phi''_j}, returned as (sigma_x, sigma_y) coefficients.
/// Under sigma_x -> 1, sigma_y -> i these are the amplitude walk residual and half the detuning
/// walk residual (detuning chords have length 2).
struct JonesSums {
    Eigen::Vector2d amplitude_sum = Eigen::Vector2d::Zero();
    Eigen::Vector2d detuning_sum = Eigen::Vector2d::Zero();
};

JonesSums jones_constraints(const TogglingPhases& phases);

}  // namespace pulsewalk
