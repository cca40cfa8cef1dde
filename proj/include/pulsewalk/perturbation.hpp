#pragma once

#include "pulsewalk/core.hpp"

namespace pulsewalk {

/// First- and second-order toggling-frame corrections r'_1(t_f), r'_2(t_f) for one initial state,
/// with the tail bound of the truncated series.
struct PerturbationReport {
    Vec3 r1 = Vec3::Zero();
    Vec3 r2 = Vec3::Zero();
    double tail_bound = 0.0;
    int order_certified = 0;
};

/// r'_1(t_f) = p(t_f) x r0. Single-channel errors on pi-pulse trains take p(t_f) from the
/// geometric walk; everything else integrates Omega_1' numerically.
Vec3 compute_r1(const Sequence& seq, const ErrorModel& err, const Vec3& r0);

/// r'_2(t_f) = int_0^tf Omega_1'(s) x (p(s) x r0) ds by adaptive quadrature, segmented at pulse
/// boundaries.
Vec3 compute_r2(const Sequence& seq, const ErrorModel& err, const Vec3& r0);

/// max_t |Omega_1'(t)|, which equals max_t |Omega_1(t)| since frames differ by a rotation.
double max_error_norm(const Sequence& seq, const ErrorModel& err);

/// Majorant of the n-th term: (1/n!) (|Omega_1|_max t_f)^n.
double term_bound(const Sequence& seq, const ErrorModel& err, int n);

/// Bound on the series remainder after order n: x^(n+1)/(n+1)! * e^x with x = |Omega_1|_max t_f.
double truncation_bound(const Sequence& seq, const ErrorModel& err, int n);

PerturbationReport perturbation_report(const Sequence& seq, const ErrorModel& err, const Vec3& r0);

/// Highest order k in {0, 1, 2} with r'_1..r'_k vanishing at all six axis states. Terms are
/// compared against tol * (|Omega_1|_max t_f)^k.
int certify_order(const Sequence& seq, const ErrorModel& err, double tol = 1e-9);

}  // namespace pulsewalk
