#include "pulsewalk/perturbation.hpp"

#include "pulsewalk/bloch_sim.hpp"
#include "pulsewalk/toggling.hpp"
#include "pulsewalk/walks.hpp"
#include "quadrature.hpp"

#include <cmath>

namespace pulsewalk {
namespace {

constexpr double kQuadratureTolerance = 1e-13;

std::optional<Channel> single_channel(const ErrorModel& err) {
    if (err.delta() == 0.0) return Channel::amplitude;
    if (err.epsilon() == 0.0) return Channel::detuning;
    return std::nullopt;
}

Vec3 integrated_error(const NominalFrame& frame, const ErrorModel& err) {
    Vec3 p = Vec3::Zero();
    for (std::size_t m = 0; m < frame.step_count(); ++m) {
        const double t0 = frame.step_start(m);
        p += detail::integrate<Vec3>([&](double t) { return frame.error_in_step(err, m, t - t0); }, t0,
                                     frame.step_end(m), kQuadratureTolerance);
    }
    return p;
}

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

}  // namespace

Vec3 compute_r1(const Sequence& seq, const ErrorModel& err, const Vec3& r0) {
    const auto channel = single_channel(err);
    if (channel && seq.is_pi_train()) {
        const Walk w = walk_for(seq, *channel);
        return (walk_scale(*channel, err) * w.closure_residual).cross(r0);
    }
    return integrated_error(NominalFrame(seq), err).cross(r0);
}

Vec3 compute_r2(const Sequence& seq, const ErrorModel& err, const Vec3& r0) {
    const NominalFrame frame(seq);
    Vec3 r2 = Vec3::Zero();
    Vec3 p_start = Vec3::Zero();
    for (std::size_t m = 0; m < frame.step_count(); ++m) {
        const double t0 = frame.step_start(m);
        auto integrand = [&](double t) -> Vec3 {
            const Vec3 p = p_start + frame.partial_error_integral(err, m, t - t0);
            return frame.error_in_step(err, m, t - t0).cross(p.cross(r0));
        };
        r2 += detail::integrate<Vec3>(integrand, t0, frame.step_end(m), kQuadratureTolerance);
        p_start += frame.partial_error_integral(err, m, frame.step_end(m) - t0);
    }
    return r2;
}

double max_error_norm(const Sequence& seq, const ErrorModel& err) {
    double worst = 0.0;
    for (const auto& step : seq.steps()) worst = std::max(worst, err.lab_field(step.axis()).norm());
    return worst;
}

double term_bound(const Sequence& seq, const ErrorModel& err, int n) {
    if (n < 0) throw Error(ErrorCode::invalid_argument, "term order must be non-negative");
    return std::pow(max_error_norm(seq, err) * seq.total_duration(), n) / factorial(n);
}

double truncation_bound(const Sequence& seq, const ErrorModel& err, int n) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "truncation order must be at least 1");
    const double x = max_error_norm(seq, err) * seq.total_duration();
    return std::pow(x, n + 1) / factorial(n + 1) * std::exp(x);
}

PerturbationReport perturbation_report(const Sequence& seq, const ErrorModel& err, const Vec3& r0) {
    PerturbationReport report;
    report.r1 = compute_r1(seq, err, r0);
    report.r2 = compute_r2(seq, err, r0);
    report.tail_bound = truncation_bound(seq, err, 2);
    const double x = max_error_norm(seq, err) * seq.total_duration();
    constexpr double tol = 1e-9;
    if (report.r1.norm() <= tol * x) {
        report.order_certified = report.r2.norm() <= tol * x * x ? 2 : 1;
    }
    return report;
}

int certify_order(const Sequence& seq, const ErrorModel& err, double tol) {
    const double x = max_error_norm(seq, err) * seq.total_duration();
    if (x == 0.0) return 2;
    int order = 2;
    for (const auto& r0 : axis_states()) {
        if (compute_r1(seq, err, r0).norm() > tol * x) return 0;
        if (order == 2 && compute_r2(seq, err, r0).norm() > tol * x * x) order = 1;
    }
    return order;
}

}  // namespace pulsewalk
