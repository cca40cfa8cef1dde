#include "pulsewalk/bloch_sim.hpp"

#include "pulsewalk/toggling.hpp"

#include <cmath>
#include <random>

namespace pulsewalk {
namespace {

Rotation step_rotation(const PulseStep& step, const ErrorModel& err, double tau) {
    const Vec3 field = (1.0 + err.epsilon()) * step.axis() + err.delta() * Vec3::UnitZ();
    return Rotation::about(field, field.norm() * tau);
}

}  // namespace

Rotation exact_rotation(const Sequence& seq, const ErrorModel& err) {
    Rotation total;
    for (const auto& step : seq.steps()) total = step_rotation(step, err, step.duration()) * total;
    return total;
}

SimResult evolve(const Sequence& seq, const ErrorModel& err, const Vec3& r0, std::size_t samples_per_step) {
    if (std::abs(r0.norm() - 1.0) > 1e-9) {
        throw Error(ErrorCode::invalid_argument, "initial Bloch vector must have unit length");
    }
    const NominalFrame frame(seq);
    SimResult out;
    Vec3 r = r0;
    double t0 = 0.0;
    if (samples_per_step > 0) out.trajectory.push_back({0.0, r});
    for (const auto& step : seq.steps()) {
        const double d = step.duration();
        if (!(d > 0.0)) throw Error(ErrorCode::invalid_argument, "zero-duration step");
        if (samples_per_step > 0) {
            for (std::size_t k = 1; k <= samples_per_step; ++k) {
                const double tau = d * static_cast<double>(k) / static_cast<double>(samples_per_step);
                out.trajectory.push_back({t0 + tau, step_rotation(step, err, tau).apply(r)});
            }
        }
        r = step_rotation(step, err, d).apply(r);
        t0 += d;
    }
    const Rotation nominal = frame.boundary(seq.size());
    out.final_lab = r;
    out.final_toggling = nominal.inverse().apply(r);
    out.ideal = nominal.apply(r0);
    out.deviation = (out.final_lab - out.ideal).norm();
    return out;
}

std::vector<Vec3> axis_states() {
    return {Vec3::UnitX(), -Vec3::UnitX(), Vec3::UnitY(), -Vec3::UnitY(), Vec3::UnitZ(), -Vec3::UnitZ()};
}

std::vector<Vec3> default_initial_states(std::uint64_t seed) {
    auto states = axis_states();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uz(-1.0, 1.0);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * kPi);
    for (int i = 0; i < 20; ++i) {
        const double z = uz(rng);
        const double phi = uphi(rng);
        const double s = std::sqrt(1.0 - z * z);
        states.emplace_back(s * std::cos(phi), s * std::sin(phi), z);
    }
    return states;
}

double worst_case_deviation(const Sequence& seq, const ErrorModel& err, std::span<const Vec3> states) {
    const Rotation actual = exact_rotation(seq, err);
    const Rotation nominal = exact_rotation(seq, ErrorModel{});
    double worst = 0.0;
    for (const auto& r0 : states) worst = std::max(worst, (actual.apply(r0) - nominal.apply(r0)).norm());
    return worst;
}

SlopeReport scaling_slope(const Sequence& seq, Channel channel, std::span<const Vec3> states, const SlopeRange& range) {
    if (!(range.lo > 0.0) || range.hi > 0.05 || !(range.hi > range.lo) || range.points < 5) {
        throw Error(ErrorCode::invalid_argument, "slope range needs 0 < lo < hi <= 0.05 and at least 5 points");
    }
    if (states.empty()) throw Error(ErrorCode::invalid_argument, "slope needs at least one initial state");

    SlopeReport report;
    const double llo = std::log(range.lo);
    const double lhi = std::log(range.hi);
    for (std::size_t i = 0; i < range.points; ++i) {
        const double e = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(range.points - 1));
        report.error_values.push_back(e);
        report.deviations.push_back(worst_case_deviation(seq, ErrorModel::of(channel, e), states));
    }

    // Points at the double-precision floor carry no scaling information.
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < range.points; ++i) {
        if (report.deviations[i] > 1e-14) {
            xs.push_back(std::log(report.error_values[i]));
            ys.push_back(std::log(report.deviations[i]));
        }
    }
    if (xs.size() < 2) return report;

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    report.slope = slope;
    report.intercept = my - slope * mx;
    report.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return report;
}

}  // namespace pulsewalk
