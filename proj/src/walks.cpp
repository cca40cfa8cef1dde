#include "pulsewalk/walks.hpp"

#include <cmath>
#include <string>

namespace pulsewalk {
namespace {

Vec3 planar_unit(double half_turns) {
    const double a = half_turns * kPi;
    return {std::cos(a), std::sin(a), 0.0};
}

Vec3 segment_end(const WalkSegment& seg) { return segment_point(seg, 1.0); }

void finish(Walk& w, double tol) {
    w.closure_residual = Vec3::Zero();
    for (const auto& p : w.steps) w.closure_residual += p;
    if (w.closed(tol)) w.vector_area = area_integral(w);
}

}  // namespace

Vec3 segment_point(const WalkSegment& seg, double fraction) {
    return std::visit(
        [fraction](const auto& s) -> Vec3 {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, LineSegment>) {
                return s.start + fraction * (s.end - s.start);
            } else {
                return s.center + Rotation::about(s.axis, fraction * s.sweep).apply(s.start - s.center);
            }
        },
        seg.shape);
}

Walk amplitude_walk(const TogglingPhases& phases, std::span<const double> areas) {
    if (phases.size() == 0) throw Error(ErrorCode::invalid_argument, "amplitude walk of an empty sequence");
    if (areas.size() != phases.size()) {
        throw Error(ErrorCode::invalid_argument, "amplitude walk needs one pulse area per phase");
    }
    Walk w;
    w.kind = Channel::amplitude;
    w.phases = phases;
    Vec3 head = Vec3::Zero();
    for (std::size_t j = 0; j < phases.size(); ++j) {
        const Vec3 p = areas[j] * planar_unit(phases[j]);
        w.steps.push_back(p);
        w.curve.push_back({LineSegment{head, head + p}, j, areas[j] * kPi});
        head += p;
    }
    finish(w, kClosureTolerance);
    return w;
}

Walk amplitude_walk(std::span<const Vec3> directions, std::span<const double> areas) {
    if (directions.empty()) throw Error(ErrorCode::invalid_argument, "amplitude walk of an empty sequence");
    if (areas.size() != directions.size()) {
        throw Error(ErrorCode::invalid_argument, "amplitude walk needs one pulse area per direction");
    }
    Walk w;
    w.kind = Channel::amplitude;
    Vec3 head = Vec3::Zero();
    for (std::size_t j = 0; j < directions.size(); ++j) {
        const Vec3 p = areas[j] * directions[j].normalized();
        w.steps.push_back(p);
        w.curve.push_back({LineSegment{head, head + p}, j, areas[j] * kPi});
        head += p;
    }
    finish(w, kClosureTolerance);
    return w;
}

Walk amplitude_walk(const TogglingPhases& phases) {
    const std::vector<double> ones(phases.size(), 1.0);
    return amplitude_walk(phases, ones);
}

Walk detuning_walk(const TogglingPhases& phases) {
    if (phases.size() == 0) throw Error(ErrorCode::invalid_argument, "detuning walk of an empty sequence");
    Walk w;
    w.kind = Channel::detuning;
    w.phases = phases;
    Vec3 head = Vec3::Zero();
    for (std::size_t j = 0; j < phases.size(); ++j) {
        const double side = (j % 2 == 0) ? 1.0 : -1.0;  // odd steps (1-based) above the plane
        const Vec3 drive = planar_unit(phases[j]);
        const Vec3 u = side * Vec3::UnitZ().cross(drive);
        const Vec3 p = 2.0 * u;
        w.steps.push_back(p);
        // Velocity at the start of the step is side * z'; the arc turns about -n'_j.
        w.curve.push_back({ArcSegment{head + u, -drive, head, kPi}, j, kPi});
        head += p;
    }
    finish(w, kClosureTolerance);
    return w;
}

Walk walk_for(const Sequence& seq, Channel channel) {
    if (channel == Channel::detuning) return detuning_walk(toggle_phases(seq));
    if (seq.is_pi_train()) return amplitude_walk(toggle_phases(seq));
    const auto areas = seq.angles();
    try {
        return amplitude_walk(planar_toggling_phases(seq), areas);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::unsupported_pulse_area) throw;
    }
    const auto directions = toggling_directions(seq);
    return amplitude_walk(std::span<const Vec3>(directions), areas);
}

Vec3 area_integral(const Walk& w) {
    Vec3 total = Vec3::Zero();
    for (const auto& seg : w.curve) {
        total += std::visit(
            [](const auto& s) -> Vec3 {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, LineSegment>) {
                    return 0.5 * s.start.cross(s.end);
                } else {
                    // p = c + q(s): 1/2 c x (end - start) + 1/2 r^2 sweep axis.
                    const Vec3 end = s.center + Rotation::about(s.axis, s.sweep).apply(s.start - s.center);
                    const double r2 = (s.start - s.center).squaredNorm();
                    return 0.5 * s.center.cross(end - s.start) + 0.5 * r2 * s.sweep * s.axis.normalized();
                }
            },
            seg.shape);
    }
    return total;
}

Vec3 vector_area(const Walk& w, double tol) {
    if (!w.closed(tol)) {
        throw Error(ErrorCode::open_walk, "vector area requires a closed walk; closure residual is " +
                                              std::to_string(w.closure_residual.norm()));
    }
    return area_integral(w);
}

TogglingPhases detuning_phases(const TogglingPhases& phases) {
    TogglingPhases out;
    out.phases.reserve(phases.size());
    for (std::size_t j = 0; j < phases.size(); ++j) {
        const double shift = (j % 2 == 0) ? 0.5 : -0.5;
        out.phases.push_back(normalize_half_turns(phases[j] + shift));
    }
    return out;
}

double pairwise_sine_sum(const TogglingPhases& phases, Channel channel) {
    const TogglingPhases use = channel == Channel::detuning ? detuning_phases(phases) : phases;
    double sum = 0.0;
    for (std::size_t j = 0; j < use.size(); ++j) {
        for (std::size_t k = 0; k < j; ++k) sum += std::sin((use[j] - use[k]) * kPi);
    }
    return sum;
}

SecondOrderReport second_order_report(const Walk& w, double tol) {
    SecondOrderReport report;
    report.vector_area = vector_area(w, tol);
    report.pairwise_sine_sum = pairwise_sine_sum(w.phases, w.kind);
    report.fully_compensating = report.vector_area.norm() < tol;
    if (!report.fully_compensating) report.preserved_axis = report.vector_area.normalized();
    return report;
}

double walk_scale(Channel channel, const ErrorModel& err) {
    return channel == Channel::amplitude ? err.epsilon() * kPi : err.delta();
}

std::vector<WalkSample> sample_walk(const Walk& w, std::size_t per_segment) {
    if (per_segment == 0) per_segment = 1;
    std::vector<WalkSample> out;
    out.reserve(1 + per_segment * w.curve.size());
    out.push_back({0.0, Vec3::Zero(), 0});
    double t0 = 0.0;
    for (const auto& seg : w.curve) {
        for (std::size_t k = 1; k <= per_segment; ++k) {
            const double f = static_cast<double>(k) / static_cast<double>(per_segment);
            out.push_back({t0 + f * seg.duration, k == per_segment ? segment_end(seg) : segment_point(seg, f), seg.step});
        }
        t0 += seg.duration;
    }
    return out;
}

}  // namespace pulsewalk
