#include "pulsewalk/catalog.hpp"

#include "pulsewalk/magnus.hpp"
#include "pulsewalk/perturbation.hpp"
#include "pulsewalk/walks.hpp"

#include <boost/math/tools/roots.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace pulsewalk {
namespace {

constexpr double kMagicTolerance = 1e-10;
constexpr double kVerifyMagnitude = 1e-2;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<double> read_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
    return value;
}

std::string format_angle(double radians) {
    std::ostringstream os;
    os.precision(10);
    os << radians;
    return os.str();
}

/// Axis of the net pi rotation of an odd pi-train: in-plane at sum_j (-1)^(j-1) phi_j.
NetEffect pi_train_net_effect(const std::vector<double>& phases) {
    double axis_phase = 0.0;
    for (std::size_t i = 0; i < phases.size(); ++i) axis_phase += (i % 2 == 0 ? 1.0 : -1.0) * phases[i];
    return {Vec3(std::cos(kPi * axis_phase), std::sin(kPi * axis_phase), 0.0), 1.0};
}

Sequence pi_train(std::string name, const std::vector<double>& phases) {
    std::vector<PulseStep> steps;
    for (double phi : phases) steps.emplace_back(phi, 1.0);
    return Sequence(std::move(name), std::move(steps), pi_train_net_effect(phases));
}

std::vector<std::string_view> split_args(std::string_view args) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = args.find(',');
        out.push_back(trim(args.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        args.remove_prefix(comma + 1);
    }
    return out;
}

Error unknown(std::string_view name, const std::string& why) {
    return Error(ErrorCode::unknown_name, "unknown sequence '" + std::string(name) + "': " + why);
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"single_pi",       "spin_echo",       "three_step_amplitude", "three_step_detuning",
            "knill",           "knill_family(alpha)", "magic_detuning", "magic_amplitude",
            "theta_family(theta,alpha)"};
}

double parse_angle(std::string_view text) {
    const std::string_view s = trim(text);
    const auto pi = s.find("pi");
    if (pi == std::string_view::npos) {
        if (auto v = read_number(s)) return *v;
        throw Error(ErrorCode::parse_error, "cannot parse angle '" + std::string(text) + "'");
    }
    // [sign][coefficient][*]pi[/divisor]
    std::string_view coeff = trim(s.substr(0, pi));
    std::string_view rest = trim(s.substr(pi + 2));
    if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
    double c = 1.0;
    if (coeff == "-") {
        c = -1.0;
    } else if (!coeff.empty() && coeff != "+") {
        const auto v = read_number(coeff);
        if (!v) throw Error(ErrorCode::parse_error, "cannot parse angle '" + std::string(text) + "'");
        c = *v;
    }
    double divisor = 1.0;
    if (!rest.empty()) {
        const auto v = rest.front() == '/' ? read_number(rest.substr(1)) : std::nullopt;
        if (!v || *v == 0.0) throw Error(ErrorCode::parse_error, "cannot parse angle '" + std::string(text) + "'");
        divisor = *v;
    }
    return c * kPi / divisor;
}

FamilySpec parse_family(std::string_view name) {
    const std::string_view s = trim(name);
    const auto open = s.find('(');
    if (open == std::string_view::npos) {
        for (const char* fixed : {"single_pi", "spin_echo", "three_step_amplitude", "three_step_detuning", "knill",
                                  "magic_detuning", "magic_amplitude"}) {
            if (s == fixed) return FixedSpec{std::string(s)};
        }
        throw unknown(name, "expected one of the catalog names");
    }
    if (s.back() != ')') throw unknown(name, "missing ')'");
    const std::string_view head = trim(s.substr(0, open));
    const auto args = split_args(s.substr(open + 1, s.size() - open - 2));
    std::vector<double> values;
    try {
        for (auto a : args) values.push_back(parse_angle(a));
    } catch (const Error& e) {
        throw unknown(name, e.what());
    }
    if (head == "knill_family") {
        if (values.size() != 1) throw unknown(name, "knill_family takes one argument");
        return KnillFamilySpec{values[0] / kPi};
    }
    if (head == "theta_family") {
        if (values.size() != 2) throw unknown(name, "theta_family takes two arguments");
        return theta_family_spec(values[0], values[1]);
    }
    throw unknown(name, "no parameterized family called '" + std::string(head) + "'");
}

Sequence build(const FamilySpec& spec) {
    if (const auto* k = std::get_if<KnillFamilySpec>(&spec)) return knill_family(k->alpha * kPi);
    if (const auto* t = std::get_if<ThetaFamilySpec>(&spec)) {
        std::vector<PulseStep> steps;
        const auto phases = theta_family_phases(*t);
        for (std::size_t i = 0; i < phases.size(); ++i) steps.emplace_back(phases[i], i + 1 < phases.size() ? 1.0 : t->theta);
        return Sequence("theta_family(" + format_angle(t->theta * kPi) + "," + format_angle(t->alpha * kPi) + ")",
                        std::move(steps), NetEffect{Vec3::UnitX(), t->theta});
    }
    const std::string& name = std::get<FixedSpec>(spec).name;
    if (name == "single_pi") return pi_train(name, {0.0});
    if (name == "spin_echo") {
        return Sequence(name, {PulseStep(0.0, 0.5), PulseStep(0.5, 1.0), PulseStep(0.0, 0.5)},
                        NetEffect{Vec3::UnitY(), 1.0});
    }
    if (name == "three_step_amplitude") return pi_train(name, {0.0, 2.0 / 3.0, 0.0});
    if (name == "three_step_detuning") return pi_train(name, {0.0, 1.0 / 3.0, 0.0});
    if (name == "knill") return pi_train(name, {1.0 / 6.0, 0.0, 0.5, 0.0, 1.0 / 6.0});
    if (name == "magic_detuning") return pi_train(name, knill_family_phases(solve_magic_angle(Channel::detuning)));
    if (name == "magic_amplitude") return pi_train(name, knill_family_phases(solve_magic_angle(Channel::amplitude)));
    throw unknown(name, "expected one of the catalog names");
}

Sequence catalog(std::string_view name) { return build(parse_family(name)); }

std::vector<double> knill_family_phases(double alpha) {
    const double a = alpha / kPi;
    return {normalize_half_turns(1.0 / 6.0 + 2 * a), normalize_half_turns(a), 0.5, normalize_half_turns(-a),
            normalize_half_turns(1.0 / 6.0 - 2 * a)};
}

Sequence knill_family(double alpha) {
    return pi_train("knill_family(" + format_angle(alpha) + ")", knill_family_phases(alpha));
}

std::vector<double> propagator_family_phases(double alpha_prime) {
    const double a = alpha_prime / kPi;
    return {normalize_half_turns(1.0 + 2 * a), normalize_half_turns(a), normalize_half_turns(-1.0 / 3.0),
            normalize_half_turns(-5.0 / 3.0 - a), normalize_half_turns(-7.0 / 3.0 - 2 * a)};
}

ThetaFamilySpec theta_family_spec(double theta, double alpha) {
    if (!(theta > 0.0) || theta > 2 * kPi) {
        throw Error(ErrorCode::infeasible, "theta must lie in (0, 2 pi], got " + format_angle(theta));
    }
    const double c = -theta / (4 * kPi * std::cos(alpha));
    if (!std::isfinite(c) || std::abs(c) > 1.0) {
        throw Error(ErrorCode::infeasible, "no gamma with cos(gamma) cos(alpha) = -theta/(4 pi) for theta = " +
                                               format_angle(theta) + ", alpha = " + format_angle(alpha));
    }
    return {theta / kPi, normalize_half_turns(alpha / kPi), std::acos(c) / kPi};
}

TogglingPhases theta_family_toggling(const ThetaFamilySpec& s) {
    const double a = s.alpha;
    const double g = s.gamma;
    TogglingPhases t;
    for (double v : {a + g, a - g, -a - g, -a + g, 0.0}) t.phases.push_back(normalize_half_turns(v));
    return t;
}

std::vector<double> theta_family_phases(const ThetaFamilySpec& s) {
    const double a = s.alpha;
    const double g = s.gamma;
    return {normalize_half_turns(a + g), normalize_half_turns(a + 3 * g), normalize_half_turns(-a + 3 * g),
            normalize_half_turns(-a + g), 0.0};
}

Sequence theta_family(double theta, double alpha) { return build(theta_family_spec(theta, alpha)); }

double magic_area(Channel channel, double alpha) {
    return area_integral(walk_for(knill_family(alpha), channel)).z();
}

double solve_magic_angle(Channel channel, double lo, double hi) {
    auto f = [channel](double a) { return magic_area(channel, a); };
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw Error(ErrorCode::no_sign_change, std::string("vector area of the ") + to_string(channel) +
                                                   " walk does not change sign on [" + format_angle(lo) + ", " +
                                                   format_angle(hi) + "]");
    }
    std::uintmax_t iterations = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, [](double x, double y) { return std::abs(y - x) <= kMagicTolerance; }, iterations);
    return 0.5 * (a + b);
}

std::vector<AlphaScanPoint> scan_alpha(Channel channel, double lo, double hi, std::size_t points) {
    if (points < 2 || !(hi > lo)) throw Error(ErrorCode::invalid_argument, "scan needs hi > lo and at least 2 points");
    std::vector<AlphaScanPoint> out;
    out.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double alpha = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
        const Walk w = walk_for(knill_family(alpha), channel);
        out.push_back({alpha, w.closure_residual.norm(), area_integral(w).z()});
    }
    return out;
}

VerifyReport verify(const Sequence& seq, Channel channel, const VerifyOptions& options) {
    VerifyReport r;
    r.sequence = seq.name();
    r.channel = channel;
    Vec3 residual;
    try {
        const Walk w = walk_for(seq, channel);
        r.method = "walk";
        residual = w.closure_residual;
        r.vector_area = area_integral(w);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::unsupported_pulse_area) throw;
        // Toggling drive leaves the plane: read p(t_f) and the second Magnus term instead, in walk units.
        r.method = "magnus";
        const ErrorModel unit = ErrorModel::of(channel, kVerifyMagnitude);
        const double scale = walk_scale(channel, unit);
        const MagnusTerms m = magnus_terms(seq, unit);
        residual = m.phi1_vector / scale;
        r.vector_area = -m.phi2_vector / (scale * scale);
    }
    r.closure_residual = residual.norm();
    r.first_order = r.closure_residual < kClosureTolerance;
    r.second_order = r.first_order && r.vector_area.norm() < kClosureTolerance;
    r.certified_order = certify_order(seq, ErrorModel::of(channel, kVerifyMagnitude));
    if (!r.first_order) {
        r.preserved_axes.push_back(residual.normalized());
    } else if (!r.second_order) {
        r.preserved_axes.push_back(r.vector_area.normalized());
    }
    if (options.with_slope) {
        const auto states = default_initial_states(options.seed);
        r.slope = scaling_slope(seq, channel, states, options.range).slope;
    }
    return r;
}

}  // namespace pulsewalk
