#pragma once

#include "pulsewalk/bloch_sim.hpp"
#include "pulsewalk/core.hpp"
#include "pulsewalk/toggling.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pulsewalk {

/// A named, parameter-free catalog entry.
struct FixedSpec {
    std::string name;
};

/// Knill family with lab phases (pi/6 + 2a, a, pi/2, -a, pi/6 - 2a). Stored in half-turns.
struct KnillFamilySpec {
    double alpha = 0.0;
};

/// Four pi-pulses and a final theta-pulse about x, with cos(gamma) cos(alpha) = -theta / (4 pi).
/// All three parameters in half-turns.
struct ThetaFamilySpec {
    double theta = 0.5;
    double alpha = 1.0;
    double gamma = 0.0;
};

using FamilySpec = std::variant<FixedSpec, KnillFamilySpec, ThetaFamilySpec>;

/// Names accepted by catalog(); parameterized entries are listed with their argument placeholders.
std::vector<std::string> catalog_names();

/// Parses an angle in radians: a plain number ("1.1230"), or a multiple of pi
/// ("pi", "-pi/2", "2pi/3", "0.5*pi"). Throws ErrorCode::parse_error.
double parse_angle(std::string_view text);

/// Parses "knill", "knill_family(pi/3)", "theta_family(pi/2, pi)" and so on.
/// Family arguments are radians. Throws ErrorCode::unknown_name.
FamilySpec parse_family(std::string_view name);

Sequence build(const FamilySpec& spec);

/// catalog(name) = build(parse_family(name)).
Sequence catalog(std::string_view name);

/// Lab phases of the Knill family member, in half-turns; alpha in radians.
std::vector<double> knill_family_phases(double alpha);
Sequence knill_family(double alpha);

/// The single-parameter family read off the propagator constraints, with lab phases
/// (pi + 2a', a', -pi/3, -5pi/3 - a', -7pi/3 - 2a'). Half-turns; alpha_prime in radians.
std::vector<double> propagator_family_phases(double alpha_prime);

/// Solves for gamma on the positive branch. Angles in radians; throws ErrorCode::infeasible when
/// |theta / (4 pi cos alpha)| > 1.
ThetaFamilySpec theta_family_spec(double theta, double alpha);

/// Toggling phases (a + g, a - g, -a - g, -a + g, 0), half-turns.
TogglingPhases theta_family_toggling(const ThetaFamilySpec& spec);

/// Lab phases a(1, 1, -1, -1, 0) + g(1, 3, 3, 1, 0), half-turns.
std::vector<double> theta_family_phases(const ThetaFamilySpec& spec);

Sequence theta_family(double theta, double alpha);

/// z-component of the vector area of the Knill-family walk for the channel (walk units).
double magic_area(Channel channel, double alpha);

/// Root of magic_area in [lo, hi] to 1e-10 in alpha. Throws ErrorCode::no_sign_change.
double solve_magic_angle(Channel channel, double lo = 0.0, double hi = kPi);

struct AlphaScanPoint {
    double alpha = 0.0;
    double residual = 0.0;  // |closure residual| of the channel walk
    double area_z = 0.0;
};

/// Evenly spaced samples of the Knill family over [lo, hi]; points >= 2.
std::vector<AlphaScanPoint> scan_alpha(Channel channel, double lo, double hi, std::size_t points);

struct VerifyOptions {
    bool with_slope = true;
    SlopeRange range{};
    std::uint64_t seed = kDefaultSeed;
};

struct VerifyReport {
    std::string sequence;
    Channel channel = Channel::amplitude;
    std::string method;  // "walk", or "magnus" when the toggling drive leaves the plane
    double closure_residual = 0.0;
    Vec3 vector_area = Vec3::Zero();
    bool first_order = false;
    bool second_order = false;
    /// Order certified by the perturbative terms at the six axis states.
    int certified_order = 0;
    /// Initial states along these axes are protected one order beyond the sequence as a whole.
    std::vector<Vec3> preserved_axes;
    std::optional<double> slope;
};

VerifyReport verify(const Sequence& seq, Channel channel, const VerifyOptions& options = {});

}  // namespace pulsewalk
