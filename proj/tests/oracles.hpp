// Independent reference computations for the test suite. Nothing here calls into the library's
// rotation, frame or walk code: fields are rebuilt from raw phases and integrated with odeint,
// nested Gauss-Legendre rules, or Eigen's matrix exponential.
#pragma once

#include "pulsewalk/core.hpp"
#include "pulsewalk/toggling.hpp"

#include <Eigen/Core>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using pulsewalk::kPi;
using pulsewalk::Vec3;
using pulsewalk::Mat3;

struct RawStep {
    Vec3 drive;       // unit transverse axis
    double duration;  // radians at unit strength
};

inline std::vector<RawStep> raw_steps(const pulsewalk::Sequence& seq) {
    std::vector<RawStep> out;
    for (const auto& s : seq.steps()) {
        const double a = kPi * s.phase();
        out.push_back({Vec3(std::cos(a), std::sin(a), 0.0), kPi * s.angle()});
    }
    return out;
}

inline Vec3 error_field(const RawStep& s, double eps, double delta) { return eps * s.drive + delta * Vec3::UnitZ(); }

inline Mat3 hat(const Vec3& v) {
    Mat3 m;
    m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
    return m;
}

/// exp([v]_x t) by Eigen's matrix exponential.
inline Mat3 expm_rotation(const Vec3& v, double t) { return (hat(v) * t).exp(); }

using State = std::array<double, 15>;  // R (row-major 9) then r' (3) then p (3)

/// Integrates dR/dt = [Omega]_x R, dr'/dt = (R^T Omega_1) x r', dp/dt = R^T Omega_1 through the
/// sequence with a dense dopri5 stepper.
struct TogglingSolution {
    Mat3 rotation = Mat3::Identity();
    Vec3 r_toggling = Vec3::Zero();
    Vec3 p = Vec3::Zero();
};

inline TogglingSolution integrate_toggling(const pulsewalk::Sequence& seq, double eps, double delta, const Vec3& r0,
                                           double tol = 1e-12) {
    namespace ode = boost::numeric::odeint;
    State x{};
    for (int i = 0; i < 3; ++i) x[4 * i] = 1.0;
    for (int i = 0; i < 3; ++i) x[9 + i] = r0[i];
    for (const auto& step : raw_steps(seq)) {
        const Vec3 field = error_field(step, eps, delta);
        auto rhs = [&](const State& s, State& d, double) {
            Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> r(s.data());
            Eigen::Map<Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> dr(d.data());
            dr = hat(step.drive) * r;
            const Vec3 e = r.transpose() * field;
            const Vec3 rt(s[9], s[10], s[11]);
            const Vec3 drt = e.cross(rt);
            for (int i = 0; i < 3; ++i) {
                d[9 + i] = drt[i];
                d[12 + i] = e[i];
            }
        };
        ode::integrate_adaptive(ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<State>()), rhs, x, 0.0,
                                step.duration, step.duration / 50);
    }
    TogglingSolution out;
    out.rotation = Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(x.data());
    out.r_toggling = Vec3(x[9], x[10], x[11]);
    out.p = Vec3(x[12], x[13], x[14]);
    return out;
}

/// Lab-frame Bloch vector under dr/dt = ((1+eps) n + Delta z) x r, dopri5.
inline Vec3 integrate_lab(const pulsewalk::Sequence& seq, double eps, double delta, const Vec3& r0, double tol = 1e-12) {
    namespace ode = boost::numeric::odeint;
    std::array<double, 3> x{r0.x(), r0.y(), r0.z()};
    for (const auto& step : raw_steps(seq)) {
        const Vec3 field = step.drive + error_field(step, eps, delta);
        auto rhs = [&](const std::array<double, 3>& s, std::array<double, 3>& d, double) {
            const Vec3 v = field.cross(Vec3(s[0], s[1], s[2]));
            d = {v.x(), v.y(), v.z()};
        };
        ode::integrate_adaptive(ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<std::array<double, 3>>()), rhs,
                                x, 0.0, step.duration, step.duration / 50);
    }
    return {x[0], x[1], x[2]};
}

/// Toggling-frame error field at local time tau in step m, with frames from matrix exponentials.
class FieldTable {
public:
    FieldTable(const pulsewalk::Sequence& seq, double eps, double delta) : steps_(raw_steps(seq)) {
        Mat3 r = Mat3::Identity();
        for (const auto& s : steps_) {
            boundaries_.push_back(r);
            fields_.push_back(error_field(s, eps, delta));
            r = expm_rotation(s.drive, s.duration) * r;
        }
    }

    std::size_t size() const { return steps_.size(); }
    double duration(std::size_t m) const { return steps_[m].duration; }

    Vec3 at(std::size_t m, double tau) const {
        const Mat3 r = expm_rotation(steps_[m].drive, tau) * boundaries_[m];
        return r.transpose() * fields_[m];
    }

private:
    std::vector<RawStep> steps_;
    std::vector<Mat3> boundaries_;
    std::vector<Vec3> fields_;
};

/// p(t_f) by 30-point Gauss-Legendre per step.
inline Vec3 error_integral(const pulsewalk::Sequence& seq, double eps, double delta) {
    using GL = boost::math::quadrature::gauss<double, 30>;
    const FieldTable f(seq, eps, delta);
    Vec3 p = Vec3::Zero();
    for (std::size_t m = 0; m < f.size(); ++m) {
        for (int c = 0; c < 3; ++c) {
            p[c] += GL::integrate([&](double t) { return f.at(m, t)[c]; }, 0.0, f.duration(m));
        }
    }
    return p;
}

/// Per-step error integrals p_j by 30-point Gauss-Legendre.
inline std::vector<Vec3> step_integrals(const pulsewalk::Sequence& seq, double eps, double delta) {
    using GL = boost::math::quadrature::gauss<double, 30>;
    const FieldTable f(seq, eps, delta);
    std::vector<Vec3> out;
    for (std::size_t m = 0; m < f.size(); ++m) {
        Vec3 p;
        for (int c = 0; c < 3; ++c) p[c] = GL::integrate([&](double t) { return f.at(m, t)[c]; }, 0.0, f.duration(m));
        out.push_back(p);
    }
    return out;
}

/// Second Magnus coefficient 1/2 int_0^tf dt1 int_0^t1 dt2 Omega_1'(t1) x Omega_1'(t2) as a literal
/// nested double integral: rectangles for step pairs, a triangle on the diagonal.
inline Vec3 magnus_double_integral(const pulsewalk::Sequence& seq, double eps, double delta) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    const FieldTable f(seq, eps, delta);
    Vec3 total = Vec3::Zero();
    for (std::size_t a = 0; a < f.size(); ++a) {
        for (std::size_t b = 0; b <= a; ++b) {
            for (int c = 0; c < 3; ++c) {
                total[c] += GL::integrate(
                    [&](double t1) {
                        const double upper = (a == b) ? t1 : f.duration(b);
                        if (upper <= 0.0) return 0.0;
                        const Vec3 e1 = f.at(a, t1);
                        return GL::integrate([&](double t2) { return e1.cross(f.at(b, t2))[c]; }, 0.0, upper);
                    },
                    0.0, f.duration(a));
            }
        }
    }
    return 0.5 * total;
}

using Mat2c = Eigen::Matrix2cd;

inline Mat2c sigma_dot(const Vec3& v) {
    const std::complex<double> i(0.0, 1.0);
    Mat2c m;
    m << v.z(), v.x() - i * v.y(), v.x() + i * v.y(), -v.z();
    return m;
}

/// Product of expm(-i field.sigma tau / 2) over the steps.
inline Mat2c propagator(const pulsewalk::Sequence& seq, double eps, double delta) {
    const std::complex<double> i(0.0, 1.0);
    Mat2c u = Mat2c::Identity();
    for (const auto& s : raw_steps(seq)) {
        const Vec3 field = s.drive + error_field(s, eps, delta);
        const Mat2c g = (-0.5 * i * s.duration) * sigma_dot(field);
        u = g.exp() * u;
    }
    return u;
}

/// R_ij = 1/2 Tr(sigma_i U sigma_j U^dagger).
inline Mat3 so3_image(const Mat2c& u) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            r(i, j) = 0.5 * (sigma_dot(Vec3::Unit(i)) * u * sigma_dot(Vec3::Unit(j)) * u.adjoint()).trace().real();
        }
    }
    return r;
}

/// Deviation of a single pi-pulse about x from z under amplitude error.
inline double single_pi_amplitude_deviation(double eps) { return 2.0 * std::sin(kPi * eps / 2.0); }

/// Distance between angles in half-turns, modulo a full turn.
inline double half_turn_distance(double a, double b) {
    const double d = std::remainder(a - b, 2.0);
    return std::abs(d);
}

/// Seeded generators for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Vec3 unit() {
        const double z = uniform(-1.0, 1.0);
        const double phi = uniform(-kPi, kPi);
        const double s = std::sqrt(1.0 - z * z);
        return {s * std::cos(phi), s * std::sin(phi), z};
    }

    Vec3 vector(double scale) { return scale * Vec3(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)); }

    Mat3 rotation() { return expm_rotation(unit(), uniform(0.0, kPi)); }

    std::vector<double> phases(std::size_t n) {
        std::vector<double> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(uniform(-1.0, 1.0));
        return out;
    }

    pulsewalk::Sequence pi_train(std::size_t n) {
        std::vector<pulsewalk::PulseStep> steps;
        for (double p : phases(n)) steps.emplace_back(p, 1.0);
        return pulsewalk::Sequence("random_pi_train", std::move(steps));
    }

    /// Random phases and pulse areas in [0.1, 2].
    pulsewalk::Sequence sequence(std::size_t n) {
        std::vector<pulsewalk::PulseStep> steps;
        for (std::size_t i = 0; i < n; ++i) steps.emplace_back(uniform(-1.0, 1.0), uniform(0.1, 2.0));
        return pulsewalk::Sequence("random_sequence", std::move(steps));
    }

    /// A closed unit-step polygon of n >= 3 directions (half-turns): an equilateral triangle (odd n)
    /// or a square (even n), plus antiparallel pairs, shuffled.
    std::vector<double> closed_directions(std::size_t n) {
        std::vector<double> d;
        const std::size_t sides = n % 2 == 1 ? 3 : 4;
        const double base = uniform(-1.0, 1.0);
        for (std::size_t k = 0; k < sides; ++k) d.push_back(base + 2.0 * static_cast<double>(k) / sides);
        while (d.size() < n) {
            const double b = uniform(-1.0, 1.0);
            d.push_back(b);
            d.push_back(b + 1.0);
        }
        std::shuffle(d.begin(), d.end(), rng_);
        for (auto& x : d) x = pulsewalk::normalize_half_turns(x);
        return d;
    }

    /// A pi-train whose walk for `channel` closes: closed directions are taken as phi' (amplitude)
    /// or phi'' (detuning) and mapped back to lab phases through the involution.
    pulsewalk::Sequence closed_pi_train(pulsewalk::Channel channel, std::size_t n) {
        auto dirs = closed_directions(n);
        if (channel == pulsewalk::Channel::detuning) {
            for (std::size_t j = 0; j < dirs.size(); ++j) dirs[j] -= (j % 2 == 0 ? 0.5 : -0.5);
        }
        const auto lab = pulsewalk::toggle_phases(std::span<const double>(dirs));
        std::vector<pulsewalk::PulseStep> steps;
        for (double p : lab.phases) steps.emplace_back(p, 1.0);
        return pulsewalk::Sequence("closed_pi_train", std::move(steps));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
