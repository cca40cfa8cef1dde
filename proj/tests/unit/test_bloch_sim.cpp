#include "pulsewalk/bloch_sim.hpp"
#include "pulsewalk/catalog.hpp"

#include "../oracles.hpp"

#include <gtest/gtest.h>

using namespace pulsewalk;

TEST(Evolve, IdealPiPulseFlipsZ) {
    const SimResult r = evolve(catalog("single_pi"), ErrorModel(), Vec3::UnitZ());
    EXPECT_LT((r.final_lab + Vec3::UnitZ()).norm(), 1e-15);
    EXPECT_LT(r.deviation, 1e-15);
}

TEST(Evolve, AmplitudeErrorOnSinglePi) {
    for (double eps : {1e-4, 1e-3, 0.02, -0.05}) {
        const SimResult r = evolve(catalog("single_pi"), ErrorModel::amplitude(eps), Vec3::UnitZ());
        EXPECT_LT((r.final_lab - Vec3(0, std::sin(kPi * eps), -std::cos(kPi * eps))).norm(), 1e-14);
        EXPECT_NEAR(r.deviation, std::abs(oracle::single_pi_amplitude_deviation(eps)), 1e-14);
    }
}

TEST(Evolve, SpinEchoAmplitudeFromZIsSecondOrder) {
    const Sequence seq = catalog("spin_echo");
    const double d1 = evolve(seq, ErrorModel::amplitude(1e-3), Vec3::UnitZ()).deviation;
    const double d2 = evolve(seq, ErrorModel::amplitude(2e-3), Vec3::UnitZ()).deviation;
    EXPECT_NEAR(d2 / d1, 4.0, 0.01);
    EXPECT_LT(d1, 1e-4);
}

TEST(Evolve, RejectsNonUnitInitialState) {
    EXPECT_THROW(evolve(catalog("knill"), ErrorModel(), Vec3(0, 0, 2)), Error);
}

TEST(Evolve, MatchesLabOde) {
    oracle::Gen gen(41);
    for (int trial = 0; trial < 20; ++trial) {
        const Sequence seq = gen.sequence(static_cast<std::size_t>(gen.integer(1, 6)));
        const ErrorModel err(gen.uniform(-0.2, 0.2), gen.uniform(-0.2, 0.2));
        const Vec3 r0 = gen.unit();
        EXPECT_LT((evolve(seq, err, r0).final_lab - oracle::integrate_lab(seq, err.epsilon(), err.delta(), r0)).norm(),
                  1e-9);
    }
}

TEST(EvolveProperty, NormPreservedAlongTrajectory) {
    oracle::Gen gen(42);
    for (int trial = 0; trial < 50; ++trial) {
        const Sequence seq = gen.sequence(static_cast<std::size_t>(gen.integer(1, 7)));
        const ErrorModel err(gen.uniform(-0.5, 0.5), gen.uniform(-0.5, 0.5));
        const SimResult r = evolve(seq, err, gen.unit(), 10);
        EXPECT_EQ(r.trajectory.size(), 1 + 10 * seq.size());
        for (const auto& p : r.trajectory) EXPECT_NEAR(p.r.norm(), 1.0, 1e-12);
        EXPECT_NEAR(r.final_lab.norm(), 1.0, 1e-12);
        EXPECT_LT((r.trajectory.back().r - r.final_lab).norm(), 1e-13);
    }
}

TEST(EvolveProperty, TogglingFrameMatchesDirectIntegration) {
    oracle::Gen gen(43);
    for (int trial = 0; trial < 20; ++trial) {
        const Sequence seq = gen.sequence(static_cast<std::size_t>(gen.integer(1, 5)));
        const ErrorModel err(gen.uniform(-0.1, 0.1), gen.uniform(-0.1, 0.1));
        const Vec3 r0 = gen.unit();
        const auto sol = oracle::integrate_toggling(seq, err.epsilon(), err.delta(), r0);
        EXPECT_LT((evolve(seq, err, r0).final_toggling - sol.r_toggling).norm(), 1e-8);
    }
}

TEST(EvolveProperty, ZeroErrorRealizesIntendedNetEffect) {
    for (const char* name : {"single_pi", "spin_echo", "three_step_amplitude", "three_step_detuning", "knill",
                             "magic_amplitude", "magic_detuning", "theta_family(pi/2,pi)", "knill_family(0.4)"}) {
        const Sequence seq = catalog(name);
        const auto& net = seq.intended_net_effect();
        const Rotation target = axis_angle_rotation(net.axis, kPi * net.angle);
        for (const auto& r0 : default_initial_states()) {
            const SimResult r = evolve(seq, ErrorModel(), r0);
            EXPECT_LT(r.deviation, 1e-12) << name;
            EXPECT_LT((r.final_lab - target.apply(r0)).norm(), 1e-12) << name;
        }
    }
}

TEST(InitialStates, AxisStatesAndSeededDraws) {
    const auto s = default_initial_states();
    ASSERT_EQ(s.size(), 26u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(s[i].cwiseAbs().maxCoeff(), 1.0, 0.0);
    for (const auto& v : s) EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_EQ(default_initial_states(), default_initial_states(kDefaultSeed));
    EXPECT_NE(default_initial_states(1)[10], default_initial_states(2)[10]);
}

TEST(ScalingSlope, SinglePiAmplitude) {
    const auto states = default_initial_states();
    const SlopeReport r = scaling_slope(catalog("single_pi"), Channel::amplitude, states);
    ASSERT_TRUE(r.slope.has_value());
    EXPECT_NEAR(*r.slope, 1.0, 0.05);
    EXPECT_GT(r.r_squared, 0.999);
    ASSERT_EQ(r.error_values.size(), 7u);
    EXPECT_NEAR(r.error_values.front(), 1e-4, 1e-18);
    EXPECT_NEAR(r.error_values.back(), 1e-2, 1e-16);
    // Deviations agree with the closed form 2 sin(pi eps / 2), attained at r0 = +-z.
    for (std::size_t i = 0; i < r.error_values.size(); ++i) {
        EXPECT_NEAR(r.deviations[i], oracle::single_pi_amplitude_deviation(r.error_values[i]), 1e-14);
    }
}

TEST(ScalingSlope, KnillBothChannels) {
    const auto states = default_initial_states();
    for (Channel ch : {Channel::amplitude, Channel::detuning}) {
        const SlopeReport r = scaling_slope(catalog("knill"), ch, states);
        ASSERT_TRUE(r.slope.has_value());
        EXPECT_NEAR(*r.slope, 2.0, 0.05);
    }
}

TEST(ScalingSlope, MagicDetuning) {
    const auto states = default_initial_states();
    const SlopeReport r = scaling_slope(catalog("magic_detuning"), Channel::detuning, states);
    ASSERT_TRUE(r.slope.has_value());
    EXPECT_NEAR(*r.slope, 3.0, 0.1);
}

TEST(ScalingSlope, RangeValidation) {
    const auto states = default_initial_states();
    const Sequence seq = catalog("knill");
    EXPECT_THROW(scaling_slope(seq, Channel::amplitude, states, {0.0, 1e-2, 7}), Error);
    EXPECT_THROW(scaling_slope(seq, Channel::amplitude, states, {1e-3, 1e-4, 7}), Error);
    EXPECT_THROW(scaling_slope(seq, Channel::amplitude, states, {1e-4, 0.1, 7}), Error);
    EXPECT_THROW(scaling_slope(seq, Channel::amplitude, states, {1e-4, 1e-2, 4}), Error);
}

TEST(ScalingSlope, DegenerateWhenDeviationVanishes) {
    // A state along the drive axis is untouched by an amplitude error.
    const std::vector<Vec3> states{Vec3::UnitX()};
    const SlopeReport r = scaling_slope(catalog("single_pi"), Channel::amplitude, states);
    EXPECT_FALSE(r.slope.has_value());
}

TEST(WorstCase, IsMaximumOverStates) {
    const Sequence seq = catalog("three_step_amplitude");
    const ErrorModel err = ErrorModel::amplitude(0.01);
    const auto states = default_initial_states();
    double worst = 0.0;
    for (const auto& s : states) worst = std::max(worst, evolve(seq, err, s).deviation);
    EXPECT_NEAR(worst_case_deviation(seq, err, states), worst, 1e-14);
}
