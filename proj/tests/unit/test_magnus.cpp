#include "pulsewalk/bloch_sim.hpp"
#include "pulsewalk/catalog.hpp"
#include "pulsewalk/magnus.hpp"
#include "pulsewalk/walks.hpp"

#include "../oracles.hpp"

#include <gtest/gtest.h>

using namespace pulsewalk;

TEST(Pauli, AlgebraAndGenerators) {
    const std::complex<double> i(0, 1);
    EXPECT_LT((pauli(0) * pauli(1) - i * pauli(2)).norm(), 1e-15);
    EXPECT_THROW(pauli(3), Error);
    oracle::Gen gen(61);
    for (int k = 0; k < 20; ++k) {
        const Vec3 a = gen.vector(2.0);
        EXPECT_LT((generator_vector(su2_generator(a)) - a).norm(), 1e-15);
    }
}

TEST(Commutator, CrossProductIdentity) {
    oracle::Gen gen(62);
    for (int k = 0; k < 100; ++k) {
        const Vec3 a = gen.vector(3.0);
        const Vec3 b = gen.vector(3.0);
        const Mat2c lhs = commutator(su2_generator(a), su2_generator(b));
        EXPECT_LT((lhs - su2_generator(a.cross(b))).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Su2, AxisAngleRoundTrip) {
    oracle::Gen gen(63);
    for (int k = 0; k < 100; ++k) {
        const Vec3 a = gen.unit() * gen.uniform(0.0, kPi * 0.999);
        const Su2Operator u = Su2Operator::from_axis_angle_vector(a);
        EXPECT_LT(u.unitarity_defect(), 1e-12);
        EXPECT_LT((u.axis_angle_vector() - a).norm(), 1e-12);
        // Angles beyond pi come back as the equivalent rotation with |a| <= pi, up to sign of U.
        const Vec3 big = gen.unit() * gen.uniform(kPi * 1.001, 2 * kPi * 0.999);
        const Vec3 back = Su2Operator::from_axis_angle_vector(big).axis_angle_vector();
        EXPECT_LE(back.norm(), kPi + 1e-12);
        EXPECT_LT(Su2Operator::from_axis_angle_vector(back).projective_distance(Su2Operator::from_axis_angle_vector(big)),
                  1e-12);
    }
}

TEST(Su2, FromMatrixValidates) {
    EXPECT_THROW(Su2Operator::from_matrix(2.0 * Mat2c::Identity()), Error);
    EXPECT_NO_THROW(Su2Operator::from_matrix(Mat2c::Identity()));
}

TEST(Propagate, IdealPiPulse) {
    const Su2Operator u = propagate(catalog("single_pi"), ErrorModel());
    const std::complex<double> i(0, 1);
    EXPECT_LT(u.projective_distance(Su2Operator::from_matrix(-i * pauli(0))), 1e-12);
    EXPECT_LT((u.axis_angle_vector().cwiseAbs() - kPi * Vec3::UnitX()).norm(), 1e-12);
}

TEST(Propagate, CatalogPiSequencesAreInPlanePiRotations) {
    for (const char* name : {"single_pi", "three_step_amplitude", "three_step_detuning", "knill", "magic_amplitude",
                             "magic_detuning", "knill_family(-0.7)"}) {
        const Sequence seq = catalog(name);
        const Vec3 a = propagate(seq, ErrorModel()).axis_angle_vector();
        EXPECT_NEAR(a.norm(), kPi, 1e-10) << name;
        EXPECT_NEAR(a.z(), 0.0, 1e-10) << name;
        EXPECT_NEAR(std::abs(a.normalized().dot(seq.intended_net_effect().axis)), 1.0, 1e-10) << name;
    }
}

TEST(Propagate, MatchesMatrixExponentialProduct) {
    oracle::Gen gen(64);
    for (int trial = 0; trial < 30; ++trial) {
        const Sequence seq = gen.sequence(static_cast<std::size_t>(gen.integer(1, 6)));
        const ErrorModel err(gen.uniform(-0.3, 0.3), gen.uniform(-0.3, 0.3));
        const Mat2c direct = oracle::propagator(seq, err.epsilon(), err.delta());
        EXPECT_LT(propagate(seq, err).projective_distance(Su2Operator::from_matrix(direct)), 1e-12);
    }
}

TEST(Propagate, Su2ToSo3Homomorphism) {
    oracle::Gen gen(65);
    for (int trial = 0; trial < 30; ++trial) {
        const Sequence seq = gen.sequence(static_cast<std::size_t>(gen.integer(1, 6)));
        const ErrorModel err(gen.uniform(-0.3, 0.3), gen.uniform(-0.3, 0.3));
        const Su2Operator u = propagate(seq, err);
        const Mat3 so3 = exact_rotation(seq, err).matrix();
        EXPECT_LT((u.to_rotation().matrix() - so3).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((oracle::so3_image(oracle::propagator(seq, err.epsilon(), err.delta())) - so3).cwiseAbs().maxCoeff(),
                  1e-10);
    }
}

TEST(ErrorPropagator, IdentityWithoutError) {
    const Su2Operator v = error_propagator(catalog("knill"), ErrorModel());
    EXPECT_LT(v.axis_angle_vector().norm(), 1e-12);
}

TEST(ErrorPropagator, KnillAmplitudeIsSecondOrderSmall) {
    const double eps = 1e-3;
    const double a = error_propagator(catalog("knill"), ErrorModel::amplitude(eps)).axis_angle_vector().norm();
    EXPECT_LT(a, 10 * std::pow(eps * kPi, 2));
    const double a2 = error_propagator(catalog("knill"), ErrorModel::amplitude(eps / 2)).axis_angle_vector().norm();
    EXPECT_NEAR(a / a2, 4.0, 0.05);
}

TEST(ErrorPropagator, SinglePiDetuningMatchesWalkStep) {
    const double delta = 1e-3;
    const Vec3 a = error_propagator(catalog("single_pi"), ErrorModel::detuning(delta)).axis_angle_vector();
    EXPECT_NEAR(a.norm(), 2 * delta, 1e-5);
    EXPECT_LT((a / delta - walk_for(catalog("single_pi"), Channel::detuning).closure_residual).norm(), 1e-2);
}

TEST(ErrorPropagator, RotatesTogglingFrameVector) {
    oracle::Gen gen(66);
    for (int trial = 0; trial < 20; ++trial) {
        const Sequence seq = gen.sequence(static_cast<std::size_t>(gen.integer(1, 5)));
        const ErrorModel err(gen.uniform(-0.1, 0.1), gen.uniform(-0.1, 0.1));
        const Vec3 r0 = gen.unit();
        const Vec3 rt = error_propagator(seq, err).to_rotation().apply(r0);
        EXPECT_LT((rt - evolve(seq, err, r0).final_toggling).norm(), 1e-10);
    }
}

TEST(MagnusTermsTest, Phi1IsScaledClosureResidual) {
    oracle::Gen gen(67);
    for (int trial = 0; trial < 30; ++trial) {
        const Sequence seq = gen.pi_train(static_cast<std::size_t>(gen.integer(1, 7)));
        for (Channel ch : {Channel::amplitude, Channel::detuning}) {
            const ErrorModel err = ErrorModel::of(ch, 1e-3);
            const Vec3 p = walk_scale(ch, err) * walk_for(seq, ch).closure_residual;
            EXPECT_LT((magnus_terms(seq, err).phi1_vector - p).norm(), 1e-9);
        }
    }
}

TEST(MagnusTermsTest, Phi2MatchesDoubleIntegral) {
    oracle::Gen gen(68);
    for (int trial = 0; trial < 20; ++trial) {
        const Sequence seq = gen.sequence(static_cast<std::size_t>(gen.integer(1, 5)));
        const ErrorModel err(gen.uniform(-0.1, 0.1), gen.uniform(-0.1, 0.1));
        const Vec3 oracle_value = oracle::magnus_double_integral(seq, err.epsilon(), err.delta());
        EXPECT_LT((magnus_terms(seq, err).phi2_vector - oracle_value).norm(), 1e-12);
    }
}

TEST(MagnusTermsTest, SecondOrderLogarithmOfErrorPropagator) {
    // a = phi1 + phi2 + O(x^3) for the axis-angle vector of V.
    oracle::Gen gen(69);
    for (int trial = 0; trial < 20; ++trial) {
        const Sequence seq = gen.pi_train(static_cast<std::size_t>(gen.integer(2, 6)));
        auto residual = [&](double e) {
            const ErrorModel err(e, 0.6 * e);
            const MagnusTerms m = magnus_terms(seq, err);
            return (error_propagator(seq, err).axis_angle_vector() - m.phi1_vector - m.phi2_vector).norm();
        };
        EXPECT_NEAR(residual(2e-3) / residual(1e-3), 8.0, 0.5);
    }
}

TEST(MagnusTermsTest, Phi2IsMinusClassicalAreaOnClosedWalks) {
    // The Magnus coefficient is 1/2 int Omega_1' x p dt = -(1/2) \oint p x dp.
    oracle::Gen gen(70);
    for (int trial = 0; trial < 40; ++trial) {
        const Channel ch = trial % 2 == 0 ? Channel::amplitude : Channel::detuning;
        const Sequence seq = gen.closed_pi_train(ch, static_cast<std::size_t>(gen.integer(3, 7)));
        const Walk w = walk_for(seq, ch);
        ASSERT_TRUE(w.closed());
        const ErrorModel err = ErrorModel::of(ch, 1e-3);
        const double s = walk_scale(ch, err);
        EXPECT_LT((magnus_terms(seq, err).phi2_vector + s * s * vector_area(w)).norm(), 1e-9 * s * s);
    }
}

TEST(Jones, KnillBothSumsVanish) {
    const JonesSums j = jones_constraints(toggle_phases(catalog("knill")));
    EXPECT_LT(j.amplitude_sum.norm(), 1e-12);
    EXPECT_LT(j.detuning_sum.norm(), 1e-12);
}

TEST(Jones, ThreeStepAmplitudeOnly) {
    const JonesSums j = jones_constraints(TogglingPhases{{0, -2.0 / 3, 2.0 / 3}});
    EXPECT_LT(j.amplitude_sum.norm(), 1e-15);
    EXPECT_GT(j.detuning_sum.norm(), 0.5);
}

TEST(Jones, SinglePulse) {
    EXPECT_NEAR(jones_constraints(TogglingPhases{{0.37}}).amplitude_sum.norm(), 1.0, 1e-15);
}

TEST(Jones, EqualsWalkResidualsComponentwise) {
    oracle::Gen gen(71);
    for (int trial = 0; trial < 100; ++trial) {
        const TogglingPhases t{gen.phases(static_cast<std::size_t>(gen.integer(1, 9)))};
        const JonesSums j = jones_constraints(t);
        const Vec3 amp = amplitude_walk(t).closure_residual;
        const Vec3 det = detuning_walk(t).closure_residual;
        EXPECT_LT((j.amplitude_sum - amp.head<2>()).norm(), 1e-13);
        EXPECT_LT((2.0 * j.detuning_sum - det.head<2>()).norm(), 1e-13);
    }
}
