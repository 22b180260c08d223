/*
 * Copyright 2026 The projpair Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "projpair/errors.hpp"
#include "projpair/geodesic.hpp"
#include "test_util.hpp"

namespace projpair {
namespace {

using testing::diag;
using testing::norm2;
using testing::rotation_projection;

Projection proj(const ComplexMatrix& m) { return Projection::validate(m); }

// Random Hermitian X with ||X|| = scale that is codiagonal for `p`.
ComplexMatrix codiagonal(const ComplexMatrix& p, double scale, std::mt19937_64& rng) {
    const Index n = p.rows();
    const ComplexMatrix h = testing::random_hermitian(n, rng);
    const ComplexMatrix one = ComplexMatrix::Identity(n, n);
    const ComplexMatrix x = p * h * (one - p) + (one - p) * h * p;
    const double nx = norm2(x);
    // For P = 0 or P = 1 the codiagonal part is rounding noise only.
    if (nx < 1e-12) return ComplexMatrix::Zero(n, n);
    return ComplexMatrix(x * (scale / nx));
}

TEST(Geodesic, EqualEndpoints) {
    const Projection q = proj(diag({1.0, 0.0, 1.0}));
    const GeodesicSegment seg = geodesic_between(q, q);
    EXPECT_LE(norm2(seg.exponent_x), 1e-15);
    EXPECT_EQ(seg.norm_x, 0.0);
}

TEST(Geodesic, RotationAngle) {
    const double th = std::numbers::pi / 6;
    const GeodesicSegment seg = geodesic_between(proj(rotation_projection(0.0)), proj(rotation_projection(th)));
    EXPECT_NEAR(seg.norm_x, th, 1e-14);
    EXPECT_LE(norm2(geodesic_eval(seg, 1.0).matrix() - rotation_projection(th)), 1e-14);
    EXPECT_LE(norm2(geodesic_eval(seg, 0.5).matrix() - rotation_projection(th / 2)), 1e-14);
    EXPECT_EQ(geodesic_eval(seg, 0.0).matrix(), rotation_projection(0.0));
}

TEST(Geodesic, AntipodalThrows) {
    EXPECT_THROW(geodesic_between(proj(diag({1.0, 0.0})), proj(diag({0.0, 1.0}))), NoUniqueGeodesicError);
    // A NoUniqueGeodesicError is a NumericalError.
    EXPECT_THROW(geodesic_between(proj(diag({1.0, 0.0})), proj(diag({0.0, 1.0}))), NumericalError);
    EXPECT_THROW(geodesic_between(proj(diag({1.0})), proj(diag({1.0, 0.0}))), InputError);
}

TEST(Geodesic, RandomPairInvariants) {
    std::mt19937_64 rng(11);
    int ran = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Index n = std::uniform_int_distribution<Index>(1, 12)(rng);
        const ComplexMatrix q0 = testing::random_projection_matrix(n, std::uniform_int_distribution<Index>(0, n)(rng), rng);
        // Move q0 by a codiagonal exponent with norm below pi/2 so the
        // endpoints are joined by a unique geodesic.
        const double scale = std::uniform_real_distribution<double>(0.0, 1.4)(rng);
        const ComplexMatrix x_true = codiagonal(q0, scale, rng);
        const ComplexMatrix e = testing::expi(x_true);
        const ComplexMatrix q1 = e * q0 * e.adjoint();
        const Projection p0 = proj(q0);
        const Projection p1 = Projection::validate(hermitian_part(q1), 1e-9);
        const GeodesicSegment seg = geodesic_between(p0, p1);
        ++ran;
        EXPECT_LE(norm2(geodesic_eval(seg, 1.0).matrix() - p1.matrix()), 1e-8);
        EXPECT_LE(codiagonality_residual(seg.exponent_x, p0), 1e-8);
        const ComplexMatrix s0 = p0.symmetry();
        const ComplexMatrix s1 = p1.symmetry();
        EXPECT_LE(norm2(testing::expi(seg.exponent_x, 2.0) - s1 * s0), 1e-8);
        // The geodesic exponent is the unique small codiagonal one.
        EXPECT_LE(norm2(seg.exponent_x - x_true), 1e-7);
        EXPECT_NEAR(seg.norm_x, norm2(x_true), 1e-7);
    }
    EXPECT_EQ(ran, 500);
}

TEST(Uniqueness, Examples) {
    const ComplexMatrix p = diag({1.0, 0.0});
    EXPECT_TRUE(uniqueness_condition(ProjectionPair(proj(p), proj(p))));
    EXPECT_FALSE(uniqueness_condition(ProjectionPair(proj(p), proj(diag({0.0, 1.0})))));
    EXPECT_TRUE(uniqueness_condition(ProjectionPair(proj(p), proj(rotation_projection(1.2)))));
    // H10 nonzero only.
    EXPECT_FALSE(uniqueness_condition(ProjectionPair(proj(diag({1.0, 1.0, 0.0})), proj(diag({1.0, 0.0, 0.0})))));
}

TEST(Chart, BaseMapsToZero) {
    std::mt19937_64 rng(5);
    const ProjectionPair base = testing::random_pair(6, rng);
    const ChartCoordinates c = pair_chart(base, base);
    EXPECT_LE(norm2(c.x_p), 1e-12);
    EXPECT_LE(norm2(c.y_q), 1e-12);
}

TEST(Chart, OneSidedPerturbation) {
    std::mt19937_64 rng(6);
    const ProjectionPair base = testing::random_pair(8, rng);
    const ComplexMatrix y = codiagonal(base.q().matrix(), 0.3, rng);
    const ComplexMatrix e = testing::expi(y);
    const ProjectionPair moved(base.p(), Projection::validate(hermitian_part(e * base.q().matrix() * e.adjoint()), 1e-9));
    const ChartCoordinates c = pair_chart(base, moved);
    EXPECT_LE(norm2(c.x_p), 1e-12);
    EXPECT_LE(norm2(c.y_q - y), 1e-9);
}

TEST(Chart, JointPerturbationRoundTrip) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const Index n = std::uniform_int_distribution<Index>(2, 16)(rng);
        const ProjectionPair base = testing::random_pair(n, rng);
        // Conjugate each projection by exp(iH) with ||H|| = 0.1.
        auto nudge = [&](const Projection& p) {
            ComplexMatrix h = testing::random_hermitian(n, rng);
            h *= 0.1 / norm2(h);
            const ComplexMatrix e = testing::expi(h);
            return Projection::validate(hermitian_part(e * p.matrix() * e.adjoint()), 1e-9);
        };
        const ProjectionPair pq(nudge(base.p()), nudge(base.q()));
        const ChartCoordinates c = pair_chart(base, pq);
        EXPECT_LE(codiagonality_residual(c.x_p, base.p()), 1e-8);
        EXPECT_LE(codiagonality_residual(c.y_q, base.q()), 1e-8);
        const ProjectionPair back = chart_inverse(base, c.x_p, c.y_q);
        EXPECT_LE(norm2(back.p().matrix() - pq.p().matrix()), 1e-9);
        EXPECT_LE(norm2(back.q().matrix() - pq.q().matrix()), 1e-9);
        EXPECT_NEAR(c.comm_norm_y, norm2(commutator(c.y_q, base.p().matrix())), 1e-12);
    }
}

TEST(Chart, InverseThenForward) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const Index n = std::uniform_int_distribution<Index>(2, 12)(rng);
        const ProjectionPair base = testing::random_pair(n, rng);
        const ComplexMatrix x = codiagonal(base.p().matrix(), std::uniform_real_distribution<double>(0.0, 1.0)(rng), rng);
        const ComplexMatrix y = codiagonal(base.q().matrix(), std::uniform_real_distribution<double>(0.0, 1.0)(rng), rng);
        const ProjectionPair pq = chart_inverse(base, x, y);
        // Oracle for the inverse map built from the reference exponential.
        const ComplexMatrix ex = testing::expi(x);
        const ComplexMatrix exy = ex * testing::expi(y);
        EXPECT_LE(norm2(pq.p().matrix() - ex * base.p().matrix() * ex.adjoint()), 1e-10);
        EXPECT_LE(norm2(pq.q().matrix() - exy * base.q().matrix() * exy.adjoint()), 1e-10);
        const ChartCoordinates c = pair_chart(base, pq);
        EXPECT_LE(norm2(c.x_p - x), 1e-7);
        EXPECT_LE(norm2(c.y_q - y), 1e-7);
    }
}

TEST(Chart, OutOfChart) {
    const ProjectionPair base(proj(diag({1.0, 0.0})), proj(diag({1.0, 0.0})));
    const ProjectionPair far(proj(diag({0.0, 1.0})), proj(diag({1.0, 0.0})));
    EXPECT_THROW(pair_chart(base, far), OutOfChartError);
}

TEST(Probe, ConstantWhenEndpointsAgree) {
    std::mt19937_64 rng(9);
    const ProjectionPair pair = testing::random_pair(7, rng);
    const auto steps = geodesic_in_class_probe(pair.p(), pair.q(), pair.q(), 10);
    ASSERT_EQ(steps.size(), 11u);
    for (const ProbeStep& s : steps) {
        EXPECT_EQ(s.sv_count_above_tau, steps[0].sv_count_above_tau);
        EXPECT_NEAR(s.frobenius_sq, steps[0].frobenius_sq, 1e-12);
        EXPECT_LE(s.step_jump, 1e-12);
        EXPECT_LE(s.symmetry_residual, 1e-12);
    }
    EXPECT_EQ(steps.front().t, 0.0);
    EXPECT_EQ(steps.back().t, 1.0);
}

TEST(Probe, JumpsBoundedByStepLength) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = std::uniform_int_distribution<Index>(2, 14)(rng);
        const ProjectionPair pair = testing::random_pair(n, rng);
        const ComplexMatrix x = codiagonal(pair.q().matrix(), 1.2, rng);
        const ComplexMatrix e = testing::expi(x);
        const Projection q1 = Projection::validate(hermitian_part(e * pair.q().matrix() * e.adjoint()), 1e-9);
        const Index nsteps = 25;
        const auto steps = geodesic_in_class_probe(pair.p(), pair.q(), q1, nsteps);
        ASSERT_EQ(steps.size(), static_cast<std::size_t>(nsteps + 1));
        const double bound = 2.0 * norm2(x) / static_cast<double>(nsteps) + 1e-10;
        for (const ProbeStep& s : steps) {
            EXPECT_LE(s.step_jump, bound);
            EXPECT_LE(s.symmetry_residual, 1e-9);
            EXPECT_LE(s.max_sv, 1.0 + 1e-12);
        }
    }
    std::mt19937_64 r2(1);
    const ProjectionPair pair = testing::random_pair(3, r2);
    EXPECT_THROW(geodesic_in_class_probe(pair.p(), pair.q(), pair.q(), 0), InputError);
}

}  // namespace
}  // namespace projpair
