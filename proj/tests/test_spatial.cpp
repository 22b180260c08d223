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
#include "projpair/spatial.hpp"
#include "test_util.hpp"

namespace projpair {
namespace {

using testing::diag;
using testing::norm2;

ComplexMatrix unit(Index n, Index i) {
    ComplexMatrix m = ComplexMatrix::Zero(n, 1);
    m(i, 0) = 1.0;
    return m;
}

TEST(Crimmins, Examples) {
    EXPECT_EQ(crimmins_residual(diag({1.0, 0.0})), 0.0);
    ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
    nil(0, 1) = 1.0;
    EXPECT_NEAR(crimmins_residual(nil), 1.0, 1e-15);
}

TEST(Crimmins, ProductsOfRandomProjections) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<Index> dim(1, 32);
    for (int trial = 0; trial < 100; ++trial) {
        const Index n = dim(rng);
        const ProjectionPair pair = testing::random_pair(n, rng);
        const ComplexMatrix t = pair.p().matrix() * pair.q().matrix();
        EXPECT_LE(crimmins_residual(t), 1e-10);
        const auto [range, corange] = projections_from_product(t);
        EXPECT_LE(norm2(range.matrix() * corange.matrix() - t), 1e-9);
        // Unitary invariance.
        const ComplexMatrix u = testing::random_orthonormal(n, n, rng);
        EXPECT_NEAR(crimmins_residual(u * t * u.adjoint()), crimmins_residual(t), 1e-10);
    }
}

TEST(Crimmins, GaussianMatricesAreNotProducts) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        const Index n = std::uniform_int_distribution<Index>(2, 16)(rng);
        ComplexMatrix g = testing::gaussian(n, n, rng);
        g /= norm2(g);
        const double res = crimmins_residual(g);
        EXPECT_GT(res, 1e-6) << seed;
        try {
            projections_from_product(g);
            ADD_FAILURE() << "expected NotAProductError for seed " << seed;
        } catch (const NotAProductError& e) {
            EXPECT_NEAR(e.residual(), res, 1e-14);
        }
    }
}

TEST(ProjectionsFromProduct, Examples) {
    const auto [r, c] = projections_from_product(diag({1.0, 0.0}));
    EXPECT_LE(norm2(r.matrix() - diag({1.0, 0.0})), 1e-15);
    EXPECT_LE(norm2(c.matrix() - diag({1.0, 0.0})), 1e-15);
    const ComplexMatrix t = diag({1.0, 0.0}) * testing::rotation_projection(std::numbers::pi / 4);
    const auto [r2, c2] = projections_from_product(t);
    EXPECT_LE(norm2(r2.matrix() * c2.matrix() - t), 1e-10);
}

TEST(Biorthogonal, Examples) {
    const SubspaceBasis e1(unit(2, 0));
    const SubspaceBasis e2(unit(2, 1));
    const BiorthogonalSystem same = biorthogonal_bases(e1, e1);
    EXPECT_NEAR(same.s(0), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(same.xi(0, 0)), 1.0, 1e-15);
    EXPECT_LE(norm2(same.xi - same.psi), 1e-15);

    const BiorthogonalSystem orth = biorthogonal_bases(e1, e2);
    EXPECT_EQ(orth.s(0), 0.0);
    EXPECT_LE(norm2(orth.gram()), 1e-15);

    ComplexMatrix d = ComplexMatrix::Constant(2, 1, 1.0 / std::sqrt(2.0));
    const BiorthogonalSystem half = biorthogonal_bases(e1, SubspaceBasis(d));
    EXPECT_NEAR(half.s(0), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Biorthogonal, GramIsDiagonalForRandomSubspaces) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const Index n = std::uniform_int_distribution<Index>(2, 24)(rng);
        const Index ds = std::uniform_int_distribution<Index>(0, n)(rng);
        const Index dt = std::uniform_int_distribution<Index>(0, n)(rng);
        const SubspaceBasis s(testing::random_orthonormal(n, ds, rng));
        const SubspaceBasis t(testing::random_orthonormal(n, dt, rng));
        const BiorthogonalSystem b = biorthogonal_bases(s, t);
        ASSERT_EQ(b.xi.cols(), ds);
        ASSERT_EQ(b.psi.cols(), dt);
        EXPECT_LE(norm2(b.xi.adjoint() * b.xi - ComplexMatrix::Identity(ds, ds)), 1e-10);
        EXPECT_LE(norm2(b.psi.adjoint() * b.psi - ComplexMatrix::Identity(dt, dt)), 1e-10);
        // The spans are preserved.
        EXPECT_LE(norm2(b.xi * b.xi.adjoint() - s.projector()), 1e-10);
        EXPECT_LE(norm2(b.psi * b.psi.adjoint() - t.projector()), 1e-10);

        const ComplexMatrix g = b.gram();
        ComplexMatrix off = g;
        for (Index i = 0; i < std::min(ds, dt); ++i) {
            EXPECT_NEAR(g(i, i).real(), b.s(i), 1e-8);
            EXPECT_NEAR(g(i, i).imag(), 0.0, 1e-8);
            EXPECT_GE(g(i, i).real(), -1e-8);
            EXPECT_LE(g(i, i).real(), 1.0 + 1e-8);
            off(i, i) = 0.0;
        }
        if (off.size() > 0) {
            EXPECT_LE(off.cwiseAbs().maxCoeff(), 1e-8);
        }

        // Nonzero diagonal equals the singular values of P_S P_T.
        const RealVector sv = singular_values(s.projector() * t.projector());
        for (Index i = 0; i < b.prefix; ++i) EXPECT_NEAR(b.s(i), sv(i), 1e-8);
    }
}

}  // namespace
}  // namespace projpair
