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

#ifndef PROJPAIR_SPATIAL_HPP
#define PROJPAIR_SPATIAL_HPP

#include <utility>

#include "projpair/numkit.hpp"
#include "projpair/projcore.hpp"

namespace projpair {

/// Orthonormal bases xi of S and psi of T with <xi_n, psi_k> = s_n delta_nk.
struct BiorthogonalSystem {
    ComplexMatrix xi;   // ambient x dim S
    ComplexMatrix psi;  // ambient x dim T
    RealVector s;       // length min(dim S, dim T); zero past the common prefix
    Index prefix = 0;   // number of nonzero s_n

    /// G(n, k) = <xi_n, psi_k> = psi_k* xi_n.
    ComplexMatrix gram() const;
};

/// ||T^2 - T T* T||; zero exactly when T is a product of two orthogonal projections.
double crimmins_residual(const ComplexMatrix& t);

BiorthogonalSystem biorthogonal_bases(const SubspaceBasis& s, const SubspaceBasis& t,
                                      double rank_tol = kRankTol);

/// Recovers T = P_{closure R(T)} P_{N(T)^perp}. Throws NotAProductError when
/// crimmins_residual(T) > tol.
std::pair<Projection, Projection> projections_from_product(const ComplexMatrix& t, double tol = 1e-8);

}  // namespace projpair

#endif  // PROJPAIR_SPATIAL_HPP
