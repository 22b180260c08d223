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

#ifndef PROJPAIR_HALMOS_HPP
#define PROJPAIR_HALMOS_HPP

#include <cstddef>
#include <vector>

#include "projpair/numkit.hpp"
#include "projpair/projcore.hpp"

namespace projpair {

struct AngleCluster {
    double gamma = 0.0;
    std::size_t multiplicity = 0;
};

/// Angles of the generic part, increasing, each strictly inside
/// (angle_tol, pi/2 - angle_tol).
struct PrincipalAngles {
    std::vector<AngleCluster> gammas;

    std::size_t total_multiplicity() const;
};

/// Five-space decomposition of a projection pair:
///   H11 = R(P) & R(Q),  H00 = N(P) & N(Q),  H10 = R(P) & N(Q),
///   H01 = N(P) & R(Q),  H0 = orthogonal complement of their sum.
///
/// On H0 = L (+) L the pair takes the model form
///   P = [[1, 0], [0, 0]],   Q = [[C^2, CS], [CS, S^2]],
/// with C = cos(X), S = sin(X) and X = diag(gamma_values). `model_basis`
/// holds the ambient images of the model coordinates, P-part first.
struct HalmosDecomposition {
    SubspaceBasis h11;
    SubspaceBasis h00;
    SubspaceBasis h10;
    SubspaceBasis h01;
    SubspaceBasis generic;
    PrincipalAngles angles;
    RealVector gamma_values;     // one angle per model column pair, increasing
    ComplexMatrix model_basis;   // ambient x 2L
    ComplexMatrix generic_p;     // G* P G, G = generic.columns()
    ComplexMatrix generic_q;     // G* Q G

    Index ambient_dim() const { return h11.ambient_dim(); }
    Index half_dim() const { return gamma_values.size(); }

    ComplexMatrix model_p() const;
    ComplexMatrix model_q() const;

    /// ||sum of the five subspace projectors - I||.
    double completeness_residual() const;
};

HalmosDecomposition halmos_decompose(const ProjectionPair& pair, double angle_tol = kAngleTol,
                                     double rank_tol = kRankTol, double cluster_tol = kSpecTol);

/// Reassembles (P, Q) from the corner spaces and the generic-part model.
ProjectionPair reconstruct(const HalmosDecomposition& dec);

struct CompactPairReport {
    Index dim_h11 = 0;
    std::vector<double> cosines;  // cos(gamma) per model column, non-increasing
    double max_cos = 0.0;
};

CompactPairReport compact_pair_report(const HalmosDecomposition& dec);

/// Oblique projection onto M = P(H0) along N = Q(H0), computed as
/// P0 (P0 - Q0)^{-1} on the generic part and compared with its model form
/// [[1, -C S^{-1}], [0, 0]].
struct ObliqueIdempotent {
    ComplexMatrix generic_coords;  // in the basis `generic`
    ComplexMatrix model_coords;    // in the model basis
    ComplexMatrix expected_model;
    double model_residual = 0.0;
    double idempotency_residual = 0.0;
};

ObliqueIdempotent oblique_idempotent(const HalmosDecomposition& dec);

struct C0Report {
    std::size_t distinct_angles = 0;
    std::size_t dim_h01 = 0;
    std::size_t rank_e1 = 0;

    bool all_within(std::size_t bound) const {
        return distinct_angles <= bound && dim_h01 <= bound && rank_e1 <= bound;
    }
};

C0Report c0_conditions(const HalmosDecomposition& dec, const EigenData& ed);

}  // namespace projpair

#endif  // PROJPAIR_HALMOS_HPP
