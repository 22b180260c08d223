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

#ifndef PROJPAIR_PROJCORE_HPP
#define PROJPAIR_PROJCORE_HPP

#include <cstddef>
#include <vector>

#include "projpair/numkit.hpp"

namespace projpair {

inline constexpr double kProjectionTol = 1e-10;

struct ProjectionResiduals {
    double hermitian = 0.0;   // ||M - M*||
    double idempotent = 0.0;  // ||M^2 - M||
    double spectral = 0.0;    // max distance of an eigenvalue to {0, 1}

    double max() const;
};

ProjectionResiduals projection_residuals(const ComplexMatrix& m);

/// A validated orthogonal projection (Hermitian idempotent).
class Projection {
public:
    /// Throws InputError unless every residual of `m` is within `tol`.
    /// The stored matrix is the Hermitian part of `m`.
    static Projection validate(const ComplexMatrix& m, double tol = kProjectionTol);

    const ComplexMatrix& matrix() const { return m_; }
    double tol() const { return tol_; }
    Index dim() const { return m_.rows(); }

    std::size_t rank(double rel_tol = kRankTol) const;
    std::size_t nullity(double rel_tol = kRankTol) const;

    /// 1 - P
    Projection complement() const;

    /// U P U* for a unitary U.
    Projection conjugated(const ComplexMatrix& u, double tol = kProjectionTol) const;

    /// Symmetry 2P - 1.
    ComplexMatrix symmetry() const;

private:
    Projection(ComplexMatrix m, double tol) : m_(std::move(m)), tol_(tol) {}

    ComplexMatrix m_;
    double tol_;
};

class ProjectionPair {
public:
    /// Throws InputError if the dimensions differ.
    ProjectionPair(Projection p, Projection q);

    const Projection& p() const { return p_; }
    const Projection& q() const { return q_; }
    Index dim() const { return p_.dim(); }

private:
    Projection p_;
    Projection q_;
};

/// Q written as the 2x2 operator matrix [[a, x], [x*, b]] relative to
/// the decomposition R(P) (+) N(P).
struct BlockForm {
    SubspaceBasis basis_r;  // orthonormal basis of R(P)
    SubspaceBasis basis_n;  // orthonormal basis of N(P)
    ComplexMatrix a;        // r x r
    ComplexMatrix x;        // r x nu
    ComplexMatrix b;        // nu x nu

    Index rank_p() const { return basis_r.dim(); }
    Index nullity_p() const { return basis_n.dim(); }

    /// Ambient matrix of Q rebuilt from the four blocks.
    ComplexMatrix reassemble() const;
};

Projection projection_from_basis(const SubspaceBasis& cols);

/// B B* for a column matrix that must be orthonormal within 1e-8.
Projection projection_from_columns(const ComplexMatrix& cols);

/// Orthogonal projection onto N(E) for an idempotent E, computed as
/// (1 - E)(1 - E - E*)^{-1} and cross-checked against the SVD kernel of E.
Projection projection_from_idempotent(const ComplexMatrix& e, double tol = kProjectionTol,
                                      double sigma_floor = 1e-12);

BlockForm block_decompose(const ProjectionPair& pair, double rank_tol = kRankTol);

struct RelationResiduals {
    double range_relation = 0.0;    // ||x x* - (a - a^2)||
    double kernel_relation = 0.0;   // ||x* x - (b - b^2)||
    double intertwining = 0.0;      // ||a x + x b - x||

    double max() const;
};

RelationResiduals verify_projection_relations(const BlockForm& bf);

struct EigenCluster {
    double value = 0.0;
    std::size_t multiplicity = 0;
};

/// Orthonormal systems pairing an interior eigenvalue lambda of a with the
/// eigenvalue 1 - lambda of b; x maps xi_prime to alpha * xi.
struct SingularTriplets {
    double lambda = 0.0;
    double alpha = 0.0;
    ComplexMatrix xi;        // ambient vectors spanning the lambda-eigenspace of a
    ComplexMatrix xi_prime;  // ambient vectors spanning the (1-lambda)-eigenspace of b
};

/// Per interior eigenvalue of b: the matching eigenvalue of a at 1 - lambda
/// and the intertwining residual ||x P_{N(b - lambda)} - P_{N(a - (1 - lambda))} x||.
struct SpectralMatch {
    double lambda_b = 0.0;
    double lambda_a = 0.0;
    std::size_t multiplicity_b = 0;
    std::size_t multiplicity_a = 0;
    double intertwining_residual = 0.0;
    bool ok = false;
};

struct EigenData {
    std::vector<EigenCluster> lambdas;  // eigenvalues of a in (0, 1), non-increasing
    std::vector<double> alphas;         // sqrt(lambda - lambda^2), aligned with lambdas
    std::size_t rank_e1 = 0;            // eigenspace of a at 1
    std::size_t rank_e1p = 0;           // eigenspace of b at 1
    std::size_t dim_na = 0;
    std::size_t dim_nb = 0;
    std::vector<EigenCluster> spectrum_a;
    std::vector<EigenCluster> spectrum_b;
    std::vector<SingularTriplets> x_triplets;
    std::vector<SpectralMatch> matches;
    bool symmetry_holds = true;
    bool cluster_ambiguity = false;  // warning only
};

/// Chain-merges a non-increasing list into clusters whose adjacent members
/// are within `tol`. Cluster values are the member means.
std::vector<EigenCluster> cluster_values(const RealVector& sorted_desc, double tol);

EigenData eigendata(const BlockForm& bf, double spec_tol = kSpecTol);

}  // namespace projpair

#endif  // PROJPAIR_PROJCORE_HPP
