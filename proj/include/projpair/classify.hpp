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

#ifndef PROJPAIR_CLASSIFY_HPP
#define PROJPAIR_CLASSIFY_HPP

// Finite-scale class diagnostics for projection pairs. A single pair has no
// class; a truncation family (one pair per size n) is classified by how its
// ranks, corner dimensions and product singular values behave as n grows.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "projpair/generators.hpp"
#include "projpair/halmos.hpp"
#include "projpair/numkit.hpp"
#include "projpair/projcore.hpp"

namespace projpair {

enum class FamilyKind { ek, fourier, hardy, angles, custom };

const char* to_string(FamilyKind kind);

struct TruncationFamily {
    FamilyKind kind = FamilyKind::custom;
    std::vector<Index> sizes;  // strictly increasing
    std::function<ProjectionPair(Index)> producer;
    std::string description;
};

/// |I_n| = |J_n| = floor(sqrt(n)), both starting at index 0.
TruncationFamily fourier_sqrt_family(std::vector<Index> sizes);
/// Modes -n..n with symbols z^a, z^c.
TruncationFamily hardy_family(Index a, Index c, std::vector<Index> sizes);
/// K_n = diag(1, 1/2, 1/4, ..., 2^{-(n-1)}).
TruncationFamily ek_geometric_family(std::vector<Index> sizes);
/// Fixed angles and corners, with dim H00 = n.
TruncationFamily angles_family(CornerDims base, std::vector<AngleSpec> angles, std::uint64_t seed,
                               std::vector<Index> sizes);
/// Explicit pairs; size k (1-based) returns pairs[k - 1].
TruncationFamily custom_family(std::vector<ProjectionPair> pairs);

struct SizeDiagnostics {
    Index size = 0;
    Index dim = 0;
    Index h11 = 0;
    Index h00 = 0;
    Index h10 = 0;
    Index h01 = 0;
    Index rank_p = 0;
    Index nullity_p = 0;
    Index rank_q = 0;
    Index nullity_q = 0;
    Index rank_pq_above_tau = 0;
    std::vector<double> sv_tail;  // singular values of PQ above 1e-14, non-increasing
    Index dim_ker_b = 0;
    long index_estimate = 0;      // rank Q - nullity P
};

using ClassDiagnostics = std::vector<SizeDiagnostics>;

struct ClassifyParams {
    double tau_sv = 1e-6;
    std::size_t window = 3;
    double rank_tol = kRankTol;
    double angle_tol = kAngleTol;
    double spec_tol = kSpecTol;
    bool parallel = true;
};

SizeDiagnostics size_diagnostics(const ProjectionPair& pair, Index size, const ClassifyParams& params);

struct PairClass {
    enum class Verdict { C0, C1, CInfinity, Indeterminate };

    Verdict verdict = Verdict::Indeterminate;
    // C0 parameters (rank P, nullity P, rank Q, nullity Q); nullopt = unbounded.
    std::optional<Index> k, l, m, n;
    long index = 0;      // C1 only
    std::string reason;  // Indeterminate only
    ClassDiagnostics diagnostics;

    std::string label() const;
};

const char* to_string(PairClass::Verdict v);

enum class Trend { bounded, growing, other };

/// bounded = constant over the last `window` values; growing = strictly
/// increasing over them.
Trend trend(const std::vector<Index>& values, std::size_t window);

PairClass classify_family(const TruncationFamily& family, const ClassifyParams& params = {});

struct IndexEstimate {
    long index = 0;
    bool stabilized = false;
    std::vector<long> per_size;
};

IndexEstimate fredholm_index_estimate(const TruncationFamily& family, std::size_t window = 3);
IndexEstimate fredholm_index_estimate(const ClassDiagnostics& diag, std::size_t window);

/// dim H01 - dim H10, reported as is. At finite scale this need not agree
/// with the compression index.
long halmos_index(const HalmosDecomposition& dec);

struct InvarianceResult {
    bool invariant = false;
    PairClass before;
    PairClass after;
};

/// Re-classifies the family with every Q_n replaced by W_n Q_n W_n*, where
/// W_n = conjugator(size, dim).
InvarianceResult class_action_invariance(const TruncationFamily& family,
                                         const std::function<ComplexMatrix(Index, Index)>& conjugator,
                                         const ClassifyParams& params = {});

/// Q_d = E_1 (+) P_{N(b)^perp}: the spectral projection of a at 1 on R(P)
/// and the projection onto the orthogonal complement of ker b on N(P).
Projection qd_projection(const BlockForm& bf, double spec_tol = kSpecTol);

struct QdResiduals {
    double sym = 0.0;    // ||U - U*||
    double invol = 0.0;  // ||U^2 - 1||
    double conj = 0.0;   // ||U Q U - Q_d||
    double comm = 0.0;   // ||[U, P]||
};

struct QdResult {
    Projection qd;
    ComplexMatrix b_matrix;  // Q + Q_d - 1
    double sigma_min_b = 0.0;
    double dist = 0.0;       // ||Q - Q_d||
    bool near_singular = false;
    std::optional<ComplexMatrix> u;
    std::optional<QdResiduals> residuals;
};

/// B = Q + Q_d - 1 and its unitary polar factor U. When sigma_min(B) <=
/// sigma_floor the U-dependent fields are left empty and near_singular is set.
QdResult qd_conjugation(const ProjectionPair& pair, double spec_tol = kSpecTol, double sigma_floor = 1e-6);

struct BuckholtzReport {
    double sigma_min_diff = 0.0;      // sigma_min(P - Q)
    double norm_sum_minus_one = 0.0;  // ||P + Q - 1||
    bool consistent = true;
    bool borderline = false;
};

/// Checks sigma_min(P - Q) > tau  <=>  ||P + Q - 1|| < 1 - tau_prime.
/// Since sigma_min(P - Q)^2 + ||P + Q - 1||^2 = 1, the two thresholds
/// disagree for sigma_min in roughly (tau, sqrt(2 tau_prime)); cases with
/// sigma_min in [tau / 10, 10 sqrt(2 tau_prime)] are flagged borderline.
BuckholtzReport buckholtz_check(const ProjectionPair& pair, double tau = 1e-8, double tau_prime = 1e-8);

struct RestrictedUnitaryProfile {
    double comm_norm = 0.0;
    std::vector<double> offdiag_sv;  // singular values of u12 and u21, merged, non-increasing
    long index_u = 0;                // nullity(u11) - nullity(u11*)
    Index nullity_u11 = 0;
    bool size_dependent = false;     // u11 has a kernel at this size
};

RestrictedUnitaryProfile restricted_unitary_profile(const ComplexMatrix& u, const Projection& p,
                                                    double null_tol = 1e-8);

struct CommutingConjugation {
    ComplexMatrix w;
    double conj_residual = 0.0;  // ||W E W* - F||
    double comm_norm = 0.0;      // ||[W, P]||
    Index shuffled = 0;          // number of range vectors moved across R(P) / N(P)
};

/// Unitary W with W E W* = F for projections E, F commuting with P. Range
/// and kernel bases of E and F inside R(P) and N(P) are matched, and when
/// the corner ranks differ a block of range vectors is moved across.
CommutingConjugation conjugate_commuting(const Projection& e, const Projection& f, const Projection& p);

}  // namespace projpair

#endif  // PROJPAIR_CLASSIFY_HPP
