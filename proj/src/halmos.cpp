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

#include "projpair/halmos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "projpair/errors.hpp"

namespace projpair {

std::size_t PrincipalAngles::total_multiplicity() const {
    std::size_t total = 0;
    for (const auto& g : gammas) total += g.multiplicity;
    return total;
}

ComplexMatrix HalmosDecomposition::model_p() const {
    const Index l = half_dim();
    ComplexMatrix m = ComplexMatrix::Zero(2 * l, 2 * l);
    m.topLeftCorner(l, l).setIdentity();
    return m;
}

ComplexMatrix HalmosDecomposition::model_q() const {
    const Index l = half_dim();
    const RealVector c = gamma_values.array().cos();
    const RealVector s = gamma_values.array().sin();
    ComplexMatrix m = ComplexMatrix::Zero(2 * l, 2 * l);
    for (Index k = 0; k < l; ++k) {
        m(k, k) = c(k) * c(k);
        m(k, l + k) = c(k) * s(k);
        m(l + k, k) = c(k) * s(k);
        m(l + k, l + k) = s(k) * s(k);
    }
    return m;
}

double HalmosDecomposition::completeness_residual() const {
    const Index n = ambient_dim();
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const SubspaceBasis* b : {&h11, &h00, &h10, &h01, &generic}) sum += b->projector();
    return op_norm(sum - identity(n));
}

namespace {

// Symmetric (Loewdin) orthonormalization: the orthonormal matrix closest to
// `c` with the same column span.
ComplexMatrix loewdin(const ComplexMatrix& c) {
    if (c.cols() == 0) return c;
    const Svd dec = svd(c, SvdVectors::thin);
    return dec.u * dec.v.adjoint();
}

std::vector<AngleCluster> cluster_increasing(const RealVector& g, double tol) {
    std::vector<AngleCluster> out;
    Index i = 0;
    while (i < g.size()) {
        Index j = i + 1;
        double sum = g(i);
        while (j < g.size() && g(j) - g(j - 1) <= tol) sum += g(j++);
        out.push_back({sum / static_cast<double>(j - i), static_cast<std::size_t>(j - i)});
        i = j;
    }
    return out;
}

}  // namespace

HalmosDecomposition halmos_decompose(const ProjectionPair& pair, double angle_tol, double rank_tol,
                                     double cluster_tol) {
    const ComplexMatrix& p = pair.p().matrix();
    const ComplexMatrix& q = pair.q().matrix();
    const Index n = pair.dim();

    const SubspaceBasis rp = range_of_hermitian(p, rank_tol);
    const SubspaceBasis np = kernel_of_hermitian(p, rank_tol);
    const SubspaceBasis rq = range_of_hermitian(q, rank_tol);
    const SubspaceBasis nq = kernel_of_hermitian(q, rank_tol);

    SubspaceBasis h11 = subspace_intersection(rp, rq, angle_tol);
    SubspaceBasis h00 = subspace_intersection(np, nq, angle_tol);
    SubspaceBasis h10 = subspace_intersection(rp, nq, angle_tol);
    SubspaceBasis h01 = subspace_intersection(np, rq, angle_tol);

    // The four corners are orthogonal only up to angle_tol; orthonormalize the
    // stack jointly so the generic complement is well defined.
    ComplexMatrix corners(n, h11.dim() + h00.dim() + h10.dim() + h01.dim());
    corners << h11.columns(), h00.columns(), h10.columns(), h01.columns();
    if (corners.cols() > 0 && op_norm(corners.adjoint() * corners - identity(corners.cols())) > 1e-13) {
        corners = loewdin(corners);
        Index off = 0;
        auto take = [&](SubspaceBasis& b) {
            const Index k = b.dim();
            b = SubspaceBasis(ComplexMatrix(corners.middleCols(off, k)));
            off += k;
        };
        take(h11);
        take(h00);
        take(h10);
        take(h01);
    }

    HalmosDecomposition dec{h11, h00, h10, h01, SubspaceBasis(n), {}, RealVector(0),
                            ComplexMatrix(n, 0), ComplexMatrix(0, 0), ComplexMatrix(0, 0)};
    dec.generic = SubspaceBasis(corners, 1e-10).complement();

    const Index g = dec.generic.dim();
    if (g == 0) return dec;
    const ComplexMatrix& gb = dec.generic.columns();
    dec.generic_p = hermitian_part(gb.adjoint() * p * gb);
    dec.generic_q = hermitian_part(gb.adjoint() * q * gb);

    const HermitianEigen ep = hermitian_eigen(dec.generic_p);
    const HermitianEigen eq = hermitian_eigen(dec.generic_q);
    const Index rank_p0 = static_cast<Index>((ep.values.array() > 0.5).count());
    const Index rank_q0 = static_cast<Index>((eq.values.array() > 0.5).count());
    if (g % 2 != 0 || 2 * rank_p0 != g || 2 * rank_q0 != g) {
        std::ostringstream os;
        os << "halmos_decompose: inconsistent generic part (dim " << g << ", rank P0 " << rank_p0
           << ", rank Q0 " << rank_q0 << "; corners h11=" << h11.dim() << " h00=" << h00.dim()
           << " h10=" << h10.dim() << " h01=" << h01.dim() << ")";
        throw ConsistencyError(os.str());
    }
    const Index l = g / 2;
    const ComplexMatrix m_basis = ep.vectors.leftCols(l);
    const ComplexMatrix n_basis = eq.vectors.leftCols(l);

    const Svd sv = svd(m_basis.adjoint() * n_basis, SvdVectors::full);
    ComplexMatrix u = m_basis * sv.u;
    ComplexMatrix v = n_basis * sv.v;
    ComplexMatrix w(g, l);
    dec.gamma_values.resize(l);

    const double lo = angle_tol;
    const double hi = std::numbers::pi / 2 - angle_tol;
    for (Index k = 0; k < l; ++k) {
        // Phase convention: the ambient left principal vector is normalized,
        // and the right one is rotated along to keep <u, v> real positive.
        ComplexVector amb = gb * u.col(k);
        const Complex phase = normalize_phase(amb);
        u.col(k) *= phase;
        v.col(k) *= phase;

        const double c = std::clamp(u.col(k).dot(v.col(k)).real(), 0.0, 1.0);
        const ComplexVector resid = v.col(k) - c * u.col(k);
        const double s = resid.norm();
        const double gamma = std::atan2(s, c);
        if (!(gamma > lo && gamma < hi)) {
            std::ostringstream os;
            os << "halmos_decompose: generic angle " << gamma << " outside (" << lo << ", " << hi
               << "); endpoint directions were not absorbed by the corner spaces";
            throw ConsistencyError(os.str());
        }
        dec.gamma_values(k) = gamma;
        w.col(k) = resid / s;
    }

    ComplexMatrix model(g, 2 * l);
    model << u, w;
    // Re-orthonormalize to remove drift from the w construction.
    model = loewdin(model);
    dec.model_basis = gb * model;
    dec.angles.gammas = cluster_increasing(dec.gamma_values, cluster_tol);
    return dec;
}

ProjectionPair reconstruct(const HalmosDecomposition& dec) {
    ComplexMatrix p = dec.h11.projector() + dec.h10.projector();
    ComplexMatrix q = dec.h11.projector() + dec.h01.projector();
    if (dec.half_dim() > 0) {
        const ComplexMatrix& z = dec.model_basis;
        p += z * dec.model_p() * z.adjoint();
        q += z * dec.model_q() * z.adjoint();
    }
    return ProjectionPair(Projection::validate(p, 1e-8), Projection::validate(q, 1e-8));
}

CompactPairReport compact_pair_report(const HalmosDecomposition& dec) {
    CompactPairReport r;
    r.dim_h11 = dec.h11.dim();
    for (Index k = 0; k < dec.gamma_values.size(); ++k) r.cosines.push_back(std::cos(dec.gamma_values(k)));
    std::sort(r.cosines.begin(), r.cosines.end(), std::greater<>());
    r.max_cos = r.cosines.empty() ? 0.0 : r.cosines.front();
    return r;
}

ObliqueIdempotent oblique_idempotent(const HalmosDecomposition& dec) {
    const Index l = dec.half_dim();
    if (l == 0) throw DomainError("oblique_idempotent: generic part is empty");

    ObliqueIdempotent out;
    const ComplexMatrix diff = dec.generic_p - dec.generic_q;
    const double smin = sigma_min(diff);
    if (smin <= 1e-14) {
        throw DomainError("oblique_idempotent: P0 - Q0 is singular on the generic part");
    }
    out.generic_coords = dec.generic_p * diff.partialPivLu().inverse();
    out.idempotency_residual = op_norm(out.generic_coords * out.generic_coords - out.generic_coords);

    // Model coordinates: columns of model_basis expressed in the generic basis.
    const ComplexMatrix t = dec.generic.columns().adjoint() * dec.model_basis;
    out.model_coords = t.adjoint() * out.generic_coords * t;

    out.expected_model = ComplexMatrix::Zero(2 * l, 2 * l);
    for (Index k = 0; k < l; ++k) {
        out.expected_model(k, k) = 1.0;
        out.expected_model(k, l + k) = -1.0 / std::tan(dec.gamma_values(k));
    }
    out.model_residual = op_norm(out.model_coords - out.expected_model);
    return out;
}

C0Report c0_conditions(const HalmosDecomposition& dec, const EigenData& ed) {
    return {dec.angles.gammas.size(), static_cast<std::size_t>(dec.h01.dim()), ed.rank_e1};
}

}  // namespace projpair
