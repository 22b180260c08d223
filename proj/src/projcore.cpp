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

#include "projpair/projcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "projpair/errors.hpp"

namespace projpair {

double ProjectionResiduals::max() const { return std::max({hermitian, idempotent, spectral}); }

ProjectionResiduals projection_residuals(const ComplexMatrix& m) {
    require_square(m, "projection");
    ProjectionResiduals r;
    if (m.rows() == 0) return r;
    r.hermitian = op_norm(m - m.adjoint());
    r.idempotent = op_norm(m * m - m);
    const HermitianEigen eig = hermitian_eigen(m);
    for (Index i = 0; i < eig.values.size(); ++i) {
        const double v = eig.values(i);
        r.spectral = std::max(r.spectral, std::min(std::abs(v), std::abs(v - 1.0)));
    }
    return r;
}

Projection Projection::validate(const ComplexMatrix& m, double tol) {
    require_finite(m, "projection");
    const ProjectionResiduals r = projection_residuals(m);
    if (r.max() > tol) {
        std::ostringstream os;
        os << "not an orthogonal projection within " << tol << " (hermitian " << r.hermitian
           << ", idempotent " << r.idempotent << ", spectral " << r.spectral << ")";
        throw InputError(os.str());
    }
    return Projection(hermitian_part(m), tol);
}

std::size_t Projection::rank(double rel_tol) const { return numerical_rank(m_, rel_tol); }

std::size_t Projection::nullity(double rel_tol) const {
    return static_cast<std::size_t>(dim()) - rank(rel_tol);
}

Projection Projection::complement() const { return Projection(identity(dim()) - m_, tol_); }

Projection Projection::conjugated(const ComplexMatrix& u, double tol) const {
    return validate(u * m_ * u.adjoint(), tol);
}

ComplexMatrix Projection::symmetry() const { return 2.0 * m_ - identity(dim()); }

ProjectionPair::ProjectionPair(Projection p, Projection q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.dim() != q_.dim()) {
        std::ostringstream os;
        os << "projection pair: dimension mismatch (" << p_.dim() << " vs " << q_.dim() << ")";
        throw InputError(os.str());
    }
}

ComplexMatrix BlockForm::reassemble() const {
    const ComplexMatrix& r = basis_r.columns();
    const ComplexMatrix& n = basis_n.columns();
    const ComplexMatrix off = r * x * n.adjoint();
    return r * a * r.adjoint() + off + off.adjoint() + n * b * n.adjoint();
}

Projection projection_from_basis(const SubspaceBasis& cols) {
    return Projection::validate(cols.projector(), kProjectionTol);
}

Projection projection_from_columns(const ComplexMatrix& cols) {
    return projection_from_basis(SubspaceBasis(cols, 1e-8));
}

Projection projection_from_idempotent(const ComplexMatrix& e, double tol, double sigma_floor) {
    require_square(e, "projection_from_idempotent");
    require_finite(e, "projection_from_idempotent");
    const Index n = e.rows();
    if (n == 0) return Projection::validate(ComplexMatrix(0, 0));

    const double scale = std::max(1.0, op_norm(e));
    const double idem = op_norm(e * e - e);
    if (idem > tol * scale * scale) {
        std::ostringstream os;
        os << "projection_from_idempotent: ||E^2 - E|| = " << idem << " exceeds tolerance";
        throw InputError(os.str());
    }

    const ComplexMatrix id = identity(n);
    const ComplexMatrix m = id - e - e.adjoint();
    const double smin = sigma_min(m);
    if (smin <= sigma_floor) {
        std::ostringstream os;
        os << "projection_from_idempotent: 1 - E - E* is singular (sigma_min " << smin << ")";
        throw SingularInputError(os.str(), smin);
    }
    const ComplexMatrix q = hermitian_part((id - e) * m.partialPivLu().inverse());

    // Cross-check against the kernel of E read off its SVD.
    const Svd dec = svd(e, SvdVectors::full);
    const Index r = static_cast<Index>(numerical_rank(e, kRankTol));
    const ComplexMatrix kernel = dec.v.rightCols(n - r);
    const double mismatch = op_norm(q - kernel * kernel.adjoint());
    if (mismatch > 1e-6) {
        std::ostringstream os;
        os << "projection_from_idempotent: formula disagrees with SVD kernel by " << mismatch;
        throw ConsistencyError(os.str());
    }
    return Projection::validate(q, std::max(tol, 1e-9));
}

BlockForm block_decompose(const ProjectionPair& pair, double rank_tol) {
    const ComplexMatrix& p = pair.p().matrix();
    const ComplexMatrix& q = pair.q().matrix();
    BlockForm bf{range_of_hermitian(p, rank_tol), kernel_of_hermitian(p, rank_tol), {}, {}, {}};
    const ComplexMatrix& r = bf.basis_r.columns();
    const ComplexMatrix& nb = bf.basis_n.columns();
    bf.a = hermitian_part(r.adjoint() * q * r);
    bf.x = r.adjoint() * q * nb;
    bf.b = hermitian_part(nb.adjoint() * q * nb);
    return bf;
}

double RelationResiduals::max() const {
    return std::max({range_relation, kernel_relation, intertwining});
}

RelationResiduals verify_projection_relations(const BlockForm& bf) {
    RelationResiduals res;
    const ComplexMatrix& a = bf.a;
    const ComplexMatrix& x = bf.x;
    const ComplexMatrix& b = bf.b;
    if (a.size() > 0) res.range_relation = op_norm(x * x.adjoint() - (a - a * a));
    if (b.size() > 0) res.kernel_relation = op_norm(x.adjoint() * x - (b - b * b));
    if (x.size() > 0) res.intertwining = op_norm(a * x + x * b - x);
    return res;
}

std::vector<EigenCluster> cluster_values(const RealVector& sorted_desc, double tol) {
    std::vector<EigenCluster> out;
    Index i = 0;
    while (i < sorted_desc.size()) {
        Index j = i + 1;
        double sum = sorted_desc(i);
        while (j < sorted_desc.size() && sorted_desc(j - 1) - sorted_desc(j) <= tol) {
            sum += sorted_desc(j);
            ++j;
        }
        out.push_back({sum / static_cast<double>(j - i), static_cast<std::size_t>(j - i)});
        i = j;
    }
    return out;
}

namespace {

enum class Location { zero, one, interior };

Location locate(double v, double tol) {
    if (std::abs(v - 1.0) <= tol) return Location::one;
    if (std::abs(v) <= tol) return Location::zero;
    return Location::interior;
}

struct ClusteredSpectrum {
    HermitianEigen eig;
    std::vector<EigenCluster> clusters;
    std::vector<Index> offsets;  // first column of each cluster in eig.vectors
    bool ambiguous = false;
};

ClusteredSpectrum cluster_spectrum(const ComplexMatrix& h, double tol) {
    ClusteredSpectrum cs{hermitian_eigen(h), {}, {}, false};
    cs.clusters = cluster_values(cs.eig.values, tol);
    Index off = 0;
    for (const auto& c : cs.clusters) {
        cs.offsets.push_back(off);
        off += static_cast<Index>(c.multiplicity);
    }
    // Adjacent clusters separated by barely more than the merge tolerance.
    const RealVector& v = cs.eig.values;
    for (std::size_t k = 1; k < cs.offsets.size(); ++k) {
        const double gap = v(cs.offsets[k] - 1) - v(cs.offsets[k]);
        if (gap <= 10.0 * tol) cs.ambiguous = true;
    }
    return cs;
}

ComplexMatrix cluster_vectors(const ClusteredSpectrum& cs, std::size_t k) {
    return cs.eig.vectors.middleCols(cs.offsets[k], static_cast<Index>(cs.clusters[k].multiplicity));
}

}  // namespace

EigenData eigendata(const BlockForm& bf, double spec_tol) {
    EigenData ed;
    const ClusteredSpectrum sa = cluster_spectrum(bf.a, spec_tol);
    const ClusteredSpectrum sb = cluster_spectrum(bf.b, spec_tol);
    ed.spectrum_a = sa.clusters;
    ed.spectrum_b = sb.clusters;
    ed.cluster_ambiguity = sa.ambiguous || sb.ambiguous;

    std::vector<std::size_t> interior_a;
    for (std::size_t k = 0; k < sa.clusters.size(); ++k) {
        switch (locate(sa.clusters[k].value, spec_tol)) {
            case Location::one: ed.rank_e1 += sa.clusters[k].multiplicity; break;
            case Location::zero: ed.dim_na += sa.clusters[k].multiplicity; break;
            case Location::interior: interior_a.push_back(k); break;
        }
    }
    std::vector<std::size_t> interior_b;
    for (std::size_t k = 0; k < sb.clusters.size(); ++k) {
        switch (locate(sb.clusters[k].value, spec_tol)) {
            case Location::one: ed.rank_e1p += sb.clusters[k].multiplicity; break;
            case Location::zero: ed.dim_nb += sb.clusters[k].multiplicity; break;
            case Location::interior: interior_b.push_back(k); break;
        }
    }

    const double match_tol = 10.0 * spec_tol;
    auto find_partner = [&](const ClusteredSpectrum& other, const std::vector<std::size_t>& candidates,
                            double target) -> std::ptrdiff_t {
        std::ptrdiff_t best = -1;
        double best_d = match_tol;
        for (std::size_t k : candidates) {
            const double d = std::abs(other.clusters[k].value - target);
            if (d <= best_d) {
                best_d = d;
                best = static_cast<std::ptrdiff_t>(k);
            }
        }
        return best;
    };

    // b-eigenvalue lambda  <->  a-eigenvalue 1 - lambda, with x intertwining
    // the two spectral projections.
    for (std::size_t kb : interior_b) {
        SpectralMatch m;
        m.lambda_b = sb.clusters[kb].value;
        m.multiplicity_b = sb.clusters[kb].multiplicity;
        const std::ptrdiff_t ka = find_partner(sa, interior_a, 1.0 - m.lambda_b);
        if (ka >= 0) {
            const auto ua = static_cast<std::size_t>(ka);
            m.lambda_a = sa.clusters[ua].value;
            m.multiplicity_a = sa.clusters[ua].multiplicity;
            const ComplexMatrix vb = cluster_vectors(sb, kb);
            const ComplexMatrix va = cluster_vectors(sa, ua);
            m.intertwining_residual =
                op_norm(bf.x * (vb * vb.adjoint()) - (va * va.adjoint()) * bf.x);
            m.ok = m.multiplicity_a == m.multiplicity_b && m.intertwining_residual <= match_tol;
        }
        if (!m.ok) ed.symmetry_holds = false;
        ed.matches.push_back(m);
    }

    for (std::size_t ka : interior_a) {
        const double lambda = sa.clusters[ka].value;
        ed.lambdas.push_back(sa.clusters[ka]);
        ed.alphas.push_back(std::sqrt(std::max(0.0, lambda - lambda * lambda)));

        const std::ptrdiff_t kb = find_partner(sb, interior_b, 1.0 - lambda);
        if (kb < 0) {
            ed.symmetry_holds = false;
            continue;
        }
        SingularTriplets t;
        t.lambda = lambda;
        t.alpha = ed.alphas.back();
        const ComplexMatrix vb = cluster_vectors(sb, static_cast<std::size_t>(kb));
        t.xi_prime = bf.basis_n.columns() * vb;
        t.xi = bf.basis_r.columns() * (bf.x * vb) / t.alpha;
        ed.x_triplets.push_back(std::move(t));
    }
    return ed;
}

}  // namespace projpair
