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

#include "projpair/spatial.hpp"

#include <algorithm>
#include <sstream>

#include "projpair/errors.hpp"

namespace projpair {

namespace {

// Extends the orthonormal columns `start` (inside span(space)) to an
// orthonormal basis of span(space) by Gram-Schmidt over the projected
// canonical vectors e_0, e_1, ... in index order.
ComplexMatrix complete_basis(const ComplexMatrix& start, const SubspaceBasis& space) {
    const Index n = space.ambient_dim();
    const Index target = space.dim();
    ComplexMatrix out(n, target);
    out.leftCols(start.cols()) = start;
    Index have = start.cols();
    const ComplexMatrix& sb = space.columns();
    for (Index i = 0; i < n && have < target; ++i) {
        ComplexVector v = sb * sb.row(i).adjoint();  // P_S e_i
        for (int pass = 0; pass < 2; ++pass) {
            v -= out.leftCols(have) * (out.leftCols(have).adjoint() * v);
        }
        const double nv = v.norm();
        if (nv > 1e-6) {
            out.col(have++) = v / nv;
        }
    }
    if (have < target) {
        throw NumericalError("biorthogonal_bases: basis completion failed");
    }
    return out;
}

}  // namespace

ComplexMatrix BiorthogonalSystem::gram() const { return xi.adjoint() * psi; }

double crimmins_residual(const ComplexMatrix& t) {
    require_square(t, "crimmins_residual");
    if (t.rows() == 0) return 0.0;
    return op_norm(t * t - t * t.adjoint() * t);
}

BiorthogonalSystem biorthogonal_bases(const SubspaceBasis& s, const SubspaceBasis& t, double rank_tol) {
    if (s.ambient_dim() != t.ambient_dim()) {
        throw InputError("biorthogonal_bases: ambient dimension mismatch");
    }
    const Index n = s.ambient_dim();
    const Index common = std::min(s.dim(), t.dim());
    BiorthogonalSystem out;
    out.s = RealVector::Zero(common);

    ComplexMatrix xi_pre(n, 0);
    ComplexMatrix psi_pre(n, 0);
    if (common > 0) {
        const Svd dec = svd(s.columns().adjoint() * t.columns(), SvdVectors::thin);
        const RealVector& sv = dec.values;
        const Index p = static_cast<Index>((sv.array() > rank_tol).count());
        xi_pre = s.columns() * dec.u.leftCols(p);
        psi_pre = t.columns() * dec.v.leftCols(p);
        for (Index k = 0; k < p; ++k) {
            // Same unit factor on both sides keeps <xi_k, psi_k> = s_k real.
            const Complex f = normalize_phase(xi_pre.col(k));
            psi_pre.col(k) *= f;
            out.s(k) = sv(k);
        }
        out.prefix = p;
    }
    out.xi = complete_basis(xi_pre, s);
    out.psi = complete_basis(psi_pre, t);
    return out;
}

std::pair<Projection, Projection> projections_from_product(const ComplexMatrix& t, double tol) {
    require_square(t, "projections_from_product");
    require_finite(t, "projections_from_product");
    const double res = crimmins_residual(t);
    if (res > tol) {
        std::ostringstream os;
        os << "projections_from_product: ||T^2 - T T* T|| = " << res << " exceeds " << tol
           << "; not a product of two projections";
        throw NotAProductError(os.str(), res);
    }
    const Index n = t.rows();
    if (n == 0) {
        return {Projection::validate(ComplexMatrix(0, 0)), Projection::validate(ComplexMatrix(0, 0))};
    }
    const Index r = static_cast<Index>(numerical_rank(t, kRankTol));
    const Svd dec = svd(t, SvdVectors::full);
    const ComplexMatrix ur = dec.u.leftCols(r);
    const ComplexMatrix vr = dec.v.leftCols(r);
    Projection range = Projection::validate(ur * ur.adjoint());
    Projection corange = Projection::validate(vr * vr.adjoint());
    const double err = op_norm(range.matrix() * corange.matrix() - t);
    if (err > 10.0 * std::max(tol, 1e-12)) {
        std::ostringstream os;
        os << "projections_from_product: reconstruction error " << err;
        throw ConsistencyError(os.str());
    }
    return {std::move(range), std::move(corange)};
}

}  // namespace projpair
