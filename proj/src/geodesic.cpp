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

#include "projpair/geodesic.hpp"

#include <algorithm>
#include <sstream>

#include "projpair/errors.hpp"

namespace projpair {

double codiagonality_residual(const ComplexMatrix& x, const Projection& q) {
    const ComplexMatrix s = q.symmetry();
    return op_norm(x * s + s * x);
}

GeodesicSegment geodesic_between(const Projection& q0, const Projection& q1, double branch_tol) {
    if (q0.dim() != q1.dim()) throw InputError("geodesic_between: dimension mismatch");
    const Index n = q0.dim();
    const ComplexMatrix s0 = q0.symmetry();
    const ComplexMatrix s1 = q1.symmetry();
    ComplexMatrix h;
    try {
        h = principal_unitary_log(s1 * s0, branch_tol);
    } catch (const BranchCutError& e) {
        std::ostringstream os;
        os << "geodesic_between: (2q1 - 1)(2q0 - 1) has an eigenvalue at -1; " << e.what();
        throw NoUniqueGeodesicError(os.str());
    }
    // exp(iH) = S1 S0 and X = H / 2. The exact X anticommutes with S0; drop
    // the rounding-level commuting part.
    ComplexMatrix x = 0.5 * h;
    x = 0.5 * (x - s0 * x * s0);
    x = hermitian_part(x);
    const double norm_x = n == 0 ? 0.0 : op_norm(x);
    return {q0, std::move(x), norm_x};
}

Projection geodesic_eval(const GeodesicSegment& seg, double t) {
    if (t == 0.0) return seg.base_q;
    const ComplexMatrix e = expi_hermitian(seg.exponent_x, t);
    return Projection::validate(e * seg.base_q.matrix() * e.adjoint(), 1e-8);
}

bool uniqueness_condition(const ProjectionPair& pair, double angle_tol) {
    const ComplexMatrix& p = pair.p().matrix();
    const ComplexMatrix& q = pair.q().matrix();
    const SubspaceBasis h10 = subspace_intersection(range_of_hermitian(p), kernel_of_hermitian(q), angle_tol);
    const SubspaceBasis h01 = subspace_intersection(kernel_of_hermitian(p), range_of_hermitian(q), angle_tol);
    return h10.empty() && h01.empty();
}

ChartCoordinates pair_chart(const ProjectionPair& base, const ProjectionPair& pq) {
    if (base.dim() != pq.dim()) throw InputError("pair_chart: dimension mismatch");
    const double dp = op_norm(pq.p().matrix() - base.p().matrix());
    if (dp >= 1.0 - 1e-8) {
        std::ostringstream os;
        os << "pair_chart: ||P - P0|| = " << dp << " is not below 1";
        throw OutOfChartError(os.str());
    }
    ChartCoordinates c;
    try {
        c.x_p = geodesic_between(base.p(), pq.p()).exponent_x;
    } catch (const NoUniqueGeodesicError& e) {
        throw OutOfChartError(std::string("pair_chart: ") + e.what());
    }
    const ComplexMatrix ex = expi_hermitian(c.x_p, -1.0);
    const Projection moved = Projection::validate(ex * pq.q().matrix() * ex.adjoint(), 1e-8);
    const double dq = op_norm(moved.matrix() - base.q().matrix());
    if (dq >= 1.0 - 1e-8) {
        std::ostringstream os;
        os << "pair_chart: transported Q is at distance " << dq << " from Q0, not below 1";
        throw OutOfChartError(os.str());
    }
    try {
        c.y_q = geodesic_between(base.q(), moved).exponent_x;
    } catch (const NoUniqueGeodesicError& e) {
        throw OutOfChartError(std::string("pair_chart: ") + e.what());
    }
    c.comm_norm_y = op_norm(commutator(c.y_q, base.p().matrix()));
    return c;
}

ProjectionPair chart_inverse(const ProjectionPair& base, const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows() != base.dim() || y.rows() != base.dim()) throw InputError("chart_inverse: dimension mismatch");
    const ComplexMatrix ex = expi_hermitian(x);
    const ComplexMatrix exy = ex * expi_hermitian(y);
    return ProjectionPair(Projection::validate(ex * base.p().matrix() * ex.adjoint(), 1e-8),
                          Projection::validate(exy * base.q().matrix() * exy.adjoint(), 1e-8));
}

std::vector<ProbeStep> geodesic_in_class_probe(const Projection& p0, const Projection& q0, const Projection& q1,
                                               Index steps, double tau_sv) {
    if (steps < 1) throw InputError("geodesic_in_class_probe: steps must be at least 1");
    if (p0.dim() != q0.dim()) throw InputError("geodesic_in_class_probe: dimension mismatch");
    const GeodesicSegment seg = geodesic_between(q0, q1);
    const ComplexMatrix s0 = q0.symmetry();
    const Index n = p0.dim();

    std::vector<ProbeStep> out;
    RealVector prev;
    for (Index k = 0; k <= steps; ++k) {
        ProbeStep st;
        st.t = static_cast<double>(k) / static_cast<double>(steps);
        const Projection d = geodesic_eval(seg, st.t);
        const RealVector sv = singular_values(p0.matrix() * d.matrix());
        st.sv_count_above_tau = static_cast<Index>((sv.array() > tau_sv).count());
        st.max_sv = sv.size() > 0 ? sv(0) : 0.0;
        st.frobenius_sq = sv.squaredNorm();
        if (prev.size() == sv.size() && k > 0) st.step_jump = (sv - prev).cwiseAbs().maxCoeff();
        prev = sv;
        const ComplexMatrix lhs = 2.0 * d.matrix() - identity(n);
        st.symmetry_residual = op_norm(lhs - expi_hermitian(seg.exponent_x, 2.0 * st.t) * s0);
        out.push_back(st);
    }
    return out;
}

}  // namespace projpair
