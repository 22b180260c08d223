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

#include "projpair/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "projpair/errors.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace projpair {

namespace {

double norm_1(const ComplexMatrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }
double norm_inf(const ComplexMatrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

// Strictly "greater" in the lexicographic order used for tie-breaking.
bool lex_greater(const ComplexVector& a, const ComplexVector& b) {
    constexpr double eps = 1e-12;
    for (Index i = 0; i < a.size(); ++i) {
        const double dr = a(i).real() - b(i).real();
        if (std::abs(dr) > eps) return dr > 0;
        const double di = a(i).imag() - b(i).imag();
        if (std::abs(di) > eps) return di > 0;
    }
    return false;
}

}  // namespace

void require_finite(const ComplexMatrix& m, std::string_view what) {
    if (!m.allFinite()) {
        throw InputError(std::string(what) + ": non-finite entries");
    }
}

void require_square(const ComplexMatrix& m, std::string_view what) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
        throw InputError(os.str());
    }
}

namespace {

// zgesdd, with zgesvd as a fallback if the divide-and-conquer driver
// reports failure. Column-major storage matches Eigen's default.
Svd lapack_svd(const ComplexMatrix& m, SvdVectors vectors) {
    const auto rows = static_cast<lapack_int>(m.rows());
    const auto cols = static_cast<lapack_int>(m.cols());
    const lapack_int k = std::min(rows, cols);
    char job = 'N';
    Index ucols = 0;
    Index vrows = 0;
    if (vectors == SvdVectors::thin) {
        job = 'S';
        ucols = k;
        vrows = k;
    } else if (vectors == SvdVectors::full) {
        job = 'A';
        ucols = rows;
        vrows = cols;
    }
    Svd out;
    out.values.resize(k);
    ComplexMatrix u(rows, std::max<Index>(ucols, 1));
    ComplexMatrix vt(std::max<Index>(vrows, 1), cols);
    ComplexMatrix a = m;
    const lapack_int ldu = std::max<lapack_int>(rows, 1);
    const lapack_int ldvt = std::max<lapack_int>(static_cast<lapack_int>(vrows), 1);
    lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, job, rows, cols, a.data(), std::max<lapack_int>(rows, 1),
                                     out.values.data(), u.data(), ldu, vt.data(), ldvt);
    if (info != 0) {
        a = m;
        RealVector superb(std::max<lapack_int>(k - 1, 1));
        info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, job, job, rows, cols, a.data(), std::max<lapack_int>(rows, 1),
                              out.values.data(), u.data(), ldu, vt.data(), ldvt, superb.data());
    }
    if (info != 0) {
        std::ostringstream os;
        os << "svd: LAPACK driver failed (info " << info << ") on a " << rows << "x" << cols << " matrix";
        throw NumericalError(os.str());
    }
    if (vectors != SvdVectors::none) {
        out.u = u.leftCols(ucols);
        out.v = vt.topRows(vrows).adjoint();
    }
    return out;
}

}  // namespace

Svd svd(const ComplexMatrix& m, SvdVectors vectors) {
    if (m.size() == 0) {
        Svd out;
        if (vectors == SvdVectors::full) {
            out.u = ComplexMatrix::Identity(m.rows(), m.rows());
            out.v = ComplexMatrix::Identity(m.cols(), m.cols());
        } else if (vectors == SvdVectors::thin) {
            out.u = ComplexMatrix(m.rows(), 0);
            out.v = ComplexMatrix(m.cols(), 0);
        }
        return out;
    }
    require_finite(m, "svd");
    return lapack_svd(m, vectors);
}

RealVector singular_values(const ComplexMatrix& m) { return svd(m).values; }

double op_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return singular_values(m)(0);
}

double sigma_min(const ComplexMatrix& m) {
    if (m.size() == 0) return std::numeric_limits<double>::infinity();
    const RealVector s = singular_values(m);
    return s(s.size() - 1);
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

double hermitian_residual(const ComplexMatrix& m) { return op_norm(m - m.adjoint()); }

double unitarity_residual(const ComplexMatrix& u) {
    return op_norm(u.adjoint() * u - identity(u.cols()));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

Complex normalize_phase(Eigen::Ref<ComplexVector> v) {
    const Complex unit(1.0, 0.0);
    if (v.size() == 0) return unit;
    const double scale = v.cwiseAbs().maxCoeff();
    if (scale == 0.0) return unit;
    for (Index i = 0; i < v.size(); ++i) {
        const double r = std::abs(v(i));
        if (r > 1e-12 * scale) {
            const Complex factor = std::conj(v(i)) / r;
            v *= factor;
            v(i) = Complex(r, 0.0);
            return factor;
        }
    }
    return unit;
}

std::size_t numerical_rank(const ComplexMatrix& m, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw InputError("numerical_rank: rel_tol must lie in (0, 1)");
    }
    require_finite(m, "numerical_rank");
    if (m.size() == 0) return 0;
    const RealVector s = singular_values(m);
    const double cut = rel_tol * s(0);
    return static_cast<std::size_t>((s.array() > cut).count());
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
    require_square(h, "hermitian_eigen");
    const Index n = h.rows();
    if (n == 0) return {RealVector(0), ComplexMatrix(0, 0)};

    // The tridiagonal QR iteration occasionally stalls on low-rank matrices
    // with large clusters; a scalar shift leaves the eigenvectors unchanged
    // and usually gets it through.
    const ComplexMatrix hh = hermitian_part(h);
    const double scale = std::max(1.0, hh.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es;
    bool ok = false;
    double applied = 0.0;
    for (double shift : {0.0, 0.5, -0.37, 1.3}) {
        applied = shift * scale;
        es.compute(shift == 0.0 ? hh : ComplexMatrix(hh + applied * ComplexMatrix::Identity(n, n)));
        if (es.info() == Eigen::Success) {
            ok = true;
            break;
        }
    }
    if (!ok) throw NumericalError("hermitian_eigen: eigensolver did not converge");
    RealVector vals = es.eigenvalues().array() - applied;
    ComplexMatrix vecs = es.eigenvectors();
    for (Index j = 0; j < n; ++j) normalize_phase(vecs.col(j));

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return vals(a) > vals(b); });

    // Lexicographic tie-breaking inside runs of numerically equal eigenvalues.
    const double tie = 1e-13 * std::max(1.0, vals.cwiseAbs().maxCoeff());
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size() && vals(order[end - 1]) - vals(order[end]) <= tie) ++end;
        if (end - start > 1) {
            std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                             order.begin() + static_cast<std::ptrdiff_t>(end), [&](Index a, Index b) {
                                 return lex_greater(vecs.col(a), vecs.col(b));
                             });
        }
        start = end;
    }

    HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
    for (Index j = 0; j < n; ++j) {
        out.values(j) = vals(order[static_cast<std::size_t>(j)]);
        out.vectors.col(j) = vecs.col(order[static_cast<std::size_t>(j)]);
    }
    return out;
}

SubspaceBasis::SubspaceBasis(Index ambient_dim) : cols_(ambient_dim, 0) {}

SubspaceBasis::SubspaceBasis(ComplexMatrix columns, double tol) : cols_(std::move(columns)) {
    require_finite(cols_, "SubspaceBasis");
    const double res = orthonormality_residual();
    if (res > tol) {
        std::ostringstream os;
        os << "SubspaceBasis: columns are not orthonormal (residual " << res << " > " << tol << ")";
        throw InputError(os.str());
    }
}

SubspaceBasis SubspaceBasis::span_of(const ComplexMatrix& m, double rel_tol) {
    require_finite(m, "span_of");
    if (m.cols() == 0) return SubspaceBasis(m.rows());
    const std::size_t r = numerical_rank(m, rel_tol);
    if (r == 0) return SubspaceBasis(m.rows());
    ComplexMatrix u = svd(m, SvdVectors::thin).u.leftCols(static_cast<Index>(r));
    for (Index j = 0; j < u.cols(); ++j) normalize_phase(u.col(j));
    return SubspaceBasis(std::move(u));
}

ComplexMatrix SubspaceBasis::projector() const { return hermitian_part(cols_ * cols_.adjoint()); }

SubspaceBasis SubspaceBasis::complement() const {
    const Index n = ambient_dim();
    const Index k = dim();
    if (k == n) return SubspaceBasis(n);
    const HermitianEigen eig = hermitian_eigen(identity(n) - projector());
    return SubspaceBasis(ComplexMatrix(eig.vectors.leftCols(n - k)));
}

double SubspaceBasis::orthonormality_residual() const {
    if (cols_.cols() == 0) return 0.0;
    return op_norm(cols_.adjoint() * cols_ - identity(cols_.cols()));
}

SubspaceBasis range_of_hermitian(const ComplexMatrix& h, double rel_tol) {
    const std::size_t r = numerical_rank(h, rel_tol);
    if (r == 0) return SubspaceBasis(h.rows());
    const HermitianEigen eig = hermitian_eigen(h);
    return SubspaceBasis(ComplexMatrix(eig.vectors.leftCols(static_cast<Index>(r))));
}

SubspaceBasis kernel_of_hermitian(const ComplexMatrix& h, double rel_tol) {
    const Index n = h.rows();
    const Index r = static_cast<Index>(numerical_rank(h, rel_tol));
    if (r == n) return SubspaceBasis(n);
    const HermitianEigen eig = hermitian_eigen(h);
    return SubspaceBasis(ComplexMatrix(eig.vectors.rightCols(n - r)));
}

ComplexMatrix hstack(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) throw InputError("hstack: row count mismatch");
    ComplexMatrix out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

ComplexMatrix expi_hermitian(const ComplexMatrix& x, double t) {
    require_square(x, "expi_hermitian");
    if (x.rows() == 0) return ComplexMatrix(0, 0);
    const HermitianEigen es = hermitian_eigen(x);
    const ComplexVector phases = (Complex(0.0, t) * es.values.cast<Complex>()).array().exp().matrix();
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix principal_unitary_log(const ComplexMatrix& u, double tol) {
    require_square(u, "principal_unitary_log");
    require_finite(u, "principal_unitary_log");
    const Index n = u.rows();
    if (n == 0) return ComplexMatrix(0, 0);
    const double ures = unitarity_residual(u);
    if (ures > tol) {
        std::ostringstream os;
        os << "principal_unitary_log: input not unitary (||U*U - I|| = " << ures << ")";
        throw InputError(os.str());
    }
    // A unitary is normal, so its complex Schur form is diagonal up to roundoff.
    Eigen::ComplexSchur<ComplexMatrix> schur(u);
    if (schur.info() != Eigen::Success) {
        throw NumericalError("principal_unitary_log: Schur decomposition did not converge");
    }
    const ComplexMatrix& t = schur.matrixT();
    const ComplexMatrix& z = schur.matrixU();
    RealVector angles(n);
    for (Index i = 0; i < n; ++i) {
        const Complex ev = t(i, i);
        if (std::abs(ev + 1.0) <= tol) {
            std::ostringstream os;
            os << "principal_unitary_log: eigenvalue " << ev.real() << (ev.imag() < 0 ? "" : "+")
               << ev.imag() << "i lies on the branch cut at -1";
            throw BranchCutError(os.str());
        }
        angles(i) = std::arg(ev);
    }
    return hermitian_part(z * angles.cast<Complex>().asDiagonal() * z.adjoint());
}

ComplexMatrix polar_unitary(const ComplexMatrix& b, double sigma_min_floor) {
    require_square(b, "polar_unitary");
    require_finite(b, "polar_unitary");
    const Index n = b.rows();
    if (n == 0) return ComplexMatrix(0, 0);
    const double smin = sigma_min(b);
    if (smin <= sigma_min_floor) {
        std::ostringstream os;
        os << "polar_unitary: sigma_min = " << smin << " <= floor " << sigma_min_floor;
        throw SingularInputError(os.str(), smin);
    }

    // Newton iteration X <- (zeta X + X^{-*} / zeta) / 2 with (1,inf)-norm
    // scaling until close to convergence.
    ComplexMatrix x = b;
    bool scaled = true;
    bool polishing = false;
    for (int it = 0; it < 100; ++it) {
        const ComplexMatrix xinv = x.partialPivLu().inverse();
        double zeta = 1.0;
        if (scaled) {
            zeta = std::pow((norm_1(xinv) * norm_inf(xinv)) / (norm_1(x) * norm_inf(x)), 0.25);
        }
        ComplexMatrix next = 0.5 * (zeta * x + xinv.adjoint() / zeta);
        const double delta = (next - x).norm() / next.norm();
        x = std::move(next);
        if (polishing) break;
        if (delta < 1e-2) scaled = false;
        if (delta < 1e-10) polishing = true;
    }
    return x;
}

RealVector principal_cosines(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw InputError("principal_cosines: ambient dimension mismatch");
    }
    if (a.empty() || b.empty()) return RealVector(0);
    RealVector s = singular_values(a.columns().adjoint() * b.columns());
    return s.cwiseMin(1.0);
}

SubspaceBasis subspace_intersection(const SubspaceBasis& a, const SubspaceBasis& b, double angle_tol) {
    if (a.ambient_dim() != b.ambient_dim()) {
        std::ostringstream os;
        os << "subspace_intersection: ambient dimension mismatch (" << a.ambient_dim() << " vs "
           << b.ambient_dim() << ")";
        throw InputError(os.str());
    }
    if (a.empty() || b.empty()) return SubspaceBasis(a.ambient_dim());

    // Sines of the principal angles are the singular values of (1 - BB*)A;
    // they resolve small angles far better than cosines near 1.
    const ComplexMatrix& ac = a.columns();
    const ComplexMatrix& bc = b.columns();
    const ComplexMatrix resid = ac - bc * (bc.adjoint() * ac);
    const Svd dec = svd(resid, SvdVectors::thin);
    const double cut = std::sin(angle_tol);
    const RealVector& s = dec.values;
    const Index k = s.size();
    const Index count = static_cast<Index>((s.array() < cut).count());
    if (count == 0) return SubspaceBasis(a.ambient_dim());

    // Smallest sines sit at the end; emit them most-aligned first.
    ComplexMatrix cols(ac.rows(), count);
    for (Index j = 0; j < count; ++j) {
        cols.col(j) = ac * dec.v.col(k - 1 - j);
        normalize_phase(cols.col(j));
    }
    return SubspaceBasis(std::move(cols));
}

}  // namespace projpair
