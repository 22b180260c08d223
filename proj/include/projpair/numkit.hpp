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

#ifndef PROJPAIR_NUMKIT_HPP
#define PROJPAIR_NUMKIT_HPP

// Dense complex linear-algebra primitives. Every rank or kernel decision in
// the library goes through one of the relative thresholds declared here.

#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace projpair {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kRankTol = 1e-10;
inline constexpr double kAngleTol = 1e-7;
inline constexpr double kSpecTol = 1e-8;
inline constexpr double kBasisTol = 1e-10;

/// Throws InputError naming `what` if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, std::string_view what);
void require_square(const ComplexMatrix& m, std::string_view what);

enum class SvdVectors { none, thin, full };

struct Svd {
    RealVector values;  // non-increasing
    ComplexMatrix u;    // empty unless requested
    ComplexMatrix v;
};

/// LAPACK divide-and-conquer SVD (zgesdd, falling back to zgesvd).
Svd svd(const ComplexMatrix& m, SvdVectors vectors = SvdVectors::none);

/// Singular values in non-increasing order.
RealVector singular_values(const ComplexMatrix& m);

/// Spectral (operator 2-) norm; 0 for empty matrices.
double op_norm(const ComplexMatrix& m);

/// Smallest singular value of a square matrix; +inf for the empty matrix.
double sigma_min(const ComplexMatrix& m);

ComplexMatrix hermitian_part(const ComplexMatrix& m);
ComplexMatrix identity(Index n);
double hermitian_residual(const ComplexMatrix& m);
double unitarity_residual(const ComplexMatrix& u);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Rotates `v` so that its first entry with modulus above 1e-12 * max|v_i|
/// is real and positive. Returns the unit factor that was applied.
Complex normalize_phase(Eigen::Ref<ComplexVector> v);

/// Number of singular values strictly greater than rel_tol * s_max.
/// rel_tol must lie in (0, 1).
std::size_t numerical_rank(const ComplexMatrix& m, double rel_tol = kRankTol);

struct HermitianEigen {
    RealVector values;       // non-increasing
    ComplexMatrix vectors;   // columns, phase-normalized
};

/// Eigendecomposition of the Hermitian part of `h`. Eigenvalues come out
/// non-increasing; numerically tied eigenvalues are ordered lexicographically
/// on their phase-normalized eigenvectors so reports are reproducible.
HermitianEigen hermitian_eigen(const ComplexMatrix& h);

/// Orthonormal column basis of a subspace of C^ambient_dim.
class SubspaceBasis {
public:
    explicit SubspaceBasis(Index ambient_dim = 0);

    /// Validates ||B*B - I|| <= tol; throws InputError otherwise.
    explicit SubspaceBasis(ComplexMatrix columns, double tol = kBasisTol);

    /// Basis of the column span of `m` at relative rank tolerance.
    static SubspaceBasis span_of(const ComplexMatrix& m, double rel_tol = kRankTol);

    Index ambient_dim() const { return cols_.rows(); }
    Index dim() const { return cols_.cols(); }
    bool empty() const { return cols_.cols() == 0; }
    const ComplexMatrix& columns() const { return cols_; }

    /// Orthogonal projection B B* onto the span.
    ComplexMatrix projector() const;

    /// Orthonormal basis of the orthogonal complement in the ambient space.
    SubspaceBasis complement() const;

    /// Residual ||B*B - I||.
    double orthonormality_residual() const;

private:
    ComplexMatrix cols_;
};

/// Range and kernel of a Hermitian positive semidefinite matrix (typically a
/// projection) as eigenvector bases, with rank decided at rel_tol.
SubspaceBasis range_of_hermitian(const ComplexMatrix& h, double rel_tol = kRankTol);
SubspaceBasis kernel_of_hermitian(const ComplexMatrix& h, double rel_tol = kRankTol);

/// Columns of `a` followed by columns of `b` (same ambient dimension).
ComplexMatrix hstack(const ComplexMatrix& a, const ComplexMatrix& b);

/// exp(i t X) for Hermitian X, via its eigendecomposition.
ComplexMatrix expi_hermitian(const ComplexMatrix& x, double t = 1.0);

/// Hermitian X with spectrum in (-pi, pi] and exp(iX) = U.
/// Throws InputError if ||U*U - I|| > tol and BranchCutError if an
/// eigenvalue of U lies within tol of -1.
ComplexMatrix principal_unitary_log(const ComplexMatrix& u, double tol = kRankTol);

/// Unitary factor of the polar decomposition B = U |B| (scaled Newton
/// iteration). Throws SingularInputError if sigma_min(B) <= sigma_min_floor.
ComplexMatrix polar_unitary(const ComplexMatrix& b, double sigma_min_floor = 1e-12);

/// Cosines of the principal angles between span(A) and span(B), non-increasing.
RealVector principal_cosines(const SubspaceBasis& a, const SubspaceBasis& b);

/// Span of the principal vectors of A whose principal angle with B is below
/// angle_tol, i.e. the numerical intersection of the two subspaces.
SubspaceBasis subspace_intersection(const SubspaceBasis& a, const SubspaceBasis& b,
                                    double angle_tol = kAngleTol);

}  // namespace projpair

#endif  // PROJPAIR_NUMKIT_HPP
