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

#include "projpair/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "projpair/errors.hpp"

namespace projpair {

ComplexMatrix haar_unitary(Index n, std::mt19937_64& rng) {
    if (n == 0) return ComplexMatrix(0, 0);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix z(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) z(i, j) = Complex(normal(rng), normal(rng));
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix& r = qr.matrixQR();
    for (Index j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

ComplexMatrix haar_unitary(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return haar_unitary(n, rng);
}

ComplexMatrix unitary_dft(Index n) {
    ComplexMatrix f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Index j = 0; j < n; ++j) {
        for (Index k = 0; k < n; ++k) {
            // Reduce j*k mod n first to keep the phase argument small.
            const auto jk = static_cast<double>((j * k) % n);
            f(j, k) = std::polar(scale, -2.0 * std::numbers::pi * jk / static_cast<double>(n));
        }
    }
    return f;
}

ProjectionPair gen_ek(const ComplexMatrix& k) {
    require_finite(k, "gen_ek");
    const Index l = k.rows();
    const Index s = k.cols();
    const Index n = l + s;
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e.topLeftCorner(l, l).setIdentity();
    e.topRightCorner(l, s) = k;
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    p.topLeftCorner(l, l).setIdentity();
    return ProjectionPair(Projection::validate(p), projection_from_idempotent(e));
}

namespace {

std::vector<Index> checked_set(const std::vector<Index>& set, Index n, const char* name) {
    std::set<Index> uniq;
    for (Index i : set) {
        if (i < 0 || i >= n) {
            std::ostringstream os;
            os << "gen_fourier: index " << i << " in " << name << " outside [0, " << n << ")";
            throw InputError(os.str());
        }
        uniq.insert(i);
    }
    return {uniq.begin(), uniq.end()};
}

}  // namespace

ProjectionPair gen_fourier(Index n, const std::vector<Index>& i_set, const std::vector<Index>& j_set) {
    if (n <= 0) throw InputError("gen_fourier: N must be positive");
    const std::vector<Index> is = checked_set(i_set, n, "I");
    const std::vector<Index> js = checked_set(j_set, n, "J");

    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Index i : is) p(i, i) = 1.0;

    const ComplexMatrix f = unitary_dft(n);
    ComplexMatrix rows(static_cast<Index>(js.size()), n);
    for (std::size_t r = 0; r < js.size(); ++r) rows.row(static_cast<Index>(r)) = f.row(js[r]);
    const ComplexMatrix q = rows.adjoint() * rows;
    return ProjectionPair(Projection::validate(p), Projection::validate(q));
}

ProjectionPair gen_hardy_monomial(Index n_neg, Index n_pos, Index a, Index c) {
    if (n_neg < 0 || n_pos < 0 || a < 0 || c < 0) {
        throw InputError("gen_hardy_monomial: parameters must be non-negative");
    }
    if (a > n_pos || c > n_pos) {
        std::ostringstream os;
        os << "gen_hardy_monomial: exponent (a=" << a << ", c=" << c << ") exceeds truncation n_pos=" << n_pos;
        throw InputError(os.str());
    }
    const Index n = n_neg + n_pos + 1;
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    ComplexMatrix q = ComplexMatrix::Zero(n, n);
    for (Index idx = 0; idx < n; ++idx) {
        const Index mode = idx - n_neg;
        if (mode < a) p(idx, idx) = 1.0;
        if (mode >= c) q(idx, idx) = 1.0;
    }
    return ProjectionPair(Projection::validate(p), Projection::validate(q));
}

GeneratedAngles gen_angles(const CornerDims& dims, const std::vector<AngleSpec>& angles, std::uint64_t seed) {
    if (dims.d11 < 0 || dims.d00 < 0 || dims.d10 < 0 || dims.d01 < 0) {
        throw InputError("gen_angles: corner dimensions must be non-negative");
    }
    std::vector<double> gammas;
    for (const AngleSpec& a : angles) {
        if (!(a.gamma > 0.0 && a.gamma < std::numbers::pi / 2)) {
            std::ostringstream os;
            os << "gen_angles: angle " << a.gamma << " outside (0, pi/2)";
            throw InputError(os.str());
        }
        if (a.multiplicity < 1) throw InputError("gen_angles: multiplicity must be positive");
        for (Index m = 0; m < a.multiplicity; ++m) gammas.push_back(a.gamma);
    }
    std::sort(gammas.begin(), gammas.end());

    const Index l = static_cast<Index>(gammas.size());
    const Index corner = dims.d11 + dims.d00 + dims.d10 + dims.d01;
    const Index n = corner + 2 * l;

    // Model coordinates: [h11 | h00 | h10 | h01 | L (P-part) | L].
    ComplexMatrix pm = ComplexMatrix::Zero(n, n);
    ComplexMatrix qm = ComplexMatrix::Zero(n, n);
    Index off = 0;
    for (Index i = 0; i < dims.d11; ++i, ++off) pm(off, off) = qm(off, off) = 1.0;
    off += dims.d00;
    for (Index i = 0; i < dims.d10; ++i, ++off) pm(off, off) = 1.0;
    for (Index i = 0; i < dims.d01; ++i, ++off) qm(off, off) = 1.0;
    for (Index k = 0; k < l; ++k) {
        const double c = std::cos(gammas[static_cast<std::size_t>(k)]);
        const double s = std::sin(gammas[static_cast<std::size_t>(k)]);
        const Index i = corner + k;
        const Index j = corner + l + k;
        pm(i, i) = 1.0;
        qm(i, i) = c * c;
        qm(i, j) = qm(j, i) = c * s;
        qm(j, j) = s * s;
    }

    const ComplexMatrix u = haar_unitary(n, seed);
    ProjectionPair pair(Projection::validate(u * pm * u.adjoint(), 1e-9),
                        Projection::validate(u * qm * u.adjoint(), 1e-9));

    auto cols = [&](Index start, Index count) { return SubspaceBasis(ComplexMatrix(u.middleCols(start, count))); };
    HalmosDecomposition truth{cols(0, dims.d11),
                              cols(dims.d11, dims.d00),
                              cols(dims.d11 + dims.d00, dims.d10),
                              cols(dims.d11 + dims.d00 + dims.d10, dims.d01),
                              cols(corner, 2 * l),
                              {},
                              RealVector(l),
                              u.middleCols(corner, 2 * l),
                              ComplexMatrix(0, 0),
                              ComplexMatrix(0, 0)};
    for (Index k = 0; k < l; ++k) truth.gamma_values(k) = gammas[static_cast<std::size_t>(k)];
    truth.generic_p = truth.model_p();
    truth.generic_q = truth.model_q();
    for (std::size_t k = 0; k < gammas.size();) {
        std::size_t j = k;
        while (j < gammas.size() && gammas[j] == gammas[k]) ++j;
        truth.angles.gammas.push_back({gammas[k], j - k});
        k = j;
    }
    return {std::move(pair), std::move(truth)};
}

void validate_spec(const GeneratorSpec& spec) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, EkSpec>) {
                require_finite(s.k, "ek: K");
            } else if constexpr (std::is_same_v<T, FourierSpec>) {
                if (s.n <= 0) throw InputError("fourier: N must be positive");
                checked_set(s.i_set, s.n, "I");
                checked_set(s.j_set, s.n, "J");
            } else if constexpr (std::is_same_v<T, HardySpec>) {
                if (s.n_neg < 0 || s.n_pos < 0 || s.a < 0 || s.c < 0 || s.a > s.n_pos || s.c > s.n_pos) {
                    throw InputError("hardy: need 0 <= a, c <= n_pos and n_neg >= 0");
                }
            } else {
                for (const AngleSpec& a : s.angles) {
                    if (!(a.gamma > 0.0 && a.gamma < std::numbers::pi / 2) || a.multiplicity < 1) {
                        throw InputError("angles: each angle must lie in (0, pi/2) with positive multiplicity");
                    }
                }
                if (s.dims.d11 < 0 || s.dims.d00 < 0 || s.dims.d10 < 0 || s.dims.d01 < 0) {
                    throw InputError("angles: corner dimensions must be non-negative");
                }
            }
        },
        spec);
}

ProjectionPair generate(const GeneratorSpec& spec) {
    validate_spec(spec);
    return std::visit(
        [](const auto& s) -> ProjectionPair {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, EkSpec>) {
                return gen_ek(s.k);
            } else if constexpr (std::is_same_v<T, FourierSpec>) {
                return gen_fourier(s.n, s.i_set, s.j_set);
            } else if constexpr (std::is_same_v<T, HardySpec>) {
                return gen_hardy_monomial(s.n_neg, s.n_pos, s.a, s.c);
            } else {
                return gen_angles(s.dims, s.angles, s.seed).pair;
            }
        },
        spec);
}

}  // namespace projpair
