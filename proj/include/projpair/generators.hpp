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

#ifndef PROJPAIR_GENERATORS_HPP
#define PROJPAIR_GENERATORS_HPP

// Factories for the example pairs: the idempotent family E_K, the discrete
// time-frequency pair on Z_N, truncated Hardy-space pairs with monomial
// symbols, and synthetic pairs with a prescribed Halmos structure.

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "projpair/halmos.hpp"
#include "projpair/numkit.hpp"
#include "projpair/projcore.hpp"

namespace projpair {

/// Haar-distributed unitary (QR of a complex Gaussian matrix, phases fixed).
ComplexMatrix haar_unitary(Index n, std::mt19937_64& rng);
ComplexMatrix haar_unitary(Index n, std::uint64_t seed);

/// Unitary DFT, F(j, k) = exp(-2 pi i j k / n) / sqrt(n).
ComplexMatrix unitary_dft(Index n);

/// P = projection onto the first block of C^l x C^s, Q = projection onto
/// N(E_K) with E_K = [[1, K], [0, 0]].
ProjectionPair gen_ek(const ComplexMatrix& k);

/// P = multiplication by the indicator of `i_set`, Q = F* diag(chi_J) F.
/// Duplicate indices are ignored.
ProjectionPair gen_fourier(Index n, const std::vector<Index>& i_set, const std::vector<Index>& j_set);

/// Fourier modes z^{-n_neg} .. z^{n_pos}; Q projects onto z^c H+ and
/// P onto the complement of z^a H+, both truncated.
ProjectionPair gen_hardy_monomial(Index n_neg, Index n_pos, Index a, Index c);

struct CornerDims {
    Index d11 = 0;
    Index d00 = 0;
    Index d10 = 0;
    Index d01 = 0;
};

struct AngleSpec {
    double gamma = 0.0;
    Index multiplicity = 1;
};

struct GeneratedAngles {
    ProjectionPair pair;
    HalmosDecomposition truth;
};

/// Halmos model with the given corner dimensions and angles, conjugated by a
/// seeded Haar unitary. `truth` carries the exact bases used.
GeneratedAngles gen_angles(const CornerDims& dims, const std::vector<AngleSpec>& angles,
                           std::uint64_t seed);

struct EkSpec {
    ComplexMatrix k;
};

struct FourierSpec {
    Index n = 0;
    std::vector<Index> i_set;
    std::vector<Index> j_set;
};

struct HardySpec {
    Index n_neg = 0;
    Index n_pos = 0;
    Index a = 0;
    Index c = 0;
};

struct AnglesSpec {
    CornerDims dims;
    std::vector<AngleSpec> angles;
    std::uint64_t seed = 0;
};

using GeneratorSpec = std::variant<EkSpec, FourierSpec, HardySpec, AnglesSpec>;

/// Throws InputError if the parameters are out of range for their kind.
void validate_spec(const GeneratorSpec& spec);

ProjectionPair generate(const GeneratorSpec& spec);

}  // namespace projpair

#endif  // PROJPAIR_GENERATORS_HPP
