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

#ifndef PROJPAIR_GEODESIC_HPP
#define PROJPAIR_GEODESIC_HPP

#include <vector>

#include "projpair/numkit.hpp"
#include "projpair/projcore.hpp"

namespace projpair {

/// delta(t) = exp(itX) Q exp(-itX) with X Hermitian and Q-codiagonal.
struct GeodesicSegment {
    Projection base_q;
    ComplexMatrix exponent_x;
    double norm_x = 0.0;
};

/// ||X S + S X|| with S = 2Q - 1.
double codiagonality_residual(const ComplexMatrix& x, const Projection& q);

/// X = -(i/2) log((2 q1 - 1)(2 q0 - 1)) with the principal logarithm.
/// Throws NoUniqueGeodesicError if the symmetry product has an eigenvalue
/// within branch_tol of -1.
GeodesicSegment geodesic_between(const Projection& q0, const Projection& q1, double branch_tol = 1e-8);

/// Returns base_q unchanged at t == 0.
Projection geodesic_eval(const GeodesicSegment& seg, double t);

/// R(P) & N(Q) = N(P) & R(Q) = {0} at angle_tol.
bool uniqueness_condition(const ProjectionPair& pair, double angle_tol = kAngleTol);

struct ChartCoordinates {
    ComplexMatrix x_p;         // P0-codiagonal
    ComplexMatrix y_q;         // Q0-codiagonal
    double comm_norm_y = 0.0;  // ||[Y, P0]||
};

/// X moves P0 to P; Y moves Q0 to exp(-iX) Q exp(iX). Throws OutOfChartError
/// unless both distances are below 1.
ChartCoordinates pair_chart(const ProjectionPair& base, const ProjectionPair& pq);

/// (exp(iX) P0 exp(-iX), exp(iX) exp(iY) Q0 exp(-iY) exp(-iX)).
ProjectionPair chart_inverse(const ProjectionPair& base, const ComplexMatrix& x, const ComplexMatrix& y);

struct ProbeStep {
    double t = 0.0;
    Index sv_count_above_tau = 0;
    double max_sv = 0.0;
    double frobenius_sq = 0.0;
    double step_jump = 0.0;       // max_i |s_i(t) - s_i(t_prev)|
    double symmetry_residual = 0.0;  // ||(2 delta(t) - 1) - exp(2itX)(2 q0 - 1)||
};

/// Singular-value profile of P0 delta(t) on t = k / steps, k = 0..steps.
std::vector<ProbeStep> geodesic_in_class_probe(const Projection& p0, const Projection& q0, const Projection& q1,
                                               Index steps, double tau_sv = 1e-6);

}  // namespace projpair

#endif  // PROJPAIR_GEODESIC_HPP
