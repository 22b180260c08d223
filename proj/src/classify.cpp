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

#include "projpair/classify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "projpair/errors.hpp"

namespace projpair {

const char* to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::ek: return "ek";
        case FamilyKind::fourier: return "fourier";
        case FamilyKind::hardy: return "hardy";
        case FamilyKind::angles: return "angles";
        case FamilyKind::custom: return "custom";
    }
    return "custom";
}

const char* to_string(PairClass::Verdict v) {
    switch (v) {
        case PairClass::Verdict::C0: return "C0";
        case PairClass::Verdict::C1: return "C1";
        case PairClass::Verdict::CInfinity: return "CInfinity";
        case PairClass::Verdict::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

TruncationFamily fourier_sqrt_family(std::vector<Index> sizes) {
    TruncationFamily f;
    f.kind = FamilyKind::fourier;
    f.sizes = std::move(sizes);
    f.description = "fourier: N = n, I = J = {0, ..., floor(sqrt(n)) - 1}";
    f.producer = [](Index n) {
        const auto k = static_cast<Index>(std::floor(std::sqrt(static_cast<double>(n))));
        std::vector<Index> set(static_cast<std::size_t>(k));
        for (Index i = 0; i < k; ++i) set[static_cast<std::size_t>(i)] = i;
        return gen_fourier(n, set, set);
    };
    return f;
}

TruncationFamily hardy_family(Index a, Index c, std::vector<Index> sizes) {
    TruncationFamily f;
    f.kind = FamilyKind::hardy;
    f.sizes = std::move(sizes);
    std::ostringstream os;
    os << "hardy: modes -n..n, a = " << a << ", c = " << c;
    f.description = os.str();
    f.producer = [a, c](Index n) { return gen_hardy_monomial(n, n, a, c); };
    return f;
}

TruncationFamily ek_geometric_family(std::vector<Index> sizes) {
    TruncationFamily f;
    f.kind = FamilyKind::ek;
    f.sizes = std::move(sizes);
    f.description = "ek: K_n = diag(2^-k), k = 0..n-1";
    f.producer = [](Index n) {
        ComplexMatrix k = ComplexMatrix::Zero(n, n);
        for (Index i = 0; i < n; ++i) k(i, i) = std::ldexp(1.0, -static_cast<int>(i));
        return gen_ek(k);
    };
    return f;
}

TruncationFamily angles_family(CornerDims base, std::vector<AngleSpec> angles, std::uint64_t seed,
                               std::vector<Index> sizes) {
    TruncationFamily f;
    f.kind = FamilyKind::angles;
    f.sizes = std::move(sizes);
    f.description = "angles: fixed corners and angles, dim H00 = n";
    f.producer = [base, angles = std::move(angles), seed](Index n) {
        CornerDims d = base;
        d.d00 = n;
        return gen_angles(d, angles, seed).pair;
    };
    return f;
}

TruncationFamily custom_family(std::vector<ProjectionPair> pairs) {
    TruncationFamily f;
    f.kind = FamilyKind::custom;
    for (std::size_t i = 0; i < pairs.size(); ++i) f.sizes.push_back(static_cast<Index>(i + 1));
    f.description = "custom: explicit pair list";
    f.producer = [pairs = std::move(pairs)](Index n) {
        if (n < 1 || n > static_cast<Index>(pairs.size())) throw InputError("custom family: size out of range");
        return pairs[static_cast<std::size_t>(n - 1)];
    };
    return f;
}

SizeDiagnostics size_diagnostics(const ProjectionPair& pair, Index size, const ClassifyParams& params) {
    SizeDiagnostics d;
    d.size = size;
    d.dim = pair.dim();
    const HalmosDecomposition dec = halmos_decompose(pair, params.angle_tol, params.rank_tol, params.spec_tol);
    d.h11 = dec.h11.dim();
    d.h00 = dec.h00.dim();
    d.h10 = dec.h10.dim();
    d.h01 = dec.h01.dim();
    d.rank_p = static_cast<Index>(pair.p().rank(params.rank_tol));
    d.nullity_p = d.dim - d.rank_p;
    d.rank_q = static_cast<Index>(pair.q().rank(params.rank_tol));
    d.nullity_q = d.dim - d.rank_q;

    const RealVector sv = singular_values(pair.p().matrix() * pair.q().matrix());
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > params.tau_sv) ++d.rank_pq_above_tau;
        if (sv(i) > 1e-14) d.sv_tail.push_back(sv(i));
    }

    const BlockForm bf = block_decompose(pair, params.rank_tol);
    const HermitianEigen eb = hermitian_eigen(bf.b);
    d.dim_ker_b = static_cast<Index>((eb.values.array() <= params.spec_tol).count());
    d.index_estimate = static_cast<long>(d.rank_q) - static_cast<long>(d.nullity_p);
    return d;
}

std::string PairClass::label() const {
    std::ostringstream os;
    auto param = [&](const char* name, const std::optional<Index>& v) {
        os << name << "=";
        if (v) {
            os << *v;
        } else {
            os << "unbounded";
        }
    };
    switch (verdict) {
        case Verdict::C0:
            os << "C0(";
            param("k", k);
            os << ", ";
            param("l", l);
            os << ", ";
            param("m", m);
            os << ", ";
            param("n", n);
            os << ")";
            break;
        case Verdict::C1: os << "C1(index=" << index << ")"; break;
        case Verdict::CInfinity: os << "CInfinity"; break;
        case Verdict::Indeterminate: os << "Indeterminate(" << reason << ")"; break;
    }
    return os.str();
}

Trend trend(const std::vector<Index>& values, std::size_t window) {
    if (window == 0 || values.size() < window) return Trend::other;
    const std::size_t start = values.size() - window;
    bool constant = true;
    bool increasing = true;
    for (std::size_t i = start + 1; i < values.size(); ++i) {
        if (values[i] != values[start]) constant = false;
        if (values[i] <= values[i - 1]) increasing = false;
    }
    if (constant) return Trend::bounded;
    if (increasing && window >= 2) return Trend::growing;
    return Trend::other;
}

namespace {

void check_family(const TruncationFamily& family, std::size_t window) {
    if (!family.producer) throw InputError("family has no producer");
    if (window == 0) throw InputError("window must be positive");
    if (family.sizes.size() < window) {
        std::ostringstream os;
        os << "family has " << family.sizes.size() << " sizes, window needs " << window;
        throw InputError(os.str());
    }
    for (std::size_t i = 1; i < family.sizes.size(); ++i) {
        if (family.sizes[i] <= family.sizes[i - 1]) throw InputError("family sizes must be strictly increasing");
    }
}

ProjectionPair produce(const TruncationFamily& family, Index n) {
    try {
        return family.producer(n);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        std::ostringstream os;
        os << "family producer failed at size " << n << ": " << e.what();
        throw InputError(os.str());
    }
}

ClassDiagnostics sweep(const TruncationFamily& family, const ClassifyParams& params) {
    ClassDiagnostics out(family.sizes.size());
    if (params.parallel && family.sizes.size() > 1) {
        std::vector<std::future<SizeDiagnostics>> jobs;
        for (Index n : family.sizes) {
            jobs.push_back(std::async(std::launch::async, [&family, &params, n] {
                return size_diagnostics(produce(family, n), n, params);
            }));
        }
        // Collect every job before rethrowing so no task outlives the call.
        std::exception_ptr first;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            try {
                out[i] = jobs[i].get();
            } catch (...) {
                if (!first) first = std::current_exception();
            }
        }
        if (first) std::rethrow_exception(first);
    } else {
        for (std::size_t i = 0; i < family.sizes.size(); ++i) {
            out[i] = size_diagnostics(produce(family, family.sizes[i]), family.sizes[i], params);
        }
    }
    return out;
}

template <typename F>
std::vector<Index> column(const ClassDiagnostics& diag, F field) {
    std::vector<Index> v;
    v.reserve(diag.size());
    for (const auto& d : diag) v.push_back(field(d));
    return v;
}

}  // namespace

IndexEstimate fredholm_index_estimate(const ClassDiagnostics& diag, std::size_t window) {
    if (window == 0 || diag.size() < window) throw InputError("fredholm_index_estimate: not enough sizes for window");
    IndexEstimate est;
    for (const auto& d : diag) est.per_size.push_back(d.index_estimate);
    est.index = est.per_size.back();
    est.stabilized = std::all_of(est.per_size.end() - static_cast<std::ptrdiff_t>(window), est.per_size.end(),
                                 [&](long v) { return v == est.index; });
    return est;
}

IndexEstimate fredholm_index_estimate(const TruncationFamily& family, std::size_t window) {
    check_family(family, window);
    IndexEstimate est;
    for (Index n : family.sizes) {
        const ProjectionPair pair = produce(family, n);
        const auto rank_q = static_cast<long>(pair.q().rank());
        const auto nullity_p = static_cast<long>(pair.p().nullity());
        est.per_size.push_back(rank_q - nullity_p);
    }
    est.index = est.per_size.back();
    est.stabilized = std::all_of(est.per_size.end() - static_cast<std::ptrdiff_t>(window), est.per_size.end(),
                                 [&](long v) { return v == est.index; });
    return est;
}

long halmos_index(const HalmosDecomposition& dec) {
    return static_cast<long>(dec.h01.dim()) - static_cast<long>(dec.h10.dim());
}

PairClass classify_family(const TruncationFamily& family, const ClassifyParams& params) {
    check_family(family, params.window);
    PairClass out;
    out.diagnostics = sweep(family, params);
    const ClassDiagnostics& diag = out.diagnostics;
    const std::size_t w = params.window;

    // Compactness gate: the count of product singular values above tau_sv
    // may not increase over the window.
    const auto counts = column(diag, [](const SizeDiagnostics& d) { return d.rank_pq_above_tau; });
    for (std::size_t i = counts.size() - w + 1; i < counts.size(); ++i) {
        if (counts[i] > counts[i - 1]) {
            out.reason = "product not compact-like";
            return out;
        }
    }

    const Trend t_rank_p = trend(column(diag, [](const SizeDiagnostics& d) { return d.rank_p; }), w);
    const Trend t_null_p = trend(column(diag, [](const SizeDiagnostics& d) { return d.nullity_p; }), w);
    const Trend t_rank_q = trend(column(diag, [](const SizeDiagnostics& d) { return d.rank_q; }), w);
    const Trend t_null_q = trend(column(diag, [](const SizeDiagnostics& d) { return d.nullity_q; }), w);

    if (t_rank_p == Trend::bounded || t_rank_q == Trend::bounded) {
        const SizeDiagnostics& last = diag.back();
        out.verdict = PairClass::Verdict::C0;
        if (t_rank_p == Trend::bounded) out.k = last.rank_p;
        if (t_null_p == Trend::bounded) out.l = last.nullity_p;
        if (t_rank_q == Trend::bounded) out.m = last.rank_q;
        if (t_null_q == Trend::bounded) out.n = last.nullity_q;
        return out;
    }
    if (t_rank_p != Trend::growing || t_rank_q != Trend::growing) {
        out.reason = "rank trend neither bounded nor growing";
        return out;
    }

    const Trend t_h00 = trend(column(diag, [](const SizeDiagnostics& d) { return d.h00; }), w);
    if (t_h00 == Trend::bounded) {
        const IndexEstimate est = fredholm_index_estimate(diag, w);
        if (!est.stabilized) {
            out.reason = "index did not stabilize";
            return out;
        }
        out.verdict = PairClass::Verdict::C1;
        out.index = est.index;
        return out;
    }
    if (t_h00 == Trend::growing) {
        out.verdict = PairClass::Verdict::CInfinity;
        return out;
    }
    out.reason = "dim H00 trend neither bounded nor growing";
    return out;
}

InvarianceResult class_action_invariance(const TruncationFamily& family,
                                         const std::function<ComplexMatrix(Index, Index)>& conjugator,
                                         const ClassifyParams& params) {
    TruncationFamily moved = family;
    moved.description = family.description + " (conjugated)";
    moved.producer = [&family, &conjugator](Index n) {
        const ProjectionPair pair = produce(family, n);
        const ComplexMatrix w = conjugator(n, pair.dim());
        return ProjectionPair(pair.p(), pair.q().conjugated(w, 1e-9));
    };

    InvarianceResult r;
    r.before = classify_family(family, params);
    r.after = classify_family(moved, params);
    r.invariant = r.before.verdict == r.after.verdict && r.before.k == r.after.k && r.before.l == r.after.l &&
                  r.before.m == r.after.m && r.before.n == r.after.n && r.before.index == r.after.index;
    return r;
}

Projection qd_projection(const BlockForm& bf, double spec_tol) {
    const Index n = bf.basis_r.ambient_dim();
    ComplexMatrix qd = ComplexMatrix::Zero(n, n);

    const HermitianEigen ea = hermitian_eigen(bf.a);
    const auto r1 = static_cast<Index>((ea.values.array() >= 1.0 - spec_tol).count());
    if (r1 > 0) {
        const ComplexMatrix v = bf.basis_r.columns() * ea.vectors.leftCols(r1);
        qd += v * v.adjoint();
    }
    const HermitianEigen eb = hermitian_eigen(bf.b);
    const auto rb = static_cast<Index>((eb.values.array() > spec_tol).count());
    if (rb > 0) {
        const ComplexMatrix v = bf.basis_n.columns() * eb.vectors.leftCols(rb);
        qd += v * v.adjoint();
    }
    return Projection::validate(qd);
}

QdResult qd_conjugation(const ProjectionPair& pair, double spec_tol, double sigma_floor) {
    const BlockForm bf = block_decompose(pair);
    QdResult r{qd_projection(bf, spec_tol), ComplexMatrix(), 0.0, 0.0, false, std::nullopt, std::nullopt};
    const ComplexMatrix& q = pair.q().matrix();
    const Index n = pair.dim();
    r.b_matrix = q + r.qd.matrix() - identity(n);
    r.sigma_min_b = n == 0 ? 1.0 : sigma_min(r.b_matrix);
    r.dist = op_norm(q - r.qd.matrix());
    if (!(r.sigma_min_b > sigma_floor)) {
        r.near_singular = true;
        return r;
    }
    const ComplexMatrix u = n == 0 ? ComplexMatrix(0, 0) : polar_unitary(r.b_matrix, sigma_floor);
    QdResiduals res;
    res.sym = op_norm(u - u.adjoint());
    res.invol = op_norm(u * u - identity(n));
    res.conj = op_norm(u * q * u - r.qd.matrix());
    res.comm = op_norm(commutator(u, pair.p().matrix()));
    r.u = u;
    r.residuals = res;
    return r;
}

BuckholtzReport buckholtz_check(const ProjectionPair& pair, double tau, double tau_prime) {
    const ComplexMatrix& p = pair.p().matrix();
    const ComplexMatrix& q = pair.q().matrix();
    BuckholtzReport r;
    if (pair.dim() == 0) return r;
    r.sigma_min_diff = sigma_min(p - q);
    r.norm_sum_minus_one = op_norm(p + q - identity(pair.dim()));
    const bool left = r.sigma_min_diff > tau;
    const bool right = r.norm_sum_minus_one < 1.0 - tau_prime;
    r.consistent = left == right;
    r.borderline = r.sigma_min_diff >= tau / 10.0 && r.sigma_min_diff <= 10.0 * std::sqrt(2.0 * tau_prime);
    return r;
}

RestrictedUnitaryProfile restricted_unitary_profile(const ComplexMatrix& u, const Projection& p, double null_tol) {
    require_square(u, "restricted_unitary_profile");
    if (u.rows() != p.dim()) throw InputError("restricted_unitary_profile: dimension mismatch");
    const double ures = unitarity_residual(u);
    if (ures > 1e-8) {
        std::ostringstream os;
        os << "restricted_unitary_profile: ||U*U - 1|| = " << ures << " exceeds 1e-8";
        throw InputError(os.str());
    }
    RestrictedUnitaryProfile r;
    r.comm_norm = op_norm(commutator(u, p.matrix()));
    const SubspaceBasis rp = range_of_hermitian(p.matrix());
    const SubspaceBasis np = kernel_of_hermitian(p.matrix());
    const ComplexMatrix u11 = rp.columns().adjoint() * u * rp.columns();
    const ComplexMatrix u12 = rp.columns().adjoint() * u * np.columns();
    const ComplexMatrix u21 = np.columns().adjoint() * u * rp.columns();
    for (const ComplexMatrix* blk : {&u12, &u21}) {
        const RealVector s = singular_values(*blk);
        for (Index i = 0; i < s.size(); ++i) r.offdiag_sv.push_back(s(i));
    }
    std::sort(r.offdiag_sv.begin(), r.offdiag_sv.end(), std::greater<>());

    const RealVector s11 = singular_values(u11);
    r.nullity_u11 = static_cast<Index>((s11.array() <= null_tol).count());
    // u11 is square, so its kernel and cokernel have equal dimension here.
    const Index nullity_adj = r.nullity_u11;
    r.index_u = static_cast<long>(r.nullity_u11) - static_cast<long>(nullity_adj);
    r.size_dependent = r.nullity_u11 > 0;
    return r;
}

namespace {

ComplexMatrix range_basis(const ComplexMatrix& h) {
    const HermitianEigen e = hermitian_eigen(h);
    const auto r = static_cast<Index>((e.values.array() > 0.5).count());
    return e.vectors.leftCols(r);
}

struct Match {
    ComplexMatrix map;
    ComplexMatrix src_left;
    ComplexMatrix dst_left;
};

// Maps min(k, m) orthonormal columns of src onto dst, pairing the best
// aligned directions first (orthogonal Procrustes on dst* src).
Match match(const ComplexMatrix& src, const ComplexMatrix& dst) {
    const Index n = src.rows();
    const Index k = src.cols();
    const Index m = dst.cols();
    const Index j = std::min(k, m);
    Match out{ComplexMatrix::Zero(n, n), src, dst};
    if (j == 0) return out;
    const Svd dec = svd(dst.adjoint() * src, SvdVectors::full);
    const ComplexMatrix& u = dec.u;
    const ComplexMatrix& v = dec.v;
    out.map = (dst * u.leftCols(j)) * (src * v.leftCols(j)).adjoint();
    out.src_left = src * v.rightCols(k - j);
    out.dst_left = dst * u.rightCols(m - j);
    for (Index c = 0; c < out.src_left.cols(); ++c) normalize_phase(out.src_left.col(c));
    for (Index c = 0; c < out.dst_left.cols(); ++c) normalize_phase(out.dst_left.col(c));
    return out;
}

// Assumes rank(E restricted to R(P)) >= rank(F restricted to R(P)).
ComplexMatrix build_shuffle(const ComplexMatrix& e, const ComplexMatrix& f, const ComplexMatrix& p, Index& moved) {
    const Index n = p.rows();
    const ComplexMatrix one = identity(n);
    const ComplexMatrix pc = one - p;
    const ComplexMatrix a1 = range_basis(p * e * p);
    const ComplexMatrix a0 = range_basis(p * (one - e) * p);
    const ComplexMatrix b1 = range_basis(pc * e * pc);
    const ComplexMatrix b0 = range_basis(pc * (one - e) * pc);
    const ComplexMatrix c1 = range_basis(p * f * p);
    const ComplexMatrix c0 = range_basis(p * (one - f) * p);
    const ComplexMatrix d1 = range_basis(pc * f * pc);
    const ComplexMatrix d0 = range_basis(pc * (one - f) * pc);
    moved = a1.cols() - c1.cols();

    // Range of E: R(P) part onto R(P) part of F, surplus across to N(P).
    const Match m1 = match(a1, c1);
    const Match m2 = match(m1.src_left, d1);
    const Match m3 = match(b1, m2.dst_left);
    // Kernel of E: the same surplus travels back from N(P) to R(P).
    const Match m4 = match(a0, c0);
    const Match m5 = match(b0, d0);
    const Match m6 = match(m5.src_left, m4.dst_left);
    const Index covered = a1.cols() + a0.cols() + b1.cols() + b0.cols();
    const Index mapped = c1.cols() + c0.cols() + d1.cols() + d0.cols();
    if (covered != n || mapped != n || m3.src_left.cols() != 0 || m3.dst_left.cols() != 0 ||
        m6.src_left.cols() != 0 || m6.dst_left.cols() != 0) {
        throw DimensionError("conjugate_commuting: corner ranks do not admit the basis shuffle");
    }
    return m1.map + m2.map + m3.map + m4.map + m5.map + m6.map;
}

}  // namespace

CommutingConjugation conjugate_commuting(const Projection& e, const Projection& f, const Projection& p) {
    if (e.dim() != p.dim() || f.dim() != p.dim()) throw InputError("conjugate_commuting: dimension mismatch");
    const ComplexMatrix& em = e.matrix();
    const ComplexMatrix& fm = f.matrix();
    const ComplexMatrix& pm = p.matrix();
    const double ce = op_norm(commutator(em, pm));
    const double cf = op_norm(commutator(fm, pm));
    if (ce > 1e-8 || cf > 1e-8) {
        std::ostringstream os;
        os << "conjugate_commuting: ||[E, P]|| = " << ce << ", ||[F, P]|| = " << cf << " (limit 1e-8)";
        throw InputError(os.str());
    }
    const Index re = range_basis(em).cols();
    const Index rf = range_basis(fm).cols();
    if (re != rf) {
        std::ostringstream os;
        os << "conjugate_commuting: rank E = " << re << " differs from rank F = " << rf;
        throw DimensionError(os.str());
    }

    CommutingConjugation out;
    const Index r_e = range_basis(pm * em * pm).cols();
    const Index r_f = range_basis(pm * fm * pm).cols();
    Index moved = 0;
    if (r_e >= r_f) {
        out.w = build_shuffle(em, fm, pm, moved);
    } else {
        out.w = build_shuffle(fm, em, pm, moved).adjoint();
    }
    out.shuffled = moved;
    out.conj_residual = op_norm(out.w * em * out.w.adjoint() - fm);
    out.comm_norm = op_norm(commutator(out.w, pm));
    return out;
}

}  // namespace projpair
