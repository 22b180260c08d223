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

#include "projpair/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "projpair/errors.hpp"
#include "projpair/geodesic.hpp"
#include "projpair/halmos.hpp"
#include "projpair/io.hpp"
#include "projpair/spatial.hpp"

namespace projpair::cli {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// JSON cannot hold inf/nan; report them as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

long long parse_int(const std::string& s, const std::string& ctx) {
    long long v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) throw InputError(ctx + ": not an integer: '" + s + "'");
    return v;
}

double parse_double(const std::string& s, const std::string& ctx) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw InputError(ctx + ": not a number: '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw InputError(ctx + ": not a number: '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

json clusters_json(const std::vector<EigenCluster>& cs) {
    json a = json::array();
    for (const auto& c : cs) a.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
    return a;
}

json residuals_json(const ProjectionResiduals& r) {
    return {{"hermitian", r.hermitian}, {"idempotent", r.idempotent}, {"spectral", r.spectral}};
}

json diagnostics_json(const SizeDiagnostics& d) {
    return {{"size", d.size},
            {"dim", d.dim},
            {"h11", d.h11},
            {"h00", d.h00},
            {"h10", d.h10},
            {"h01", d.h01},
            {"rank_p", d.rank_p},
            {"nullity_p", d.nullity_p},
            {"rank_q", d.rank_q},
            {"nullity_q", d.nullity_q},
            {"rank_pq_above_tau", d.rank_pq_above_tau},
            {"sv_tail", d.sv_tail},
            {"dim_ker_b", d.dim_ker_b},
            {"index_estimate", d.index_estimate}};
}

void write_json(const std::string& path, const json& j, std::ostream& out) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_file_atomic(path, text);
    }
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_file_atomic(path, text);
    }
}

// A projection given either as a MatrixFile or as one side of a PairFile.
Projection load_projection(const std::string& path, const char* side, double tol) {
    const json j = read_json_file(path);
    if (j.is_object() && j.contains("rows")) {
        const ComplexMatrix m = matrix_from_json(j, path);
        require_square(m, path);
        return Projection::validate(m, tol);
    }
    if (j.is_object() && j.contains(side)) {
        const ComplexMatrix m = matrix_from_json(j.at(side), path + ": " + side);
        require_square(m, path);
        return Projection::validate(m, tol);
    }
    throw InputError(path + ": expected a MatrixFile or a PairFile with \"" + side + "\"");
}

// ---- generate -------------------------------------------------------------

struct GenerateOpts {
    std::string kind;
    std::string k_file;
    long long n = -1;
    std::string set_i;
    std::string set_j;
    bool have_i = false;
    bool have_j = false;
    long long neg = -1;
    long long pos = -1;
    long long a = -1;
    long long c = -1;
    std::string dims;
    std::string angles;
    std::uint64_t seed = 0;
    std::string out;
};

GeneratorSpec spec_from_opts(const GenerateOpts& o, json& echo) {
    echo = {{"kind", o.kind}};
    if (o.kind == "ek") {
        if (o.k_file.empty()) throw InputError("generate ek: --k FILE is required");
        EkSpec s{matrix_from_json(read_json_file(o.k_file), o.k_file)};
        echo["k"] = matrix_to_json(s.k);
        return s;
    }
    if (o.kind == "fourier") {
        if (o.n <= 0) throw InputError("generate fourier: --n must be positive");
        if (!o.have_i || !o.have_j) throw InputError("generate fourier: --set-i and --set-j are required");
        FourierSpec s{static_cast<Index>(o.n), parse_index_set(o.set_i), parse_index_set(o.set_j)};
        echo["n"] = s.n;
        echo["i"] = s.i_set;
        echo["j"] = s.j_set;
        return s;
    }
    if (o.kind == "hardy") {
        if (o.neg < 0 || o.pos < 0 || o.a < 0 || o.c < 0) {
            throw InputError("generate hardy: --neg, --pos, --a, --c are required and non-negative");
        }
        HardySpec s{static_cast<Index>(o.neg), static_cast<Index>(o.pos), static_cast<Index>(o.a),
                    static_cast<Index>(o.c)};
        echo.update({{"n_neg", s.n_neg}, {"n_pos", s.n_pos}, {"a", s.a}, {"c", s.c}});
        return s;
    }
    if (o.kind == "angles") {
        AnglesSpec s;
        const std::vector<std::string> d = split(o.dims, ',');
        if (d.size() != 4) throw InputError("generate angles: --dims needs d11,d00,d10,d01");
        s.dims = {static_cast<Index>(parse_int(d[0], "--dims")), static_cast<Index>(parse_int(d[1], "--dims")),
                  static_cast<Index>(parse_int(d[2], "--dims")), static_cast<Index>(parse_int(d[3], "--dims"))};
        if (!o.angles.empty()) {
            for (const std::string& item : split(o.angles, ',')) {
                const std::vector<std::string> gm = split(item, ':');
                if (gm.empty() || gm.size() > 2) throw InputError("--angles items are gamma[:multiplicity]");
                AngleSpec a;
                a.gamma = parse_double(gm[0], "--angles");
                a.multiplicity = gm.size() == 2 ? static_cast<Index>(parse_int(gm[1], "--angles")) : 1;
                s.angles.push_back(a);
            }
        }
        s.seed = o.seed;
        json angles = json::array();
        for (const auto& a : s.angles) angles.push_back({a.gamma, a.multiplicity});
        echo.update({{"dims", {s.dims.d11, s.dims.d00, s.dims.d10, s.dims.d01}}, {"angles", angles}, {"seed", s.seed}});
        return s;
    }
    throw InputError("generate: unknown kind '" + o.kind + "' (expected ek, fourier, hardy, angles)");
}

int cmd_generate(const GenerateOpts& o, std::ostream& out) {
    json echo;
    const GeneratorSpec spec = spec_from_opts(o, echo);
    const ProjectionPair pair = generate(spec);
    json j = pair_to_json(pair);
    j["generator"] = echo;
    write_json(o.out, j, out);
    return 0;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeOpts {
    std::string pair;
    double tol = kProjectionTol;
    double rank_tol = kRankTol;
    double angle_tol = kAngleTol;
    double spec_tol = kSpecTol;
    double sigma_floor = 1e-6;
    double tau_sv = 1e-6;
    std::string out;
    std::string sv_csv;
};

int cmd_analyze(const AnalyzeOpts& o, std::ostream& out) {
    const LoadedPair lp = pair_from_json(read_json_file(o.pair), o.tol);
    const ProjectionPair& pair = lp.pair;
    const ComplexMatrix& p = pair.p().matrix();
    const ComplexMatrix& q = pair.q().matrix();
    const Index n = pair.dim();

    json r;
    r["schema"] = kSchema;
    r["dim"] = n;
    r["validation"] = {{"p", residuals_json(projection_residuals(lp.p_raw))},
                       {"q", residuals_json(projection_residuals(lp.q_raw))},
                       {"tol", o.tol}};

    const BlockForm bf = block_decompose(pair, o.rank_tol);
    const RelationResiduals rel = verify_projection_relations(bf);
    r["block_form"] = {{"rank_p", bf.rank_p()},
                       {"nullity_p", bf.nullity_p()},
                       {"range_relation", rel.range_relation},
                       {"kernel_relation", rel.kernel_relation},
                       {"intertwining", rel.intertwining}};

    const EigenData ed = eigendata(bf, o.spec_tol);
    json matches = json::array();
    for (const auto& m : ed.matches) {
        matches.push_back({{"lambda_b", m.lambda_b},
                           {"lambda_a", m.lambda_a},
                           {"multiplicity_b", m.multiplicity_b},
                           {"multiplicity_a", m.multiplicity_a},
                           {"intertwining_residual", m.intertwining_residual},
                           {"ok", m.ok}});
    }
    r["eigendata"] = {{"lambdas", clusters_json(ed.lambdas)},
                      {"alphas", ed.alphas},
                      {"rank_e1", ed.rank_e1},
                      {"rank_e1p", ed.rank_e1p},
                      {"dim_na", ed.dim_na},
                      {"dim_nb", ed.dim_nb},
                      {"spectrum_a", clusters_json(ed.spectrum_a)},
                      {"spectrum_b", clusters_json(ed.spectrum_b)},
                      {"matches", matches},
                      {"symmetry_holds", ed.symmetry_holds},
                      {"cluster_ambiguity", ed.cluster_ambiguity}};

    const HalmosDecomposition dec = halmos_decompose(pair, o.angle_tol, o.rank_tol, o.spec_tol);
    json angles = json::array();
    for (const auto& g : dec.angles.gammas) angles.push_back({{"gamma", g.gamma}, {"multiplicity", g.multiplicity}});
    const CompactPairReport cr = compact_pair_report(dec);
    const C0Report c0 = c0_conditions(dec, ed);
    json halmos = {{"h11", dec.h11.dim()},
                   {"h00", dec.h00.dim()},
                   {"h10", dec.h10.dim()},
                   {"h01", dec.h01.dim()},
                   {"generic", dec.generic.dim()},
                   {"angles", angles},
                   {"completeness_residual", dec.completeness_residual()},
                   {"halmos_index", halmos_index(dec)},
                   {"max_cos", cr.max_cos},
                   {"uniqueness_condition", uniqueness_condition(pair, o.angle_tol)},
                   {"c0_conditions",
                    {{"distinct_angles", c0.distinct_angles}, {"dim_h01", c0.dim_h01}, {"rank_e1", c0.rank_e1}}}};
    if (dec.half_dim() > 0) {
        try {
            const ObliqueIdempotent oi = oblique_idempotent(dec);
            halmos["oblique"] = {{"model_residual", oi.model_residual}, {"idempotency_residual", oi.idempotency_residual}};
        } catch (const DomainError& e) {
            halmos["oblique"] = {{"error", e.what()}};
        }
    }
    r["halmos"] = halmos;

    const ComplexMatrix t = p * q;
    const auto [range, corange] = projections_from_product(t);
    r["crimmins"] = {{"residual", crimmins_residual(t)},
                     {"reconstruction_error", op_norm(range.matrix() * corange.matrix() - t)}};

    const QdResult qd = qd_conjugation(pair, o.spec_tol, o.sigma_floor);
    json qdj = {{"sigma_min_b", num(qd.sigma_min_b)},
                {"dist", qd.dist},
                {"near_singular", qd.near_singular},
                {"qd_rank", qd.qd.rank()},
                {"qd_commutes_with_p", op_norm(commutator(qd.qd.matrix(), p))}};
    if (qd.residuals) {
        qdj["residuals"] = {{"sym", qd.residuals->sym},
                            {"invol", qd.residuals->invol},
                            {"conj", qd.residuals->conj},
                            {"comm", qd.residuals->comm}};
    }
    r["qd"] = qdj;

    const BuckholtzReport bh = buckholtz_check(pair);
    r["buckholtz"] = {{"sigma_min_diff", bh.sigma_min_diff},
                      {"norm_sum_minus_one", bh.norm_sum_minus_one},
                      {"consistent", bh.consistent},
                      {"borderline", bh.borderline}};

    const RealVector sv = singular_values(t);
    const auto rank_p = static_cast<long>(bf.rank_p());
    const auto nullity_p = static_cast<long>(bf.nullity_p());
    const auto rank_q = static_cast<long>(pair.q().rank(o.rank_tol));
    r["class"] = {{"evidence", "rank-bounded"},
                  {"k", rank_p},
                  {"l", nullity_p},
                  {"m", rank_q},
                  {"n", static_cast<long>(n) - rank_q},
                  {"index_estimate", rank_q - nullity_p},
                  {"rank_pq_above_tau", (sv.array() > o.tau_sv).count()},
                  {"tau_sv", o.tau_sv}};

    write_json(o.out, r, out);
    if (!o.sv_csv.empty()) {
        std::ostringstream csv;
        csv << "index,singular_value\n";
        for (Index i = 0; i < sv.size(); ++i) csv << i << "," << fmt(sv(i)) << "\n";
        write_file_atomic(o.sv_csv, csv.str());
    }
    return 0;
}

// ---- classify -------------------------------------------------------------

struct ClassifyOpts {
    std::string family;
    double tau_sv = 1e-6;
    std::size_t window = 3;
    bool serial = false;
    std::string out;
};

int cmd_classify(const ClassifyOpts& o, std::ostream& out) {
    const json j = read_json_file(o.family);
    const std::string base = std::filesystem::path(o.family).parent_path().string();
    const TruncationFamily fam = family_from_json(j, base);
    ClassifyParams params;
    params.tau_sv = o.tau_sv;
    params.window = o.window;
    params.parallel = !o.serial;
    const PairClass pc = classify_family(fam, params);
    const IndexEstimate est = fredholm_index_estimate(pc.diagnostics, params.window);

    json v;
    v["schema"] = kSchema;
    v["family"] = {{"kind", to_string(fam.kind)}, {"description", fam.description}, {"sizes", fam.sizes}};
    v["params"] = {{"tau_sv", params.tau_sv}, {"window", params.window}};
    v["verdict"] = to_string(pc.verdict);
    v["label"] = pc.label();
    if (pc.verdict == PairClass::Verdict::C0) {
        auto p = [](const std::optional<Index>& x) { return x ? json(*x) : json("unbounded"); };
        v["parameters"] = {{"k", p(pc.k)}, {"l", p(pc.l)}, {"m", p(pc.m)}, {"n", p(pc.n)}};
    }
    if (pc.verdict == PairClass::Verdict::C1) v["index"] = pc.index;
    if (pc.verdict == PairClass::Verdict::Indeterminate) v["reason"] = pc.reason;
    v["index_estimate"] = {{"index", est.index}, {"stabilized", est.stabilized}, {"per_size", est.per_size}};
    json diag = json::array();
    for (const auto& d : pc.diagnostics) diag.push_back(diagnostics_json(d));
    v["diagnostics"] = diag;
    write_json(o.out, v, out);
    return 0;
}

// ---- geodesic / probe -----------------------------------------------------

struct PathOpts {
    std::string p;
    std::string q0;
    std::string q1;
    long long steps = 11;
    double tol = kProjectionTol;
    double tau_sv = 1e-6;
    std::string out;
};

int cmd_geodesic(const PathOpts& o, std::ostream& out) {
    if (o.steps < 1) throw InputError("geodesic: --steps must be at least 1");
    const Projection q0 = load_projection(o.q0, "q", o.tol);
    const Projection q1 = load_projection(o.q1, "q", o.tol);
    if (q0.dim() != q1.dim()) throw InputError("geodesic: q0 and q1 differ in dimension");
    const Projection p = o.p.empty() ? q0 : load_projection(o.p, "p", o.tol);
    if (p.dim() != q0.dim()) throw InputError("geodesic: p differs in dimension");

    const GeodesicSegment seg = geodesic_between(q0, q1);
    const double endpoint = op_norm(geodesic_eval(seg, 1.0).matrix() - q1.matrix());
    const std::vector<ProbeStep> steps = geodesic_in_class_probe(p, q0, q1, static_cast<Index>(o.steps), o.tau_sv);
    std::ostringstream csv;
    csv << "t,endpoint_residual,norm_x,sv_count_above_tau\n";
    for (const auto& s : steps) {
        csv << fmt(s.t) << "," << fmt(endpoint) << "," << fmt(seg.norm_x) << "," << s.sv_count_above_tau << "\n";
    }
    write_text(o.out, csv.str(), out);
    return 0;
}

int cmd_probe(const PathOpts& o, std::ostream& out) {
    if (o.steps < 1) throw InputError("probe: --steps must be at least 1");
    const Projection p = load_projection(o.p, "p", o.tol);
    const Projection q0 = load_projection(o.q0, "q", o.tol);
    const Projection q1 = load_projection(o.q1, "q", o.tol);
    if (p.dim() != q0.dim() || q0.dim() != q1.dim()) throw InputError("probe: dimension mismatch");
    const std::vector<ProbeStep> steps = geodesic_in_class_probe(p, q0, q1, static_cast<Index>(o.steps), o.tau_sv);
    std::ostringstream csv;
    csv << "t,sv_count_above_tau,max_sv,frobenius_sq,step_jump\n";
    for (const auto& s : steps) {
        csv << fmt(s.t) << "," << s.sv_count_above_tau << "," << fmt(s.max_sv) << "," << fmt(s.frobenius_sq) << ","
            << fmt(s.step_jump) << "\n";
    }
    write_text(o.out, csv.str(), out);
    return 0;
}

void error_json(std::ostream& err, const char* kind, const std::string& msg, int code) {
    json e = {{"error", {{"kind", kind}, {"message", msg}, {"exit_code", code}}}};
    err << e.dump() << "\n";
}

}  // namespace

std::vector<Index> parse_index_set(const std::string& text) {
    std::vector<Index> out;
    if (text.empty()) return out;
    for (const std::string& item : split(text, ',')) {
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            out.push_back(static_cast<Index>(parse_int(item, "index set")));
            continue;
        }
        const long long a = parse_int(item.substr(0, colon), "index set");
        const long long b = parse_int(item.substr(colon + 1), "index set");
        if (b < a) throw InputError("index set: range '" + item + "' has end before start");
        for (long long i = a; i < b; ++i) out.push_back(static_cast<Index>(i));
    }
    return out;
}

TruncationFamily family_from_json(const json& j, const std::string& base_dir) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw InputError("family file: needs a string \"kind\"");
    }
    const std::string kind = j.at("kind").get<std::string>();
    auto sizes = [&]() {
        if (!j.contains("sizes") || !j.at("sizes").is_array()) throw InputError("family file: needs \"sizes\" array");
        std::vector<Index> s;
        for (const json& v : j.at("sizes")) {
            if (!v.is_number_integer() || v.get<long long>() <= 0) throw InputError("family file: sizes must be positive integers");
            s.push_back(static_cast<Index>(v.get<long long>()));
        }
        return s;
    };
    auto integer = [&](const char* key) {
        if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0) {
            throw InputError(std::string("family file: \"") + key + "\" must be a non-negative integer");
        }
        return static_cast<Index>(j.at(key).get<long long>());
    };
    try {
        if (kind == "fourier") return fourier_sqrt_family(sizes());
        if (kind == "hardy") return hardy_family(integer("a"), integer("c"), sizes());
        if (kind == "ek") return ek_geometric_family(sizes());
        if (kind == "angles") {
            CornerDims d;
            const json& dims = j.at("dims");
            if (!dims.is_array() || dims.size() != 4) throw InputError("family file: \"dims\" needs 4 integers");
            d = {dims[0].get<Index>(), dims[1].get<Index>(), dims[2].get<Index>(), dims[3].get<Index>()};
            std::vector<AngleSpec> angles;
            for (const json& a : j.value("angles", json::array())) {
                if (!a.is_array() || a.size() != 2) throw InputError("family file: angles are [gamma, multiplicity]");
                angles.push_back({a[0].get<double>(), a[1].get<Index>()});
            }
            const auto seed = j.value("seed", std::uint64_t{0});
            // Validate once up front so a bad description is an input error, not a
            // failure deep inside the sweep.
            validate_spec(AnglesSpec{d, angles, seed});
            return angles_family(d, std::move(angles), seed, sizes());
        }
        if (kind == "custom") {
            if (!j.contains("pairs") || !j.at("pairs").is_array() || j.at("pairs").empty()) {
                throw InputError("family file: custom needs a non-empty \"pairs\" array");
            }
            std::vector<ProjectionPair> pairs;
            for (const json& item : j.at("pairs")) {
                if (item.is_string()) {
                    std::filesystem::path path(item.get<std::string>());
                    if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
                    pairs.push_back(pair_from_json(read_json_file(path.string())).pair);
                } else {
                    pairs.push_back(pair_from_json(item).pair);
                }
            }
            return custom_family(std::move(pairs));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("family file: ") + e.what());
    }
    throw InputError("family file: unknown kind '" + kind + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-dimensional analysis of pairs of orthogonal projections", "projpair"};
    app.require_subcommand(1);

    GenerateOpts gen;
    CLI::App* g = app.add_subcommand("generate", "Generate an example pair");
    g->add_option("kind", gen.kind, "ek | fourier | hardy | angles")->required();
    g->add_option("--k", gen.k_file, "MatrixFile with K (ek)");
    g->add_option("--n", gen.n, "ambient dimension N (fourier)");
    CLI::Option* opt_i = g->add_option("--set-i", gen.set_i, "index set I, e.g. 0:8 or 0,3,5 (fourier)");
    CLI::Option* opt_j = g->add_option("--set-j", gen.set_j, "index set J (fourier)");
    g->add_option("--neg", gen.neg, "number of negative modes (hardy)");
    g->add_option("--pos", gen.pos, "number of positive modes (hardy)");
    g->add_option("--a", gen.a, "exponent a of phi = z^a (hardy)");
    g->add_option("--c", gen.c, "exponent c of psi = z^c (hardy)");
    g->add_option("--dims", gen.dims, "d11,d00,d10,d01 (angles)");
    g->add_option("--angles", gen.angles, "gamma[:mult],... in radians (angles)");
    g->add_option("--seed", gen.seed, "seed for the random unitary (angles)");
    g->add_option("--out", gen.out, "output PairFile")->required();

    AnalyzeOpts an;
    CLI::App* a = app.add_subcommand("analyze", "Run the single-pair pipeline");
    a->add_option("--pair", an.pair, "PairFile")->required();
    a->add_option("--tol", an.tol, "projection validation tolerance");
    a->add_option("--rank-tol", an.rank_tol, "relative rank tolerance");
    a->add_option("--angle-tol", an.angle_tol, "principal-angle tolerance for intersections");
    a->add_option("--spec-tol", an.spec_tol, "spectral cluster tolerance");
    a->add_option("--sigma-floor", an.sigma_floor, "near-singular floor for B = Q + Q_d - 1");
    a->add_option("--tau-sv", an.tau_sv, "singular-value threshold for PQ");
    a->add_option("--out", an.out, "report JSON")->required();
    a->add_option("--sv-csv", an.sv_csv, "singular values of PQ as CSV");

    ClassifyOpts cl;
    CLI::App* c = app.add_subcommand("classify", "Classify a truncation family");
    c->add_option("--family", cl.family, "family JSON")->required();
    c->add_option("--tau-sv", cl.tau_sv, "compactness threshold");
    c->add_option("--window", cl.window, "number of trailing sizes examined")->check(CLI::PositiveNumber);
    c->add_flag("--serial", cl.serial, "evaluate sizes sequentially");
    c->add_option("--out", cl.out, "verdict JSON")->required();

    PathOpts geo;
    CLI::App* ge = app.add_subcommand("geodesic", "Geodesic between two projections");
    ge->add_option("--q0", geo.q0, "start projection")->required();
    ge->add_option("--q1", geo.q1, "end projection")->required();
    ge->add_option("--p", geo.p, "reference projection for the diagnostics (default q0)");
    ge->add_option("--steps", geo.steps, "number of grid intervals");
    ge->add_option("--tol", geo.tol, "projection validation tolerance");
    ge->add_option("--tau-sv", geo.tau_sv, "singular-value threshold");
    ge->add_option("--out", geo.out, "path CSV")->required();

    PathOpts pr;
    pr.steps = 21;
    CLI::App* pb = app.add_subcommand("probe", "Singular-value profile of P delta(t) along a geodesic");
    pb->add_option("--p", pr.p, "fixed projection P0")->required();
    pb->add_option("--q0", pr.q0, "start projection")->required();
    pb->add_option("--q1", pr.q1, "end projection")->required();
    pb->add_option("--steps", pr.steps, "number of grid intervals");
    pb->add_option("--tol", pr.tol, "projection validation tolerance");
    pb->add_option("--tau-sv", pr.tau_sv, "singular-value threshold");
    pb->add_option("--out", pr.out, "probe CSV")->required();

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("projpair");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        out << sub->help();
        return 0;
    } catch (const CLI::ParseError& e) {
        CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << "error: " << e.what() << "\n\n" << sub->help();
        return 1;
    }

    gen.have_i = opt_i->count() > 0;
    gen.have_j = opt_j->count() > 0;
    try {
        if (g->parsed()) return cmd_generate(gen, out);
        if (a->parsed()) return cmd_analyze(an, out);
        if (c->parsed()) return cmd_classify(cl, out);
        if (ge->parsed()) return cmd_geodesic(geo, out);
        if (pb->parsed()) return cmd_probe(pr, out);
    } catch (const InputError& e) {
        error_json(err, e.kind(), e.what(), 1);
        return 1;
    } catch (const NumericalError& e) {
        error_json(err, e.kind(), e.what(), 2);
        return 2;
    } catch (const json::exception& e) {
        error_json(err, "input", e.what(), 1);
        return 1;
    } catch (const std::exception& e) {
        error_json(err, "internal", e.what(), 2);
        return 2;
    }
    err << app.help();
    return 1;
}

}  // namespace projpair::cli
