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

#include "projpair/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "projpair/errors.hpp"

namespace projpair {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index k = 0; k < m.cols(); ++k) entries.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

namespace {

[[noreturn]] void bad(std::string_view what, const std::string& msg) {
    std::ostringstream os;
    os << what << ": " << msg;
    throw InputError(os.str());
}

Index dimension_field(const json& j, const char* key, std::string_view what) {
    if (!j.contains(key)) bad(what, std::string("missing \"") + key + "\"");
    const json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) bad(what, std::string("\"") + key + "\" must be a non-negative integer");
    return static_cast<Index>(v.get<long long>());
}

double number(const json& v, std::string_view what) {
    if (!v.is_number()) bad(what, "entry components must be numbers");
    return v.get<double>();
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j, std::string_view what) {
    if (!j.is_object()) bad(what, "expected an object with rows, cols, entries");
    const Index rows = dimension_field(j, "rows", what);
    const Index cols = dimension_field(j, "cols", what);
    if (!j.contains("entries") || !j.at("entries").is_array()) bad(what, "missing \"entries\" array");
    const json& e = j.at("entries");
    if (static_cast<Index>(e.size()) != rows * cols) {
        std::ostringstream os;
        os << "entries has " << e.size() << " items, expected rows*cols = " << rows * cols;
        bad(what, os.str());
    }
    ComplexMatrix m(rows, cols);
    for (Index idx = 0; idx < rows * cols; ++idx) {
        const json& item = e[static_cast<std::size_t>(idx)];
        Complex z;
        if (item.is_array()) {
            if (item.size() != 2) bad(what, "complex entries must be [re, im]");
            z = Complex(number(item[0], what), number(item[1], what));
        } else {
            z = Complex(number(item, what), 0.0);
        }
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) bad(what, "non-finite entry");
        m(idx / cols, idx % cols) = z;
    }
    return m;
}

json pair_to_json(const ProjectionPair& pair) {
    return json{{"schema", kSchema}, {"p", matrix_to_json(pair.p().matrix())}, {"q", matrix_to_json(pair.q().matrix())}};
}

LoadedPair pair_from_json(const json& j, double tol) {
    if (!j.is_object()) throw InputError("pair file: expected an object");
    if (j.contains("p") && j.contains("q")) {
        ComplexMatrix p = matrix_from_json(j.at("p"), "pair file: p");
        ComplexMatrix q = matrix_from_json(j.at("q"), "pair file: q");
        require_square(p, "pair file: p");
        require_square(q, "pair file: q");
        if (p.rows() != q.rows()) throw InputError("pair file: p and q differ in dimension");
        ProjectionPair pair(Projection::validate(p, tol), Projection::validate(q, tol));
        return {std::move(p), std::move(q), std::move(pair)};
    }
    if (j.contains("p_basis") && j.contains("q_basis")) {
        const ComplexMatrix pb = matrix_from_json(j.at("p_basis"), "pair file: p_basis");
        const ComplexMatrix qb = matrix_from_json(j.at("q_basis"), "pair file: q_basis");
        if (pb.rows() != qb.rows()) throw InputError("pair file: bases differ in ambient dimension");
        Projection p = projection_from_columns(pb);
        Projection q = projection_from_columns(qb);
        ComplexMatrix praw = p.matrix();
        ComplexMatrix qraw = q.matrix();
        return {std::move(praw), std::move(qraw), ProjectionPair(std::move(p), std::move(q))};
    }
    throw InputError("pair file: needs {\"p\", \"q\"} or {\"p_basis\", \"q_basis\"}");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << path << ": malformed JSON at byte " << e.byte << " (" << e.what() << ")";
        throw InputError(os.str());
    }
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out) throw InputError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw InputError("cannot rename onto " + path);
    }
}

}  // namespace projpair
