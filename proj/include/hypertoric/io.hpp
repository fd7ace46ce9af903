#pragma once

// JSON input and output: instance files, algebras, sign sets, the Deligne quiver.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"

#include "hypertoric/algebra.hpp"
#include "hypertoric/symmetry.hpp"

namespace hypertoric {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars and vectors

/// Integers that fit a long are emitted as numbers, larger ones as decimal strings.
inline Json to_json(const Z& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

inline Json to_json(const Q& q) { return to_string(q); }

inline Json to_json(const ZVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Json to_json(const QVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Json to_json(const ZMat& m) {
    Json a = Json::array();
    for (const auto& r : m) a.push_back(to_json(r));
    return a;
}

inline Json to_json(const SignSet& s) { return Json(std::vector<std::string>(s.begin(), s.end())); }

namespace detail {

inline Z parse_int(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Z(j.get<long>());
    if (j.is_string()) {
        Z z;
        if (z.set_str(j.get<std::string>(), 10) != 0) throw Error("ParseError", where + ": invalid integer");
        return z;
    }
    throw Error("ParseError", where + ": expected an integer");
}

inline Q parse_q(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Q(parse_int(j, where));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            throw Error("ParseError", where + ": " + e.what());
        }
    }
    throw Error("ParseError", where + ": expected a rational string \"p/q\"");
}

inline ZVec parse_zvec(const Json& j, const std::string& where) {
    if (!j.is_array()) throw Error("ParseError", where + ": expected an array");
    ZVec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_int(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline QVec parse_qvec(const Json& j, const std::string& where) {
    if (!j.is_array()) throw Error("ParseError", where + ": expected an array");
    QVec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_q(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace detail

/// Parses JSON text; syntax errors become ParseError with line and column.
inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        auto [line, col] = detail::line_column(text, e.byte);
        throw Error("ParseError", "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                      std::string(e.what()));
    }
}

// ---------------------------------------------------------------------------
// Instances

/// Contents of an instance file. xi may be given on the lattice basis (length k) or ambient (length n).
struct Instance {
    Lattice lambda0;
    std::optional<ZVec> eta;
    std::optional<ZVec> xi;
    std::optional<QVec> basepoint;

    bool polarized() const { return eta.has_value(); }
    bool quantized() const { return !eta && basepoint.has_value(); }

    ZVec covector() const { return xi.value_or(ZVec(lambda0.k(), 0)); }

    PolarizedArrangement as_polarized() const {
        if (!eta) throw Error("ParameterMismatch", "instance has no eta");
        PolarizedArrangement X{lambda0, *eta, covector()};
        X.validate();
        return X;
    }

    QuantizedArrangement as_quantized() const {
        QVec v0;
        if (basepoint) v0 = *basepoint;
        else if (eta) v0 = to_q(*eta);
        else throw Error("ParameterMismatch", "instance has neither eta nor basepoint");
        QuantizedArrangement X{lambda0, v0, covector()};
        X.validate();
        return X;
    }
};

inline Instance instance_from_json(const Json& j) {
    if (!j.is_object()) throw Error("ParseError", "instance: expected an object");
    for (const char* key : {"n", "lambda0_basis"})
        if (!j.contains(key)) throw Error("ParseError", std::string("instance: missing field '") + key + "'");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) throw Error("ParseError", "n: expected a positive integer");
    std::size_t n = j["n"].get<std::size_t>();
    const auto& rows = j["lambda0_basis"];
    if (!rows.is_array()) throw Error("ParseError", "lambda0_basis: expected an array of rows");
    ZMat basis;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto row = detail::parse_zvec(rows[r], "lambda0_basis[" + std::to_string(r) + "]");
        if (row.size() != n) throw Error("DimensionMismatch", "lambda0_basis row " + std::to_string(r) + " has wrong length");
        basis.push_back(row);
    }
    Instance in{Lattice::from_rows(basis, n), std::nullopt, std::nullopt, std::nullopt};
    auto present = [&](const char* key) { return j.contains(key) && !j[key].is_null(); };
    if (present("eta")) {
        in.eta = detail::parse_zvec(j["eta"], "eta");
        if (in.eta->size() != n) throw Error("DimensionMismatch", "eta has wrong length");
    }
    if (present("basepoint")) {
        in.basepoint = detail::parse_qvec(j["basepoint"], "basepoint");
        if (in.basepoint->size() != n) throw Error("DimensionMismatch", "basepoint has wrong length");
    }
    if (present("xi")) {
        auto xi = detail::parse_zvec(j["xi"], "xi");
        if (xi.size() == in.lambda0.k()) in.xi = xi;
        else if (xi.size() == n) in.xi = restrict_covector(in.lambda0, xi);
        else throw Error("DimensionMismatch", "xi has wrong length");
    }
    return in;
}

inline Instance parse_instance(const std::string& text) { return instance_from_json(parse_json(text)); }

inline Json to_json(const Instance& in) {
    Json j;
    j["n"] = in.lambda0.n;
    j["lambda0_basis"] = to_json(in.lambda0.basis);
    j["eta"] = in.eta ? to_json(*in.eta) : Json(nullptr);
    j["xi"] = in.xi ? to_json(*in.xi) : Json(nullptr);
    j["basepoint"] = in.basepoint ? to_json(*in.basepoint) : Json(nullptr);
    return j;
}

inline Json to_json(const PolarizedArrangement& X) { return to_json(Instance{X.lambda0, X.eta, X.xi, std::nullopt}); }

inline Json to_json(const QuantizedArrangement& X) {
    return to_json(Instance{X.lambda0, std::nullopt, X.xi, X.basepoint});
}

// ---------------------------------------------------------------------------
// Algebras

/// Basis order: degree, then source and target vertex, then path label.
inline std::vector<std::size_t> canonical_basis_order(const GradedAlgebra& A) {
    std::vector<std::size_t> order(A.dim());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto &x = A.basis[a], &y = A.basis[b];
        return std::tie(x.degree, x.source, x.target, x.label) < std::tie(y.degree, y.source, y.target, y.label);
    });
    return order;
}

/// Vertices, basis elements and the multiplication table as sparse triples (i, j, [[r, "p/q"], ...]).
inline Json to_json(const GradedAlgebra& A) {
    auto order = canonical_basis_order(A);
    std::vector<std::size_t> pos(A.dim());
    for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = p;
    Json j;
    j["vertices"] = Json(std::vector<std::string>(A.vertices.begin(), A.vertices.end()));
    j["finite"] = A.finite;
    j["max_degree"] = A.max_degree;
    Json basis = Json::array();
    for (auto i : order) {
        const auto& b = A.basis[i];
        basis.push_back({{"source", b.source}, {"target", b.target}, {"degree", b.degree}, {"label", b.label}});
    }
    j["basis"] = basis;
    std::vector<std::tuple<std::size_t, std::size_t, SparseVec>> rows;
    for (const auto& [ij, v] : A.table) {
        SparseVec w;
        for (const auto& [r, c] : v) w[pos[r]] = c;
        rows.emplace_back(pos[ij.first], pos[ij.second], w);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    Json table = Json::array();
    for (const auto& [i, k, v] : rows) {
        Json terms = Json::array();
        for (const auto& [r, c] : v) terms.push_back({r, to_string(c)});
        table.push_back({i, k, terms});
    }
    j["table"] = table;
    return j;
}

inline GradedAlgebra algebra_from_json(const Json& j) {
    GradedAlgebra A;
    try {
        for (const auto& v : j.at("vertices")) A.vertices.push_back(v.get<std::string>());
        A.finite = j.at("finite").get<bool>();
        A.max_degree = j.at("max_degree").get<int>();
        for (const auto& b : j.at("basis")) {
            BasisElement e;
            e.source = b.at("source").get<std::size_t>();
            e.target = b.at("target").get<std::size_t>();
            e.degree = b.at("degree").get<int>();
            e.label = b.value("label", "");
            A.basis.push_back(e);
        }
        for (const auto& row : j.at("table")) {
            SparseVec v;
            for (const auto& t : row.at(2)) v[t.at(0).get<std::size_t>()] = detail::parse_q(t.at(1), "table");
            A.table[{row.at(0).get<std::size_t>(), row.at(1).get<std::size_t>()}] = v;
        }
    } catch (const Json::exception& e) {
        throw Error("ParseError", std::string("algebra: ") + e.what());
    }
    return A;
}

inline Json to_json(const HilbertMatrix& h) {
    Json j = Json::array();
    for (const auto& row : h) {
        Json r = Json::array();
        for (const auto& cell : row) r.push_back(cell);
        j.push_back(r);
    }
    return j;
}

// ---------------------------------------------------------------------------
// Symmetry data

inline Json to_json(const SignedPermutation& g) {
    return {{"perm", g.perm}, {"signs", g.signs}};
}

/// Vertices with their sides and representatives, edges, and the wall covectors.
inline Json to_json(const DeligneQuiver& Q) {
    Json j;
    Json walls = Json::array();
    for (const auto& w : Q.walls) walls.push_back(to_json(w));
    j["walls"] = walls;
    Json verts = Json::array();
    for (const auto& v : Q.vertices) verts.push_back({{"side", v.side}, {"representative", to_json(v.representative)}});
    j["vertices"] = verts;
    Json edges = Json::array();
    for (const auto& [a, b] : Q.edges) edges.push_back({a, b});
    j["edges"] = edges;
    return j;
}

}  // namespace hypertoric
