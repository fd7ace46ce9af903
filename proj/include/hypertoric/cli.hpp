#pragma once

// Subcommands of the command-line front end, as functions from an instance to a JSON report.

#include <cstdlib>
#include <random>
#include <sstream>

#include "hypertoric/cells.hpp"
#include "hypertoric/gale.hpp"
#include "hypertoric/io.hpp"
#include "hypertoric/koszul.hpp"
#include "hypertoric/modules.hpp"
#include "hypertoric/suite.hpp"
#include "hypertoric/symmetry.hpp"

namespace hypertoric::cli {

using hypertoric::to_json;

inline constexpr const char* kVersion = "1.0.0";

struct Options {
    int max_degree = -1;  ///< -1 selects the default budget
    unsigned seed = 1;
    std::size_t budget = 8;
    std::size_t count = 20;  ///< instances in a randomized suite
    bool emit_algebra = false;
};

/// Budget from HYPO_BUDGET when set, otherwise the fallback.
inline std::size_t budget_from_env(std::size_t fallback) {
    if (const char* s = std::getenv("HYPO_BUDGET")) {
        try {
            return static_cast<std::size_t>(std::stoul(s));
        } catch (const std::exception&) {
            throw Error("ParseError", "HYPO_BUDGET is not a nonnegative integer");
        }
    }
    return fallback;
}

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline Json to_json(const Check& c) {
    Json j{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

namespace detail {

inline Json error_json(const Error& e) { return {{"error", e.code()}, {"message", e.what()}}; }

template <class F>
Json guarded(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        return error_json(e);
    }
}

inline Json regularity_json(const RegularityReport& r) {
    Json j;
    auto opt = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
    j["eta_regular"] = opt(r.eta_regular);
    j["lambda_regular"] = opt(r.lambda_regular);
    j["xi_regular"] = r.xi_regular;
    j["quasi_regular"] = opt(r.quasi_regular);
    j["integral"] = opt(r.integral);
    j["unimodular"] = r.unimodular;
    j["essential"] = r.essential;
    j["regular"] = r.regular();
    return j;
}

inline Json partition_json(const CellPartition& p) {
    Json blocks = Json::array();
    for (const auto& b : p.blocks) blocks.push_back(to_json(b));
    Json order = Json::array();
    for (std::size_t a = 0; a < p.blocks.size(); ++a)
        for (std::size_t b = 0; b < p.blocks.size(); ++b)
            if (a != b && p.leq[a][b]) order.push_back({a, b});
    return {{"blocks", blocks}, {"less_than", order}};
}

inline GradedAlgebra algebra_of(const Instance& in, int D) {
    if (in.polarized()) return build_algebra(in.as_polarized(), D);
    return build_algebra(in.as_quantized(), D);
}

inline PolarizedArrangement require_polarized(const Instance& in, const std::string& command) {
    if (!in.polarized()) throw Error("ParameterMismatch", command + " needs a polarized instance (eta)");
    return in.as_polarized();
}

inline Check check(const std::string& name, const std::function<bool()>& f) {
    try {
        return {name, f(), ""};
    } catch (const Error& e) {
        return {name, false, e.code() + ": " + e.what()};
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommands

inline Json analyze(const Instance& in, const Options&) {
    Json r;
    SignSet F, B;
    if (in.polarized()) {
        auto X = in.as_polarized();
        r["kind"] = "polarized";
        F = feasible_signs(X);
        B = bounded_signs(X);
        r["regularity"] = detail::regularity_json(regularity_report(X));
        r["equivalence_key"] = equivalence_key(X).serialize();
    } else {
        auto Y = in.as_quantized();
        r["kind"] = "quantized";
        F = quantized_feasible_signs(Y);
        B = quantized_bounded_signs(Y);
        r["regularity"] = detail::regularity_json(regularity_report(Y));
        r["equivalence_key"] = equivalence_key(Y).serialize();
        auto I = Y.integral_indices();
        r["integral_indices"] = I;
        auto cc = chamber_count_check(Y);
        r["chamber_count"] = {{"feasible", cc.count}, {"independent_sets", cc.bound}, {"equal", cc.equal}};
    }
    auto P = set_intersection(F, B);
    r["n"] = in.lambda0.n;
    r["k"] = in.lambda0.k();
    r["feasible"] = to_json(F);
    r["bounded"] = to_json(B);
    r["bounded_feasible"] = to_json(P);
    r["counts"] = {{"feasible", F.size()}, {"bounded", B.size()}, {"bounded_feasible", P.size()}};
    return r;
}

inline Json dual(const Instance& in, const Options&) {
    auto X = detail::require_polarized(in, "dual");
    auto D = gale_dual(X);
    auto rep = verify_duality(X);
    Json r;
    r["dual"] = to_json(D);
    r["duality"] = {{"F_eta_eq_B_xi_dual", rep.F_eta_eq_B_xidual},
                    {"F_eta_dual_eq_B_xi", rep.F_etadual_eq_B_xi},
                    {"P_eq", rep.P_eq},
                    {"regularity_transfer", rep.regular_transfer},
                    {"all", rep.all()}};
    r["equivalence_key"] = equivalence_key(X).serialize();
    r["dual_equivalence_key"] = equivalence_key(D).serialize();
    return r;
}

inline Json cells(const Instance& in, const Options&) {
    Json r;
    Cells c;
    SignSet P;
    if (in.polarized()) {
        auto X = in.as_polarized();
        auto F = feasible_signs(X), B = bounded_signs(X);
        c = cell_partitions(X.lambda0, F, B);
        P = set_intersection(F, B);
    } else {
        auto Y = in.as_quantized();
        c = cell_partitions(Y);
        P = quantized_bounded_feasible_signs(Y);
        Json goldie = Json::object();
        for (const auto& a : quantized_feasible_signs(Y)) goldie[a] = goldie_rank(Y, a);
        r["goldie_ranks"] = goldie;
    }
    r["left_cells"] = detail::partition_json(c.left);
    r["right_cells"] = detail::partition_json(c.right);
    r["two_sided_cells"] = detail::partition_json(c.two_sided);
    Json bbd = Json::array();
    for (const auto& [f, d] : bbd_dimensions(in.lambda0, P))
        bbd.push_back({{"flat", f.indices}, {"rank", f.rank}, {"dimension", d}});
    r["bbd_dimensions"] = bbd;
    auto M = Matroid::of(in.lambda0);
    r["h_vector"] = to_json(h_vector(M));
    r["dual_broken_circuit_h_vector"] = to_json(broken_circuit_h_vector(Matroid::dual_of(in.lambda0)));
    auto id = top_h_identity(in.lambda0);
    r["top_h_identity"] = {{"top_h", to_json(id.top_h)}, {"dual_broken_circuit_sum", to_json(id.dual_bc_sum)},
                           {"holds", id.holds()}};
    return r;
}

inline Json algebra(const Instance& in, const Options& opt) {
    auto A = detail::algebra_of(in, opt.max_degree);
    Json r;
    r["vertices"] = Json(std::vector<std::string>(A.vertices.begin(), A.vertices.end()));
    r["dimension"] = A.dim();
    r["finite"] = A.finite;
    r["max_degree"] = A.max_degree;
    r["degree_dims"] = degree_dims(A);
    r["graded_dims"] = to_json(graded_dims(A));
    r["cartan"] = to_json(cartan_matrix(A));
    r["associative"] = associativity_check(A);
    r["generated_in_degree_one"] = generated_in_degree_one(A);
    r["decomposition"] = detail::guarded([&]() -> Json {
        auto D = in.polarized() ? decomposition_matrix(in.as_polarized()) : decomposition_matrix(in.as_quantized());
        return {{"signs", to_json(D.signs)},
                {"matrix", to_json(D.matrix)},
                {"unitriangular", is_unitriangular(D.matrix)},
                {"reciprocity", matmul(transpose_z(D.matrix), D.matrix) == cartan_matrix(A)}};
    });
    r["center_degree_dims"] = detail::guarded([&]() -> Json { return center_graded_dims(A); });
    if (opt.emit_algebra) r["algebra"] = to_json(A);
    return r;
}

inline Json koszul(const Instance& in, const Options& opt) {
    auto A = detail::algebra_of(in, opt.max_degree);
    int d = opt.max_degree < 0 ? 16 : opt.max_degree;
    Json r;
    r["degree_dims"] = degree_dims(A);
    r["quadratic_dual"] = detail::guarded([&]() -> Json {
        auto Ad = quadratic_dual(A, d);
        Json j{{"degree_dims", degree_dims(Ad)}, {"finite", Ad.finite}};
        if (in.polarized()) {
            auto Bd = build_algebra(gale_dual(in.as_polarized()), d);
            j["gale_dual_degree_dims"] = degree_dims(Bd);
            j["matches_gale_dual"] = degree_dims(Ad) == degree_dims(Bd);
        }
        return j;
    });
    r["koszul_check"] = detail::guarded([&]() -> Json {
        auto k = koszul_check(A, d);
        Json hom = Json::array();
        for (const auto& h : k.homology)
            hom.push_back({{"source", h.source},
                           {"target", h.target},
                           {"internal_degree", h.internal_degree},
                           {"homological", h.homological},
                           {"dimension", h.dimension}});
        return {{"koszul", k.koszul()},
                {"exact_degrees", k.exact_degrees},
                {"failed_at", k.failed_at ? Json(*k.failed_at) : Json(nullptr)},
                {"homology", hom}};
    });
    return r;
}

inline ZVec negate(ZVec v) {
    for (auto& x : v) x = -x;
    return v;
}

inline Json bimodules(const Instance& in, const Options& opt) {
    auto X = detail::require_polarized(in, "bimodules");
    int D = opt.max_degree < 0 ? default_max_degree(X.n(), X.k()) : opt.max_degree;
    auto eta2 = negate(X.eta), xi2 = negate(X.xi);
    Json r;
    r["eta2"] = to_json(eta2);
    r["xi2"] = to_json(xi2);
    r["shuffling"] = detail::guarded([&]() -> Json {
        auto M = shuffling_bimodule(X.lambda0, X.eta, eta2, X.xi, D);
        return {{"degree_dims", M.degree_dims()}, {"finite", M.finite}, {"bimodule_axioms", bimodule_check(M)}};
    });
    r["twisting"] = detail::guarded([&]() -> Json {
        auto M = twisting_bimodule(X.lambda0, X.eta, X.xi, xi2, D);
        auto pk = projection_kernel(M);
        return {{"degree_dims", M.degree_dims()},
                {"finite", M.finite},
                {"bimodule_axioms", bimodule_check(M)},
                {"projection_kernel_matches", pk.matches()}};
    });
    r["cartesian"] = detail::guarded([&]() -> Json {
        auto c = cartesian_check(X.lambda0, X.eta, X.xi, opt.max_degree);
        return {{"lhs_dims", c.lhs_dims},
                {"rhs_dims", c.rhs_dims},
                {"compared_through", c.compared_through},
                {"isomorphic", c.isomorphic()}};
    });
    return r;
}

inline Json symmetry(const Instance& in, const Options& opt) {
    const auto& L = in.lambda0;
    Json r;
    Json cs = Json::array();
    for (const auto& c : circuits(L)) cs.push_back({{"indices", c.indices}, {"dependency", to_json(c.dependency)}});
    r["circuits"] = cs;
    auto Q = deligne_quiver(L);
    r["deligne_quiver"] = to_json(Q);
    auto cert = certify_minimal_paths(L, Q);
    r["minimal_paths"] = {{"checked", cert.paths_checked}, {"holds", cert.holds()}};
    r["weyl_groups"] = detail::guarded([&]() -> Json {
        auto G = weyl_groups(L, opt.budget);
        Json W = Json::array(), V = Json::array();
        for (const auto& g : G.W) W.push_back(to_json(g));
        for (const auto& g : G.V) V.push_back(to_json(g));
        return {{"W", W}, {"V", V}, {"W_order", G.W.size()}, {"V_order", G.V.size()}};
    });
    if (in.eta) {
        std::string side;
        for (const auto& w : Q.walls) {
            auto s = dot(w, *in.eta);
            side += s > 0 ? '+' : s < 0 ? '-' : '0';
        }
        r["eta_side"] = side;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Verification suite

/// Structural checks on one polarized instance; those needing regularity are skipped otherwise.
inline std::vector<Check> instance_checks(const PolarizedArrangement& X, const Options& opt) {
    using detail::check;
    std::vector<Check> out;
    bool regular = regularity_report(X).regular();
    int D = opt.max_degree;
    out.push_back(check("gale_duality", [&] { return verify_duality(X).all(); }));
    out.push_back(check("double_dual_key", [&] { return equivalence_key(gale_dual(gale_dual(X))) == equivalence_key(X); }));
    out.push_back(check("top_h_identity", [&] { return top_h_identity(X.lambda0).holds(); }));
    out.push_back(check("deligne_minimal_paths", [&] {
        return certify_minimal_paths(X.lambda0, deligne_quiver(X.lambda0)).holds();
    }));
    if (X.n() <= opt.budget)
        out.push_back(check("symmetry_equivariance", [&] {
            for (const auto& g : lattice_symmetries(X.lambda0, opt.budget)) {
                PolarizedArrangement Y{X.lambda0, act_on_parameters(X.lambda0, g, X.eta),
                                       act_on_covector(X.lambda0, g, X.xi)};
                if (feasible_signs(Y) != act_on_signs(g, feasible_signs(X))) return false;
                if (bounded_signs(Y) != act_on_signs(g, bounded_signs(X))) return false;
            }
            return true;
        }));
    auto A = build_algebra(X, D);
    out.push_back(check("associativity", [&] { return associativity_check(A); }));
    if (!regular) return out;
    auto Xd = gale_dual(X);
    out.push_back(check("cells_dual", [&] {
        auto cx = cell_partitions(X.lambda0, feasible_signs(X), bounded_signs(X));
        auto cd = cell_partitions(Xd.lambda0, feasible_signs(Xd), bounded_signs(Xd));
        return cx.left == cd.right.opposite() && cx.right == cd.left.opposite() &&
               cx.two_sided == cd.two_sided.opposite();
    }));
    out.push_back(check("bbd_filtration", [&] {
        auto f = filtration_check(X);
        return f.sums_match && f.dual_values_match && f.orthogonal;
    }));
    out.push_back(check("koszul", [&] { return koszul_check(A, D < 0 ? 16 : D).koszul(); }));
    out.push_back(check("quadratic_dual_matches_gale_dual", [&] {
        int d = D < 0 ? 16 : D;
        return degree_dims(quadratic_dual(A, d)) == degree_dims(build_algebra(Xd, d));
    }));
    out.push_back(check("decomposition_reciprocity", [&] {
        auto Dm = decomposition_matrix(X);
        return is_unitriangular(Dm.matrix) && matmul(transpose_z(Dm.matrix), Dm.matrix) == cartan_matrix(A);
    }));
    out.push_back(check("cartesian", [&] { return cartesian_check(X.lambda0, X.eta, X.xi, D).isomorphic(); }));
    return out;
}

/// Checks on a quantized instance: the lattice-point bound and, when regular and integral,
/// agreement with a linked polarized arrangement.
inline std::vector<Check> quantized_checks(const QuantizedArrangement& Y, const Options& opt) {
    using detail::check;
    std::vector<Check> out;
    auto rep = regularity_report(Y);
    out.push_back(check("chamber_count_bound", [&] {
        if (!is_essential(Y.lambda0, Y.integral_indices())) return true;
        auto c = chamber_count_check(Y);
        return c.count <= c.bound && c.equal == rep.lambda_regular.value_or(false);
    }));
    auto A = build_algebra(Y, opt.max_degree);
    out.push_back(check("associativity", [&] { return associativity_check(A); }));
    if (rep.regular() && rep.integral.value_or(false)) {
        auto X = linked_polarized(Y);
        out.push_back(check("linked_algebra_matches", [&] {
            return graded_dims(build_algebra(X, opt.max_degree)) == graded_dims(A);
        }));
        for (auto& c : instance_checks(X, opt)) out.push_back(c);
    }
    return out;
}

inline Json verify(const std::optional<Instance>& in, const Options& opt) {
    Json r;
    std::vector<Check> all;
    if (in) {
        all = in->polarized() ? instance_checks(in->as_polarized(), opt) : quantized_checks(in->as_quantized(), opt);
        Json list = Json::array();
        for (const auto& c : all) list.push_back(to_json(c));
        r["checks"] = list;
    } else {
        // Randomized suite of regular polarized instances.
        std::mt19937 rng(opt.seed);
        RandomSpec spec;
        spec.n_max = 4;
        std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
        Json failures = Json::array();
        for (std::size_t i = 0; i < opt.count; ++i) {
            auto X = random_regular_polarized(rng, spec);
            for (const auto& c : instance_checks(X, opt)) {
                auto& t = tally[c.name];
                ++t.second;
                if (c.pass) ++t.first;
                else failures.push_back({{"check", c.name}, {"instance", to_json(X)}, {"detail", c.detail}});
                all.push_back(c);
            }
        }
        Json summary = Json::object();
        for (const auto& [name, t] : tally) summary[name] = {{"passed", t.first}, {"total", t.second}};
        r["seed"] = opt.seed;
        r["instances"] = opt.count;
        r["summary"] = summary;
        r["failures"] = failures;
    }
    bool ok = std::all_of(all.begin(), all.end(), [](const Check& c) { return c.pass; });
    r["all_pass"] = ok;
    return r;
}

// ---------------------------------------------------------------------------
// Reports

inline Json report(const std::string& command, const Json& input, const Json& results) {
    return {{"command", command},
            {"input", input},
            {"results", results},
            {"version", kVersion},
            {"deterministic", true}};
}

namespace detail {

inline bool scalar_array(const Json& j) {
    return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return !x.is_structured(); });
}

inline void render(std::ostringstream& os, const Json& j, const std::string& path) {
    if (!j.is_structured() || scalar_array(j) || j.empty()) {
        os << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
        return;
    }
    if (j.is_object()) {
        for (const auto& [key, v] : j.items()) render(os, v, path.empty() ? key : path + "." + key);
        return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) render(os, j[i], path + "[" + std::to_string(i) + "]");
}

}  // namespace detail

/// One "path: value" line per leaf, in the JSON key order.
inline std::string render_table(const Json& j) {
    std::ostringstream os;
    detail::render(os, j, "");
    return os.str();
}

}  // namespace hypertoric::cli
