#pragma once

// Polarized and quantized polarized arrangements and their chamber sets.

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hypertoric/exact.hpp"

namespace hypertoric {

/// A string over {'+','-'}; std::string ordering is the canonical order since '+' < '-'.
using SignVector = std::string;
using SignSet = std::vector<SignVector>;

inline bool contains(const SignSet& s, const SignVector& a) { return std::binary_search(s.begin(), s.end(), a); }

inline SignSet set_intersection(const SignSet& a, const SignSet& b) {
    SignSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline SignSet set_difference(const SignSet& a, const SignSet& b) {
    SignSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline SignVector flip(SignVector a, std::size_t i) {
    a[i] = a[i] == '+' ? '-' : '+';
    return a;
}

inline SignVector restrict_signs(const SignVector& a, const std::vector<std::size_t>& idx) {
    SignVector out;
    for (auto i : idx) out.push_back(a[i]);
    return out;
}

/// All sign vectors of length m in canonical order.
inline SignSet all_signs(std::size_t m) {
    SignSet out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        SignVector a(m, '+');
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> (m - 1 - i) & 1) a[i] = '-';
        out.push_back(a);
    }
    return out;
}

/// Depth-first enumeration with '+' first; `partial_ok` prunes prefixes, `leaf_ok` filters full vectors.
inline SignSet enumerate_signs(std::size_t m, const std::function<bool(const SignVector&)>& partial_ok,
                               const std::function<bool(const SignVector&)>& leaf_ok) {
    SignSet out;
    SignVector cur;
    std::function<void()> rec = [&]() {
        if (cur.size() == m) {
            if (leaf_ok(cur)) out.push_back(cur);
            return;
        }
        for (char c : {'+', '-'}) {
            cur.push_back(c);
            if (cur.size() == m || partial_ok(cur)) rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

/// Column i of the basis, read as a covector on lattice coordinates.
inline std::vector<ZVec> restricted_normals(const Lattice& L) {
    std::vector<ZVec> out;
    for (std::size_t i = 0; i < L.n; ++i) out.push_back(L.column(i));
    return out;
}

/// xi in lattice-dual coordinates from an ambient integer covector.
inline ZVec restrict_covector(const Lattice& L, const ZVec& ambient) {
    if (ambient.size() != L.n) throw Error("DimensionMismatch", "covector has wrong length");
    ZVec xi;
    for (const auto& b : L.basis) xi.push_back(dot(b, ambient));
    return xi;
}

/// Subsets of `from` of the given size, each sorted, in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets_of_size(const std::vector<std::size_t>& from, std::size_t size) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == size) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < from.size(); ++i) {
            cur.push_back(from[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

inline std::vector<std::size_t> iota_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

/// Rank of the normals indexed by `idx`.
inline std::size_t normals_rank(const Lattice& L, const std::vector<std::size_t>& idx) {
    QMat m;
    for (auto i : idx) m.push_back(to_q(L.column(i)));
    return matrix_rank(m);
}

/// Independent subsets of `ground` (columns linearly independent).
inline std::vector<std::vector<std::size_t>> independent_sets(const Lattice& L, const std::vector<std::size_t>& ground) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        out.push_back(cur);
        for (std::size_t i = start; i < ground.size(); ++i) {
            cur.push_back(ground[i]);
            if (normals_rank(L, cur) == cur.size()) rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

/// Bases of the matroid on `ground`.
inline std::vector<std::vector<std::size_t>> matroid_bases(const Lattice& L, const std::vector<std::size_t>& ground) {
    std::size_t r = normals_rank(L, ground);
    std::vector<std::vector<std::size_t>> out;
    for (auto& s : independent_sets(L, ground))
        if (s.size() == r) out.push_back(s);
    return out;
}

/// True iff every 1-dimensional flat of the normals in `ground` has a direction on which xi is nonzero.
inline bool covector_regular(const Lattice& L, const ZVec& xi, const std::vector<std::size_t>& ground) {
    std::size_t k = L.k();
    if (k == 0) return true;
    for (const auto& s : subsets_of_size(ground, k - 1)) {
        if (normals_rank(L, s) != k - 1) continue;
        QMat m;
        for (auto i : s) m.push_back(to_q(L.column(i)));
        auto ns = nullspace(m, k);
        if (ns.size() != 1) continue;
        if (sgn(dot(ns[0], to_q(xi))) == 0) return false;
    }
    return true;
}

/// Every coordinate projection of the lattice is a direct summand.
inline bool is_unimodular(const Lattice& L) {
    std::size_t n = L.n;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        ZMat proj(L.k());
        for (std::size_t j = 0; j < L.k(); ++j)
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) proj[j].push_back(L.basis[j][i]);
        if (!spans_saturated_lattice(proj, proj.empty() ? 0 : proj[0].size())) return false;
    }
    return true;
}

inline void add_sign_constraint(RationalPolyhedron& P, const QVec& normal, const Q& value_at_zero, char sign,
                                const Q& minus_bound) {
    // value_at_zero + normal . t >= 0 for '+', <= minus_bound for '-'.
    if (sign == '+') P.add_ge(normal, -value_at_zero);
    else P.add_le(normal, minus_bound - value_at_zero);
}

/// Cone cut out by the restricted normals with the given signs on the indices `idx`.
inline RationalPolyhedron sign_cone(const Lattice& L, const std::vector<std::size_t>& idx, const SignVector& alpha) {
    RationalPolyhedron C(L.k());
    for (std::size_t p = 0; p < alpha.size(); ++p) add_sign_constraint(C, to_q(L.column(idx[p])), 0, alpha[p], 0);
    return C;
}

/// xi-bounded sign vectors on the indices `idx`, i.e. xi < 0 on the cone minus the origin.
inline SignSet bounded_signs_on(const Lattice& L, const ZVec& xi, const std::vector<std::size_t>& idx) {
    if (xi.size() != L.k()) throw Error("DimensionMismatch", "covector has wrong length");
    return enumerate_signs(
        idx.size(), [](const SignVector&) { return true; },
        [&](const SignVector& a) { return functional_bounded_on_cone(to_q(xi), sign_cone(L, idx, a)); });
}

inline SignSet bounded_signs(const Lattice& L, const ZVec& xi) { return bounded_signs_on(L, xi, iota_indices(L.n)); }

// ---------------------------------------------------------------------------

/// (Lambda_0, eta, xi); h_i(t) = eta_i + <column i, t> on lattice coordinates t.
struct PolarizedArrangement {
    Lattice lambda0;
    ZVec eta;
    ZVec xi;

    std::size_t n() const { return lambda0.n; }
    std::size_t k() const { return lambda0.k(); }

    void validate() const {
        lambda0.validate();
        if (eta.size() != n()) throw Error("DimensionMismatch", "eta has wrong length");
        if (xi.size() != k()) throw Error("DimensionMismatch", "xi has wrong length");
    }

    /// Delta_alpha restricted to the first alpha.size() coordinates.
    RationalPolyhedron chamber(const SignVector& alpha) const {
        RationalPolyhedron P(k());
        for (std::size_t i = 0; i < alpha.size(); ++i)
            add_sign_constraint(P, to_q(lambda0.column(i)), Q(eta[i]), alpha[i], 0);
        return P;
    }

    QVec h_values(const QVec& t) const {
        QVec h(n());
        for (std::size_t i = 0; i < n(); ++i) h[i] = eta[i] + qdot(t, lambda0.column(i));
        return h;
    }
};

inline SignSet feasible_signs(const PolarizedArrangement& X) {
    auto ok = [&](const SignVector& a) { return polyhedron_feasible(X.chamber(a)).has_value(); };
    return enumerate_signs(X.n(), ok, ok);
}

inline SignSet bounded_signs(const PolarizedArrangement& X) { return bounded_signs(X.lambda0, X.xi); }

inline SignSet bounded_feasible_signs(const PolarizedArrangement& X) {
    return set_intersection(feasible_signs(X), bounded_signs(X));
}

// ---------------------------------------------------------------------------

/// (Lambda_0, v_0 + Lambda_0, xi); h_i^+(t) = v0_i + <column i, t>, h_i^- = h_i^+ + 1.
struct QuantizedArrangement {
    Lattice lambda0;
    QVec basepoint;
    ZVec xi;

    std::size_t n() const { return lambda0.n; }
    std::size_t k() const { return lambda0.k(); }

    void validate() const {
        lambda0.validate();
        if (basepoint.size() != n()) throw Error("DimensionMismatch", "basepoint has wrong length");
        if (xi.size() != k()) throw Error("DimensionMismatch", "xi has wrong length");
    }

    /// Indices where h_i^+ takes integer values on the lattice coset.
    std::vector<std::size_t> integral_indices() const {
        std::vector<std::size_t> I;
        for (std::size_t i = 0; i < n(); ++i)
            if (is_integral(basepoint[i])) I.push_back(i);
        return I;
    }

    /// Quantized chamber on the first alpha.size() indices of I: h^+ >= 0 for '+', h^+ <= -1 for '-'.
    RationalPolyhedron chamber(const SignVector& alpha) const {
        auto I = integral_indices();
        RationalPolyhedron P(k());
        for (std::size_t p = 0; p < alpha.size(); ++p)
            add_sign_constraint(P, to_q(lambda0.column(I[p])), basepoint[I[p]], alpha[p], -1);
        return P;
    }

    bool has_lattice_point(const RationalPolyhedron& P) const { return lattice_point_witness(P).has_value(); }

    QuantizedArrangement shifted(const ZVec& by) const {
        QuantizedArrangement q = *this;
        for (std::size_t i = 0; i < n(); ++i) q.basepoint[i] += by[i];
        return q;
    }
};

inline SignSet quantized_feasible_signs(const QuantizedArrangement& X) {
    auto I = X.integral_indices();
    return enumerate_signs(
        I.size(), [&](const SignVector& a) { return polyhedron_feasible(X.chamber(a)).has_value(); },
        [&](const SignVector& a) { return X.has_lattice_point(X.chamber(a)); });
}

inline SignSet quantized_bounded_signs(const QuantizedArrangement& X) {
    return bounded_signs_on(X.lambda0, X.xi, X.integral_indices());
}

inline SignSet quantized_bounded_feasible_signs(const QuantizedArrangement& X) {
    return set_intersection(quantized_feasible_signs(X), quantized_bounded_signs(X));
}

// ---------------------------------------------------------------------------

struct RegularityReport {
    std::optional<bool> eta_regular;
    std::optional<bool> lambda_regular;
    bool xi_regular = false;
    std::optional<bool> quasi_regular;
    std::optional<bool> integral;
    bool unimodular = false;
    bool essential = false;

    /// eta- and xi-regular for polarized input; lambda- and xi-regular for quantized input.
    bool regular() const {
        if (eta_regular) return *eta_regular && xi_regular;
        return lambda_regular.value_or(false) && xi_regular;
    }
};

/// No point lies on more than k of the hyperplanes.
inline bool eta_regular(const PolarizedArrangement& X) {
    for (const auto& s : subsets_of_size(iota_indices(X.n()), X.k() + 1)) {
        RationalPolyhedron P(X.k());
        for (auto i : s) P.add_eq(to_q(X.lambda0.column(i)), -Q(X.eta[i]));
        if (polyhedron_feasible(P)) return false;
    }
    return true;
}

inline bool is_essential(const Lattice& L, const std::vector<std::size_t>& I) { return normals_rank(L, I) == L.k(); }

/// Essential, and no point lies strictly between k+1 of the hyperplane pairs.
inline bool quasi_regular(const QuantizedArrangement& X) {
    auto I = X.integral_indices();
    if (!is_essential(X.lambda0, I)) return false;
    for (const auto& s : subsets_of_size(I, X.k() + 1)) {
        RationalPolyhedron P(X.k());
        for (auto i : s) {
            QVec c = to_q(X.lambda0.column(i));
            P.add_gt(c, -1 - X.basepoint[i]);
            P.add_lt(c, -X.basepoint[i]);
        }
        if (polyhedron_feasible(P)) return false;
    }
    return true;
}

/// Quasi-regular and every rationally nonempty quantized chamber meets the lattice coset.
inline bool lambda_regular(const QuantizedArrangement& X) {
    if (!quasi_regular(X)) return false;
    auto I = X.integral_indices();
    bool ok = true;
    enumerate_signs(
        I.size(),
        [&](const SignVector& a) { return ok && polyhedron_feasible(X.chamber(a)).has_value(); },
        [&](const SignVector& a) {
            auto P = X.chamber(a);
            if (ok && polyhedron_feasible(P) && !X.has_lattice_point(P)) ok = false;
            return false;
        });
    return ok;
}

inline RegularityReport regularity_report(const PolarizedArrangement& X) {
    RegularityReport r;
    r.eta_regular = eta_regular(X);
    r.xi_regular = covector_regular(X.lambda0, X.xi, iota_indices(X.n()));
    r.unimodular = is_unimodular(X.lambda0);
    r.essential = is_essential(X.lambda0, iota_indices(X.n()));
    return r;
}

inline RegularityReport regularity_report(const QuantizedArrangement& X) {
    RegularityReport r;
    auto I = X.integral_indices();
    r.quasi_regular = quasi_regular(X);
    r.lambda_regular = *r.quasi_regular && lambda_regular(X);
    r.xi_regular = covector_regular(X.lambda0, X.xi, I);
    r.integral = I.size() == X.n();
    r.unimodular = is_unimodular(X.lambda0);
    r.essential = is_essential(X.lambda0, I);
    return r;
}

// ---------------------------------------------------------------------------

struct LinkReport {
    bool linked = false;
    /// Smallest k <= search bound with F(Lambda + r k eta) = F(Lambda) for r = 1, 2.
    std::optional<int> translation_k;
};

inline bool same_lattice(const Lattice& a, const Lattice& b) {
    return a.n == b.n && hermite_normal_form(a.basis, a.n) == hermite_normal_form(b.basis, b.n);
}

/// Covector given on the basis of `from`, re-expressed on the basis of `to` (same lattice).
inline ZVec transport_covector(const Lattice& from, const ZVec& xi, const Lattice& to) {
    QMat bt = transpose(to_q(from.basis), from.n);
    ZVec out;
    for (const auto& row : to.basis) {
        auto c = solve_linear(bt, to_q(row), from.k());
        if (!c) throw Error("ParameterMismatch", "lattices differ");
        Q v = 0;
        for (std::size_t j = 0; j < from.k(); ++j) v += (*c)[j] * xi[j];
        out.push_back(v.get_num());
    }
    return out;
}

/// Linkage of a polarized and a quantized arrangement with the same lattice and covector.
inline LinkReport is_linked(const PolarizedArrangement& X, const QuantizedArrangement& Y, int k_max = 4) {
    if (!same_lattice(X.lambda0, Y.lambda0)) throw Error("ParameterMismatch", "lattices differ");
    QVec xi_on_y = to_q(transport_covector(X.lambda0, X.xi, Y.lambda0));
    if (xi_on_y != to_q(Y.xi)) throw Error("ParameterMismatch", "covectors differ");
    if (!regularity_report(X).regular() || !regularity_report(Y).regular())
        throw Error("NotRegular", "linkage needs regular parameters");
    auto I = Y.integral_indices();
    SignSet proj;
    for (const auto& a : feasible_signs(X)) proj.push_back(restrict_signs(a, I));
    std::sort(proj.begin(), proj.end());
    proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
    auto FY = quantized_feasible_signs(Y);
    LinkReport rep;
    rep.linked = proj == FY;
    for (int k = 1; k <= k_max && !rep.translation_k; ++k) {
        bool ok = true;
        for (int r = 1; r <= 2 && ok; ++r) {
            ZVec by_vec(X.n());
            for (std::size_t i = 0; i < X.n(); ++i) by_vec[i] = X.eta[i] * r * k;
            ok = quantized_feasible_signs(Y.shifted(by_vec)) == FY;
        }
        if (ok) rep.translation_k = k;
    }
    return rep;
}

// ---------------------------------------------------------------------------

/// Restriction to the integral indices; requires a vertex. The projected lattice is built unchecked.
inline QuantizedArrangement essentialize(const QuantizedArrangement& X) {
    auto I = X.integral_indices();
    if (!is_essential(X.lambda0, I)) throw Error("Inessential", "arrangement has no vertex");
    QuantizedArrangement out;
    out.lambda0.n = I.size();
    out.lambda0.basis.assign(X.k(), ZVec());
    for (std::size_t j = 0; j < X.k(); ++j)
        for (auto i : I) out.lambda0.basis[j].push_back(X.lambda0.basis[j][i]);
    for (auto i : I) out.basepoint.push_back(X.basepoint[i]);
    out.xi = X.xi;
    return out;
}

struct ChamberCount {
    std::size_t count = 0;
    std::size_t bound = 0;
    bool equal = false;
};

inline ChamberCount chamber_count_check(const QuantizedArrangement& X) {
    ChamberCount c;
    c.count = quantized_feasible_signs(X).size();
    c.bound = independent_sets(X.lambda0, X.integral_indices()).size();
    c.equal = c.count == c.bound;
    return c;
}

// ---------------------------------------------------------------------------

struct EquivalenceKey {
    ZMat hnf;
    SignSet feasible;
    SignSet bounded;
    std::optional<std::vector<std::size_t>> integral_indices;

    bool operator==(const EquivalenceKey&) const = default;

    std::string serialize() const {
        std::string s = "L:";
        for (const auto& r : hnf) {
            s += "[";
            for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i].get_str();
            s += "]";
        }
        if (integral_indices) {
            s += ";I:";
            for (auto i : *integral_indices) s += std::to_string(i + 1) + ",";
        }
        s += ";F:";
        for (const auto& a : feasible) s += a + ",";
        s += ";B:";
        for (const auto& a : bounded) s += a + ",";
        return s;
    }
};

inline EquivalenceKey equivalence_key(const PolarizedArrangement& X) {
    return {hermite_normal_form(X.lambda0.basis, X.n()), feasible_signs(X), bounded_signs(X), std::nullopt};
}

inline EquivalenceKey equivalence_key(const QuantizedArrangement& X) {
    return {hermite_normal_form(X.lambda0.basis, X.n()), quantized_feasible_signs(X), quantized_bounded_signs(X),
            X.integral_indices()};
}

}  // namespace hypertoric
