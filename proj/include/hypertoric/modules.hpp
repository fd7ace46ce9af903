#pragma once

// Decomposition matrices, Grothendieck pairings, shuffling and twisting bimodules.

#include <memory>
#include <optional>
#include <vector>

#include "hypertoric/algebra.hpp"

namespace hypertoric {

// ---------------------------------------------------------------------------
// Standard modules and decomposition matrices

/// Rows are standard modules S_alpha, columns simples L_beta, both indexed by `signs`.
struct DecompositionMatrix {
    SignSet signs;
    ZMat matrix;
};

namespace detail {

/// Chambers cut out by '+' : h_i >= 0 and '-' : h_i <= minus_level, with h_i = offset_i + <normal_i, t>.
struct ChamberSystem {
    std::size_t k = 0;
    QVec offset;
    std::vector<QVec> normals;
    Q minus_level = 0;
    QVec xi;

    RationalPolyhedron chamber(const SignVector& a) const {
        RationalPolyhedron P(k);
        for (std::size_t i = 0; i < a.size(); ++i) add_sign_constraint(P, normals[i], offset[i], a[i], minus_level);
        return P;
    }

    Q value(std::size_t i, const QVec& t) const {
        Q v = offset[i];
        for (std::size_t j = 0; j < k; ++j) v += normals[i][j] * t[j];
        return v;
    }
};

inline DecompositionMatrix decomposition_matrix(const ChamberSystem& sys, const SignSet& P) {
    DecompositionMatrix out{P, ZMat(P.size(), ZVec(P.size(), 0))};
    for (std::size_t a = 0; a < P.size(); ++a) {
        const auto& alpha = P[a];
        auto top = lp_maximize(sys.chamber(alpha), sys.xi);
        if (top.status != LpOutcome::Optimal) throw Error("NotRegular", "xi is unbounded on a bounded chamber");
        std::vector<std::size_t> tight;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            Q h = sys.value(i, top.x);
            if ((alpha[i] == '+' && h == 0) || (alpha[i] == '-' && h == sys.minus_level)) tight.push_back(i);
        }
        for (std::size_t b = 0; b < P.size(); ++b) {
            const auto& beta = P[b];
            bool agree = true;
            for (auto i : tight) agree = agree && beta[i] == alpha[i];
            if (!agree) continue;
            // Delta_beta inside the cone at the xi-maximal vertex of Delta_alpha.
            auto cb = sys.chamber(beta);
            bool inside = true;
            for (auto i : tight) {
                if (!inside) break;
                if (alpha[i] == '+') {
                    auto r = lp_minimize(cb, sys.normals[i]);
                    inside = r.status == LpOutcome::Optimal && r.value + sys.offset[i] >= 0;
                } else {
                    auto r = lp_maximize(cb, sys.normals[i]);
                    inside = r.status == LpOutcome::Optimal && r.value + sys.offset[i] <= sys.minus_level;
                }
            }
            if (inside) out.matrix[a][b] = 1;
        }
    }
    return out;
}

}  // namespace detail

inline DecompositionMatrix decomposition_matrix(const PolarizedArrangement& X) {
    X.validate();
    if (!regularity_report(X).regular()) throw Error("NotRegular", "decomposition matrix needs a regular arrangement");
    detail::ChamberSystem sys;
    sys.k = X.k();
    sys.offset = to_q(X.eta);
    for (std::size_t i = 0; i < X.n(); ++i) sys.normals.push_back(to_q(X.lambda0.column(i)));
    sys.xi = to_q(X.xi);
    return detail::decomposition_matrix(sys, bounded_feasible_signs(X));
}

/// Regular polarized arrangement linked to a regular integral quantized one, searched near its basepoint.
inline PolarizedArrangement linked_polarized(const QuantizedArrangement& Y) {
    Y.validate();
    auto rep = regularity_report(Y);
    if (!rep.regular() || !rep.integral.value_or(false))
        throw Error("NotRegular", "linkage needs a regular integral arrangement");
    std::size_t n = Y.n();
    std::vector<std::size_t> masks(std::size_t{1} << n);
    for (std::size_t m = 0; m < masks.size(); ++m) masks[m] = m;
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::size_t a, std::size_t b) { return __builtin_popcountll(a) < __builtin_popcountll(b); });
    for (int scale : {1, 2}) {
        for (auto m : masks) {
            PolarizedArrangement X{Y.lambda0, ZVec(n), Y.xi};
            for (std::size_t i = 0; i < n; ++i) X.eta[i] = scale * Y.basepoint[i].get_num() + ((m >> i & 1) ? 1 : 0);
            if (!regularity_report(X).regular()) continue;
            if (is_linked(X, Y, 1).linked) return X;
        }
    }
    throw Error("NotRegular", "no linked polarized arrangement found near the basepoint");
}

/// Through a linked polarized arrangement, whose chambers share the sign vectors.
inline DecompositionMatrix decomposition_matrix(const QuantizedArrangement& X) {
    auto D = decomposition_matrix(linked_polarized(X));
    if (D.signs != quantized_bounded_feasible_signs(X)) throw Error("NotRegular", "linked arrangement changes P");
    return D;
}

/// Unit diagonal and an ordering of the indices making the matrix upper triangular.
inline bool is_unitriangular(const ZMat& D) {
    std::size_t n = D.size();
    for (std::size_t i = 0; i < n; ++i)
        if (D[i][i] != 1) return false;
    std::vector<bool> placed(n, false);
    for (std::size_t round = 0; round < n; ++round) {
        // Place an index with no nonzero entries in its column from unplaced rows.
        std::optional<std::size_t> pick;
        for (std::size_t c = 0; c < n && !pick; ++c) {
            if (placed[c]) continue;
            bool free = true;
            for (std::size_t r = 0; r < n && free; ++r) free = r == c || placed[r] || D[r][c] == 0;
            if (free) pick = c;
        }
        if (!pick) return false;
        placed[*pick] = true;
    }
    return true;
}

inline ZMat transpose_z(const ZMat& m) {
    if (m.empty()) return {};
    ZMat t(m[0].size(), ZVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

// ---------------------------------------------------------------------------
// Grothendieck pairing between Gale-dual instances

struct PairingReport {
    SignSet signs;
    QMat projective;  ///< <[P_a], [P^!_b]>
    QMat standard;    ///< <[S_a], [S^!_b]>
    QMat simple;      ///< <[L_a], [L^!_b]>
    bool bases_agree() const { return projective == standard && standard == simple; }
};

inline PairingReport grothendieck_pairing(const PolarizedArrangement& X, const PolarizedArrangement& Xd) {
    if (!same_lattice(orthogonal_complement_lattice(X.lambda0), Xd.lambda0))
        throw Error("NotDualPair", "lattices are not orthogonal complements");
    auto D = decomposition_matrix(X), Dd = decomposition_matrix(Xd);
    if (D.signs != Dd.signs) throw Error("NotDualPair", "bounded feasible sets differ");
    std::size_t m = D.signs.size();
    PairingReport r;
    r.signs = D.signs;
    r.projective.assign(m, QVec(m, 0));
    for (std::size_t a = 0; a < m; ++a) {
        int minus = 0;
        for (char c : D.signs[a]) minus += c == '-';
        r.projective[a][a] = minus % 2 ? -1 : 1;
    }
    auto q = [](const ZMat& z) { return to_q(z); };
    auto tr = [](const QMat& a) {
        QMat t(a.empty() ? 0 : a[0].size(), QVec(a.size()));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
        return t;
    };
    if (m == 0) return r;
    // [P] = D^T [S] and [S] = D [L].
    QMat Dt_inv = inverse(tr(q(D.matrix))), Dd_inv = inverse(q(Dd.matrix));
    r.standard = matmul(matmul(Dt_inv, r.projective), Dd_inv);
    QMat C = q(matmul(transpose_z(D.matrix), D.matrix)), Cd = q(matmul(transpose_z(Dd.matrix), Dd.matrix));
    r.simple = matmul(matmul(inverse(C), r.projective), tr(inverse(Cd)));
    return r;
}

// ---------------------------------------------------------------------------
// Bimodules

/// Graded bimodule with basis paths from left vertices to right vertices.
struct GradedBimodule {
    std::shared_ptr<const GradedAlgebra> left, right;
    std::vector<BasisElement> basis;  ///< source indexes left vertices, target indexes right vertices
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> left_action;   ///< (left basis, module basis)
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> right_action;  ///< (module basis, right basis)
    int max_degree = 0;
    bool finite = false;

    std::size_t dim() const { return basis.size(); }
    bool known(int d) const { return finite || d <= max_degree; }

    SparseVec act_left(std::size_t a, std::size_t m) const {
        auto it = left_action.find({a, m});
        return it == left_action.end() ? SparseVec{} : it->second;
    }
    SparseVec act_right(std::size_t m, std::size_t b) const {
        auto it = right_action.find({m, b});
        return it == right_action.end() ? SparseVec{} : it->second;
    }

    /// dims[l][r] = dim e_l M e_r over all computed degrees.
    ZMat vertex_dims() const {
        ZMat t(left->vertices.size(), ZVec(right->vertices.size(), 0));
        for (const auto& b : basis) t[b.source][b.target] += 1;
        return t;
    }

    std::vector<std::size_t> degree_dims() const {
        std::vector<std::size_t> out;
        for (const auto& b : basis) {
            if (out.size() <= static_cast<std::size_t>(b.degree)) out.resize(b.degree + 1, 0);
            ++out[b.degree];
        }
        return out;
    }
};

/// Bimodule structure on a path space: both actions concatenate paths and reduce.
inline GradedBimodule bimodule_from_paths(const CubePathSpace& M, std::shared_ptr<const GradedAlgebra> left,
                                          std::shared_ptr<const GradedAlgebra> right) {
    GradedBimodule B;
    B.left = left;
    B.right = right;
    B.basis = M.basis();
    B.max_degree = M.max_degree();
    B.finite = M.finite();
    const auto& L = *left;
    const auto& R = *right;
    for (std::size_t m = 0; m < B.dim(); ++m) {
        const auto& mb = B.basis[m];
        const auto& msrc = M.sources()[mb.source];
        const auto& mtgt = M.targets()[mb.target];
        for (std::size_t a = 0; a < L.dim(); ++a) {
            if (L.vertices[L.basis[a].target] != msrc) continue;
            int d = L.basis[a].degree + mb.degree;
            if (!M.known(d)) continue;
            auto path = L.basis[a].path;
            for (std::size_t c = 0; c < path.size(); ++c) path[c] += mb.path[c];
            auto v = M.reduce(L.vertices[L.basis[a].source], path, true);
            if (!v.empty()) B.left_action[{a, m}] = std::move(v);
        }
        for (std::size_t b = 0; b < R.dim(); ++b) {
            if (R.vertices[R.basis[b].source] != mtgt) continue;
            int d = R.basis[b].degree + mb.degree;
            if (!M.known(d)) continue;
            auto path = mb.path;
            for (std::size_t c = 0; c < path.size(); ++c) path[c] += R.basis[b].path[c];
            auto v = M.reduce(msrc, path, true);
            if (!v.empty()) B.right_action[{m, b}] = std::move(v);
        }
    }
    return B;
}

/// Module axioms for both actions and their commutation, on all basis triples within the computed range.
inline bool bimodule_check(const GradedBimodule& M) {
    const auto& L = *M.left;
    const auto& R = *M.right;
    auto left_vec = [&](std::size_t a, const SparseVec& v) {
        SparseVec out;
        for (const auto& [m, c] : v) axpy(out, c, M.act_left(a, m));
        return out;
    };
    auto right_vec = [&](const SparseVec& v, std::size_t b) {
        SparseVec out;
        for (const auto& [m, c] : v) axpy(out, c, M.act_right(m, b));
        return out;
    };
    for (const auto& [key, v] : M.left_action)
        for (const auto& [r, c] : v)
            if (M.basis[r].degree != L.basis[key.first].degree + M.basis[key.second].degree) return false;
    for (const auto& [key, v] : M.right_action)
        for (const auto& [r, c] : v)
            if (M.basis[r].degree != M.basis[key.first].degree + R.basis[key.second].degree) return false;
    for (std::size_t m = 0; m < M.dim(); ++m) {
        int dm = M.basis[m].degree;
        for (std::size_t a = 0; a < L.dim(); ++a) {
            if (L.basis[a].target != M.basis[m].source) continue;
            for (std::size_t b = 0; b < R.dim(); ++b) {
                if (R.basis[b].source != M.basis[m].target) continue;
                if (!M.known(dm + L.basis[a].degree + R.basis[b].degree)) continue;
                if (right_vec(M.act_left(a, m), b) != left_vec(a, M.act_right(m, b))) return false;
            }
            for (std::size_t a2 = 0; a2 < L.dim(); ++a2) {
                if (L.basis[a2].target != L.basis[a].source) continue;
                if (!M.known(dm + L.basis[a].degree + L.basis[a2].degree)) continue;
                SparseVec lhs;
                for (const auto& [p, c] : L.product(a2, a)) axpy(lhs, c, M.act_left(p, m));
                if (lhs != left_vec(a2, M.act_left(a, m))) return false;
            }
        }
        for (std::size_t b = 0; b < R.dim(); ++b) {
            if (R.basis[b].source != M.basis[m].target) continue;
            for (std::size_t b2 = 0; b2 < R.dim(); ++b2) {
                if (R.basis[b2].source != R.basis[b].target) continue;
                int d = dm + R.basis[b].degree + R.basis[b2].degree;
                if (!M.known(d) || !R.known(R.basis[b].degree + R.basis[b2].degree)) continue;
                SparseVec rhs;
                for (const auto& [p, c] : R.product(b, b2)) axpy(rhs, c, M.act_right(m, p));
                if (rhs != right_vec(M.act_right(m, b), b2)) return false;
            }
        }
    }
    return true;
}

namespace detail {

inline void require_regular(const PolarizedArrangement& X, bool need_eta, bool need_xi) {
    auto rep = regularity_report(X);
    if (need_eta && !rep.eta_regular.value_or(false)) throw Error("NotRegular", "eta is not regular");
    if (need_xi && !rep.xi_regular) throw Error("NotRegular", "xi is not regular");
}

}  // namespace detail

/// e_{eta'} A(-,xi) e_eta as an (e_{eta'} A(-,xi) e_{eta'}, e_eta A(-,xi) e_eta)-bimodule.
/// The two corner algebras agree with A(eta', xi) and A(eta, xi).
inline GradedBimodule shuffling_bimodule(const Lattice& L, const ZVec& eta, const ZVec& eta2, const ZVec& xi,
                                         int max_degree = -1) {
    PolarizedArrangement X{L, eta, xi}, X2{L, eta2, xi};
    X.validate();
    X2.validate();
    detail::require_regular(X, true, true);
    detail::require_regular(X2, true, true);
    if (max_degree < 0) max_degree = default_max_degree(L.n, L.k());
    auto B = bounded_signs(L, xi);
    auto killed = set_difference(all_signs(L.n), B);
    auto V = set_intersection(feasible_signs(X), B), V2 = set_intersection(feasible_signs(X2), B);
    CubePathSpace right(L, V, V, killed), left(L, V2, V2, killed), M(L, V2, V, killed);
    right.build(max_degree, true);
    left.build(max_degree, true);
    M.build(max_degree, true);
    return bimodule_from_paths(M, std::make_shared<GradedAlgebra>(algebra_from_paths(left)),
                               std::make_shared<GradedAlgebra>(algebra_from_paths(right)));
}

/// A(eta, xi') as an (A(eta, xi'), A(eta, -))-bimodule; the right action goes through the projection.
inline GradedBimodule twisting_bimodule(const Lattice& L, const ZVec& eta, const ZVec& xi, const ZVec& xi2,
                                        int max_degree = -1) {
    PolarizedArrangement X{L, eta, xi}, X2{L, eta, xi2};
    X.validate();
    X2.validate();
    detail::require_regular(X, true, true);
    detail::require_regular(X2, true, true);
    if (max_degree < 0) max_degree = default_max_degree(L.n, L.k());
    auto F = feasible_signs(X);
    auto B2 = bounded_signs(L, xi2);
    auto V = set_intersection(F, B2);
    CubePathSpace M(L, V, V, set_difference(F, B2));
    M.build(max_degree, true);
    auto left = std::make_shared<GradedAlgebra>(algebra_from_paths(M));
    auto right = std::make_shared<GradedAlgebra>(build_algebra(L, F, std::nullopt, max_degree));
    return bimodule_from_paths(M, left, right);
}

/// Degreewise comparison of the kernel of A(eta,-) -> A(eta,xi') with the ideal of the killed idempotents.
struct ProjectionKernelReport {
    std::vector<std::size_t> kernel_dims;
    std::vector<std::size_t> ideal_dims;
    bool matches() const { return kernel_dims == ideal_dims; }
};

inline ProjectionKernelReport projection_kernel(const GradedBimodule& twist) {
    const auto& R = *twist.right;
    const auto& T = *twist.left;
    ProjectionKernelReport rep;
    std::set<std::size_t> killed_vertices;
    for (std::size_t v = 0; v < R.vertices.size(); ++v)
        if (!T.vertex_index(R.vertices[v])) killed_vertices.insert(v);
    for (int d = 0; d <= R.max_degree; ++d) {
        auto piece = R.in_degree(d);
        std::map<std::size_t, std::size_t> col;
        for (std::size_t c = 0; c < piece.size(); ++c) col[piece[c]] = c;
        // Projection: r -> e_{s(r)} . r in A(eta, xi'), zero when an endpoint is killed.
        std::vector<std::size_t> image_basis;
        for (std::size_t i = 0; i < T.dim(); ++i)
            if (T.basis[i].degree == d) image_basis.push_back(i);
        std::map<std::size_t, std::size_t> icol;
        for (std::size_t c = 0; c < image_basis.size(); ++c) icol[image_basis[c]] = c;
        QMat proj(image_basis.size(), QVec(piece.size(), 0));
        for (std::size_t c = 0; c < piece.size(); ++c) {
            auto s = T.vertex_index(R.vertices[R.basis[piece[c]].source]);
            if (!s) continue;
            for (const auto& [m, v] : twist.act_right(T.idempotent(*s), piece[c])) proj[icol.at(m)][c] = v;
        }
        rep.kernel_dims.push_back(piece.size() - (proj.empty() ? 0 : matrix_rank(proj)));
        QMat ideal;
        for (std::size_t x = 0; x < R.dim(); ++x) {
            if (R.basis[x].degree > d || !killed_vertices.count(R.basis[x].target)) continue;
            for (std::size_t y = 0; y < R.dim(); ++y) {
                if (R.basis[y].source != R.basis[x].target || R.basis[x].degree + R.basis[y].degree != d) continue;
                auto p = R.product(x, y);
                if (p.empty()) continue;
                QVec row(piece.size(), 0);
                for (const auto& [i, v] : p) row[col.at(i)] = v;
                ideal.push_back(std::move(row));
            }
        }
        rep.ideal_dims.push_back(ideal.empty() ? 0 : matrix_rank(ideal));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Cartesian property of R e_eta over A(eta,-)

struct CartesianReport {
    std::vector<std::size_t> lhs_dims;  ///< R e_eta modulo paths through F_eta \ B
    std::vector<std::size_t> rhs_dims;  ///< A(-,xi) e_eta
    int compared_through = 0;
    bool rhs_finite = false;
    bool isomorphic() const { return lhs_dims == rhs_dims; }
};

/// Same comparison for explicit feasible and bounded sets; the bounded side must stabilize when expect_finite.
/// The multiplication map is surjective, so it is an isomorphism exactly when graded dimensions agree.
inline CartesianReport cartesian_check(const Lattice& L, const SignSet& F, const SignSet& B, int max_degree,
                                       bool expect_finite) {
    auto all = all_signs(L.n);
    CubePathSpace rhs(L, all, F, set_difference(all, B));
    rhs.build(max_degree, expect_finite);
    int through = rhs.finite() ? rhs.max_degree() + 1 : max_degree;
    CubePathSpace lhs(L, all, F, set_difference(F, B));
    lhs.build(through, false);
    CartesianReport rep;
    rep.rhs_finite = rhs.finite();
    rep.compared_through = through;
    rep.lhs_dims.assign(through + 1, 0);
    rep.rhs_dims.assign(through + 1, 0);
    for (const auto& b : lhs.basis()) ++rep.lhs_dims[b.degree];
    for (const auto& b : rhs.basis()) ++rep.rhs_dims[b.degree];
    return rep;
}

inline CartesianReport cartesian_check(const Lattice& L, const ZVec& eta, const ZVec& xi, int max_degree = -1) {
    PolarizedArrangement X{L, eta, xi};
    X.validate();
    if (max_degree < 0) max_degree = default_max_degree(L.n, L.k());
    bool regular_xi = covector_regular(L, xi, iota_indices(L.n));
    return cartesian_check(L, feasible_signs(X), bounded_signs(L, xi), max_degree, regular_xi);
}

}  // namespace hypertoric
