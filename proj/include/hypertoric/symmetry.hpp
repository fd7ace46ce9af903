#pragma once

// Circuits, discriminantal walls, the Deligne quiver, and signed-permutation symmetries.

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "hypertoric/algebra.hpp"
#include "hypertoric/gale.hpp"

namespace hypertoric {

// ---------------------------------------------------------------------------
// Circuits and walls

struct Circuit {
    std::vector<std::size_t> indices;
    ZVec dependency;  ///< length n, supported on indices, primitive, first nonzero entry positive

    bool operator==(const Circuit&) const = default;
};

inline ZVec normalize_primitive(ZVec v) {
    Z g = 0;
    for (const auto& x : v) g = gcd(g, x);
    if (g == 0) return v;
    for (auto& x : v) x /= g;
    for (const auto& x : v)
        if (x != 0) {
            if (x < 0)
                for (auto& y : v) y = -y;
            break;
        }
    return v;
}

/// Minimal dependent sets of restricted normals, by increasing size.
inline std::vector<Circuit> circuits(const Lattice& L) {
    std::vector<Circuit> out;
    auto all = iota_indices(L.n);
    for (std::size_t size = 1; size <= std::min(L.n, L.k() + 1); ++size)
        for (const auto& C : subsets_of_size(all, size)) {
            if (normals_rank(L, C) != size - 1) continue;
            bool minimal = true;
            for (std::size_t drop = 0; drop < size && minimal; ++drop) {
                std::vector<std::size_t> sub;
                for (std::size_t j = 0; j < size; ++j)
                    if (j != drop) sub.push_back(C[j]);
                minimal = normals_rank(L, sub) == sub.size();
            }
            if (!minimal) continue;
            ZMat cols(L.k(), ZVec(size));
            for (std::size_t r = 0; r < L.k(); ++r)
                for (std::size_t j = 0; j < size; ++j) cols[r][j] = L.basis[r][C[j]];
            auto ker = integer_kernel(cols, size);
            ZVec dep(L.n, 0);
            for (std::size_t j = 0; j < size; ++j) dep[C[j]] = ker.at(0)[j];
            out.push_back({C, normalize_primitive(dep)});
        }
    return out;
}

/// Distinct wall covectors sum_i c_i eta_i = 0, one per circuit up to sign; each annihilates Lambda_0.
inline std::vector<ZVec> discriminantal_walls(const Lattice& L) {
    std::vector<ZVec> walls;
    for (const auto& c : circuits(L)) {
        for (const auto& b : L.basis)
            if (dot(c.dependency, b) != 0) throw Error("InvalidLattice", "dependency does not annihilate the lattice");
        if (std::find(walls.begin(), walls.end(), c.dependency) == walls.end()) walls.push_back(c.dependency);
    }
    return walls;
}

// ---------------------------------------------------------------------------
// Deligne quiver

struct DeligneVertex {
    SignVector side;  ///< sign of each wall covector at the chamber
    ZVec representative;  ///< integral eta of minimal max-norm, lexicographically least
};

struct DeligneQuiver {
    std::vector<ZVec> walls;
    std::vector<DeligneVertex> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  ///< both directions

    std::vector<std::size_t> neighbors(std::size_t v) const {
        std::vector<std::size_t> out;
        for (const auto& [a, b] : edges)
            if (a == v) out.push_back(b);
        return out;
    }
};

namespace detail {

inline RationalPolyhedron wall_chamber(const std::vector<ZVec>& walls, std::size_t n, const SignVector& side,
                                       std::optional<std::size_t> on_wall = std::nullopt) {
    RationalPolyhedron P(n);
    for (std::size_t w = 0; w < side.size(); ++w) {
        QVec a = to_q(walls[w]);
        if (on_wall && *on_wall == w) {
            P.add_eq(a, 0);
            continue;
        }
        if (side[w] == '-')
            for (auto& x : a) x = -x;
        P.add_ge(a, 1);
    }
    return P;
}

inline ZVec chamber_representative(const RationalPolyhedron& C, std::size_t n) {
    for (Z R = 0;; ++R) {
        RationalPolyhedron box = C;
        for (std::size_t i = 0; i < n; ++i) {
            QVec e(n, 0);
            e[i] = 1;
            box.add_ge(e, Q(-R));
            box.add_le(e, Q(R));
        }
        auto pts = lattice_points_in_polytope(box);
        if (pts.empty()) continue;
        return *std::min_element(pts.begin(), pts.end());
    }
}

}  // namespace detail

/// Chambers of the wall arrangement in parameter space, each with an integral representative,
/// joined in both directions when separated by a single wall along a shared facet.
inline DeligneQuiver deligne_quiver(const Lattice& L) {
    DeligneQuiver Q;
    Q.walls = discriminantal_walls(L);
    std::size_t m = Q.walls.size(), n = L.n;
    auto feasible = [&](const SignVector& s) {
        std::vector<ZVec> sub(Q.walls.begin(), Q.walls.begin() + static_cast<std::ptrdiff_t>(s.size()));
        return polyhedron_feasible(detail::wall_chamber(sub, n, s)).has_value();
    };
    for (const auto& s : enumerate_signs(m, feasible, feasible))
        Q.vertices.push_back({s, detail::chamber_representative(detail::wall_chamber(Q.walls, n, s), n)});
    for (std::size_t a = 0; a < Q.vertices.size(); ++a)
        for (std::size_t b = 0; b < Q.vertices.size(); ++b) {
            if (a == b) continue;
            const auto &sa = Q.vertices[a].side, &sb = Q.vertices[b].side;
            std::vector<std::size_t> diff;
            for (std::size_t w = 0; w < m; ++w)
                if (sa[w] != sb[w]) diff.push_back(w);
            if (diff.size() != 1) continue;
            if (polyhedron_feasible(detail::wall_chamber(Q.walls, n, sa, diff[0]))) Q.edges.emplace_back(a, b);
        }
    return Q;
}

/// F_eta and F_eta'' both inside F_eta', for regular parameters.
inline bool minimal_path_check(const Lattice& L, const ZVec& eta, const ZVec& eta_mid, const ZVec& eta_end) {
    ZVec zero(L.k(), 0);
    SignSet F[3];
    const ZVec* etas[3] = {&eta, &eta_mid, &eta_end};
    for (int i = 0; i < 3; ++i) {
        PolarizedArrangement X{L, *etas[i], zero};
        X.validate();
        if (!eta_regular(X)) throw Error("NotRegular", "parameter lies on a discriminantal wall");
        F[i] = feasible_signs(X);
    }
    for (const auto& a : set_intersection(F[0], F[2]))
        if (!contains(F[1], a)) return false;
    return true;
}

struct DeligneCertificate {
    std::size_t paths_checked = 0;
    std::vector<std::array<std::size_t, 3>> failures;
    bool holds() const { return failures.empty(); }
};

/// minimal_path_check on every two-step path u - v - w crossing two distinct walls.
inline DeligneCertificate certify_minimal_paths(const Lattice& L, const DeligneQuiver& Q) {
    DeligneCertificate cert;
    for (std::size_t v = 0; v < Q.vertices.size(); ++v) {
        auto nb = Q.neighbors(v);
        for (auto u : nb)
            for (auto w : nb) {
                if (u == w) continue;
                std::size_t sep = 0;
                for (std::size_t i = 0; i < Q.walls.size(); ++i) sep += Q.vertices[u].side[i] != Q.vertices[w].side[i];
                if (sep != 2) continue;
                ++cert.paths_checked;
                if (!minimal_path_check(L, Q.vertices[u].representative, Q.vertices[v].representative,
                                        Q.vertices[w].representative))
                    cert.failures.push_back({u, v, w});
            }
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Signed permutations

/// x -> g x with (g x)_{perm[i]} = signs[i] * x_i.
struct SignedPermutation {
    std::vector<std::size_t> perm;
    std::vector<int> signs;

    static SignedPermutation identity(std::size_t n) {
        SignedPermutation g;
        g.perm.resize(n);
        std::iota(g.perm.begin(), g.perm.end(), 0);
        g.signs.assign(n, 1);
        return g;
    }

    std::size_t size() const { return perm.size(); }

    /// (this * h) x = this(h x).
    SignedPermutation compose(const SignedPermutation& h) const {
        SignedPermutation g;
        g.perm.resize(size());
        g.signs.resize(size());
        for (std::size_t i = 0; i < size(); ++i) {
            g.perm[i] = perm[h.perm[i]];
            g.signs[i] = signs[h.perm[i]] * h.signs[i];
        }
        return g;
    }

    SignedPermutation inverse() const {
        SignedPermutation g;
        g.perm.resize(size());
        g.signs.resize(size());
        for (std::size_t i = 0; i < size(); ++i) {
            g.perm[perm[i]] = i;
            g.signs[perm[i]] = signs[i];
        }
        return g;
    }

    ZVec apply(const ZVec& x) const {
        ZVec y(size());
        for (std::size_t i = 0; i < size(); ++i) y[perm[i]] = signs[i] * x[i];
        return y;
    }

    bool operator==(const SignedPermutation&) const = default;
    auto operator<=>(const SignedPermutation&) const = default;
};

inline bool preserves_lattice(const Lattice& L, const SignedPermutation& g) {
    for (const auto& b : L.basis)
        if (!L.contains(g.apply(b))) return false;
    return true;
}

struct WeylGroups {
    std::vector<SignedPermutation> W;  ///< fix Lambda_0 pointwise
    std::vector<SignedPermutation> V;  ///< act trivially on Z^n / Lambda_0
};

/// All signed permutations preserving Lambda_0, found by matching restricted normals up to sign.
inline std::vector<SignedPermutation> lattice_symmetries(const Lattice& L, std::size_t budget = 8) {
    std::size_t n = L.n, k = L.k();
    if (n > budget) throw Error("BudgetExceeded", "signed-permutation enumeration needs n <= " + std::to_string(budget));
    // g preserves Lambda_0 iff some linear M has M^T col_{perm(i)} = sign_i col_i for all i.
    std::vector<QVec> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = to_q(L.column(i));
    std::vector<std::size_t> basis_idx;
    {
        QMat acc;
        for (std::size_t i = 0; i < n && basis_idx.size() < k; ++i) {
            auto t = acc;
            t.push_back(col[i]);
            if (matrix_rank(t) > acc.size()) {
                acc = t;
                basis_idx.push_back(i);
            }
        }
    }
    std::set<SignedPermutation> found;
    SignedPermutation g;
    g.perm.assign(n, 0);
    g.signs.assign(n, 1);
    std::vector<bool> used(n, false);
    auto neg = [](QVec v) {
        for (auto& x : v) x = -x;
        return v;
    };
    std::function<void(std::size_t)> assign_basis;
    std::function<void(std::size_t, const QMat&)> assign_rest;
    assign_rest = [&](std::size_t pos, const QMat& Minv_t) {
        if (pos == n) {
            if (preserves_lattice(L, g)) found.insert(g);
            return;
        }
        if (std::find(basis_idx.begin(), basis_idx.end(), pos) != basis_idx.end()) {
            assign_rest(pos + 1, Minv_t);
            return;
        }
        // Image normal u = M^{-T} col_pos must equal sign * col_{target}.
        QVec u(k, 0);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) u[r] += Minv_t[r][c] * col[pos][c];
        for (std::size_t t = 0; t < n; ++t) {
            if (used[t]) continue;
            for (int s : {1, -1}) {
                if ((s == 1 ? col[t] : neg(col[t])) != u) continue;
                used[t] = true;
                g.perm[pos] = t;
                g.signs[pos] = s;
                assign_rest(pos + 1, Minv_t);
                used[t] = false;
            }
        }
    };
    assign_basis = [&](std::size_t j) {
        if (j == basis_idx.size()) {
            // M^T Cs = Ci with Cs columns col_{perm(i)}, Ci columns sign_i col_i; M^{-T} = Cs Ci^{-1}.
            QMat Cs(k, QVec(k)), Ci(k, QVec(k));
            for (std::size_t c = 0; c < k; ++c) {
                auto i = basis_idx[c];
                for (std::size_t r = 0; r < k; ++r) {
                    Cs[r][c] = col[g.perm[i]][r];
                    Ci[r][c] = g.signs[i] * col[i][r];
                }
            }
            if (matrix_rank(Cs) < k) return;
            assign_rest(0, matmul(Cs, inverse(Ci)));
            return;
        }
        auto i = basis_idx[j];
        for (std::size_t t = 0; t < n; ++t) {
            if (used[t]) continue;
            for (int s : {1, -1}) {
                used[t] = true;
                g.perm[i] = t;
                g.signs[i] = s;
                assign_basis(j + 1);
                used[t] = false;
            }
        }
    };
    assign_basis(0);
    return {found.begin(), found.end()};
}

inline WeylGroups weyl_groups(const Lattice& L, std::size_t budget = 8) {
    WeylGroups out;
    for (const auto& g : lattice_symmetries(L, budget)) {
        bool fixes = true;
        for (const auto& b : L.basis) fixes = fixes && g.apply(b) == b;
        if (fixes) out.W.push_back(g);
        bool trivial_on_quotient = true;
        for (std::size_t i = 0; i < L.n && trivial_on_quotient; ++i) {
            ZVec e(L.n, 0);
            e[i] = 1;
            auto d = g.apply(e);
            for (std::size_t j = 0; j < L.n; ++j) d[j] -= e[j];
            trivial_on_quotient = L.contains(d);
        }
        if (trivial_on_quotient) out.V.push_back(g);
    }
    return out;
}

/// (g a)_{perm[i]} = a_i, flipped where signs[i] = -1.
inline SignVector act_on_signs(const SignedPermutation& g, const SignVector& a) {
    if (a.size() != g.size()) throw Error("DimensionMismatch", "sign vector has wrong length");
    SignVector out(a.size(), '+');
    for (std::size_t i = 0; i < a.size(); ++i) {
        char c = a[i];
        if (g.signs[i] < 0) c = c == '+' ? '-' : '+';
        out[g.perm[i]] = c;
    }
    return out;
}

inline SignSet act_on_signs(const SignedPermutation& g, const SignSet& s) {
    SignSet out;
    for (const auto& a : s) out.push_back(act_on_signs(g, a));
    std::sort(out.begin(), out.end());
    return out;
}

/// eta -> g eta on Z^n; requires g to preserve Lambda_0.
inline ZVec act_on_parameters(const Lattice& L, const SignedPermutation& g, const ZVec& eta) {
    if (!preserves_lattice(L, g)) throw Error("NotASymmetry", "signed permutation does not preserve the lattice");
    return g.apply(eta);
}

/// xi -> xi o g^{-1} on Lambda_0, in basis coordinates.
inline ZVec act_on_covector(const Lattice& L, const SignedPermutation& g, const ZVec& xi) {
    if (!preserves_lattice(L, g)) throw Error("NotASymmetry", "signed permutation does not preserve the lattice");
    auto ginv = g.inverse();
    QMat bt = transpose(to_q(L.basis), L.n);
    ZVec out;
    for (const auto& b : L.basis) {
        auto c = solve_linear(bt, to_q(ginv.apply(b)), L.k());
        Q v = 0;
        for (std::size_t j = 0; j < L.k(); ++j) v += (*c)[j] * xi[j];
        out.push_back(v.get_num());
    }
    return out;
}

/// A(eta, xi) -> A(g eta, g xi) sending the path (alpha, m) to (g alpha, m permuted) is a graded algebra isomorphism.
inline bool relabel_check(const Lattice& L, const SignedPermutation& g, const ZVec& eta, const ZVec& xi,
                          int max_degree = -1) {
    PolarizedArrangement X{L, eta, xi};
    PolarizedArrangement Y{L, act_on_parameters(L, g, eta), act_on_covector(L, g, xi)};
    if (max_degree < 0) max_degree = default_max_degree(L.n, L.k());
    auto A = build_algebra(X, max_degree);
    auto FY = feasible_signs(Y), BY = bounded_signs(Y);
    auto VY = set_intersection(FY, BY);
    if (act_on_signs(g, A.vertices) != VY) return false;
    CubePathSpace target(L, VY, VY, set_difference(FY, BY));
    target.build(max_degree, true);
    auto B = algebra_from_paths(target);
    if (A.dim() != B.dim()) return false;
    // Image of each basis path.
    std::vector<SparseVec> phi(A.dim());
    QMat m(A.dim(), QVec(B.dim(), 0));
    for (std::size_t i = 0; i < A.dim(); ++i) {
        // Arrows flipping a sign-reversed coordinate from + to - pick up a sign.
        const auto& src = A.vertices[A.basis[i].source];
        std::vector<unsigned> p(L.n);
        int sign = 1;
        for (std::size_t c = 0; c < L.n; ++c) {
            unsigned m = A.basis[i].path[c];
            p[g.perm[c]] = m;
            unsigned down = src[c] == '+' ? (m + 1) / 2 : m / 2;
            if (g.signs[c] < 0 && down % 2) sign = -sign;
        }
        phi[i] = target.reduce(act_on_signs(g, src), p);
        if (sign < 0)
            for (auto& [j, v] : phi[i]) v = -v;
        for (const auto& [j, v] : phi[i]) m[i][j] = v;
    }
    if (matrix_rank(m) != A.dim()) return false;
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j) {
            if (A.basis[i].target != A.basis[j].source) continue;
            SparseVec lhs;
            for (const auto& [r, v] : A.product(i, j)) axpy(lhs, v, phi[r]);
            if (lhs != B.multiply(phi[i], phi[j])) return false;
        }
    return true;
}

}  // namespace hypertoric
