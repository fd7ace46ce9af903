#pragma once

// Matroids, flats, cone data, cells, Goldie ranks and h-vectors.

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "hypertoric/arrangement.hpp"
#include "hypertoric/gale.hpp"

namespace hypertoric {

using IndexSet = std::vector<std::size_t>;

inline IndexSet complement(const IndexSet& s, std::size_t n) {
    IndexSet out;
    for (std::size_t i = 0, p = 0; i < n; ++i) {
        if (p < s.size() && s[p] == i) ++p;
        else out.push_back(i);
    }
    return out;
}

inline bool is_subset(const IndexSet& a, const IndexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline IndexSet mask_to_set(std::size_t mask, std::size_t n) {
    IndexSet s;
    for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) s.push_back(i);
    return s;
}

/// Linear matroid on the columns of a lattice basis.
struct Matroid {
    std::size_t n = 0;
    std::vector<QVec> columns;

    static Matroid of(const Lattice& L) {
        Matroid m;
        m.n = L.n;
        for (std::size_t i = 0; i < L.n; ++i) m.columns.push_back(to_q(L.column(i)));
        return m;
    }

    /// Dual matroid, represented by the orthogonal complement lattice.
    static Matroid dual_of(const Lattice& L) { return of(orthogonal_complement_lattice(L)); }

    std::size_t rank(const IndexSet& s) const {
        QMat m;
        for (auto i : s) m.push_back(columns[i]);
        return matrix_rank(m);
    }

    std::size_t rank() const { return rank(iota_indices(n)); }

    IndexSet closure(const IndexSet& s) const {
        std::size_t r = rank(s);
        IndexSet out;
        for (std::size_t i = 0; i < n; ++i) {
            IndexSet t = s;
            t.push_back(i);
            if (rank(t) == r) out.push_back(i);
        }
        return out;
    }

    bool independent(const IndexSet& s) const { return rank(s) == s.size(); }

    /// Minimal dependent sets, ordered by size then lexicographically.
    std::vector<IndexSet> circuits() const {
        std::vector<IndexSet> out;
        for (std::size_t size = 1; size <= n; ++size)
            for (const auto& s : subsets_of_size(iota_indices(n), size)) {
                if (independent(s)) continue;
                bool minimal = true;
                for (std::size_t j = 0; j < s.size() && minimal; ++j) {
                    IndexSet t = s;
                    t.erase(t.begin() + static_cast<std::ptrdiff_t>(j));
                    minimal = independent(t);
                }
                if (minimal) out.push_back(s);
            }
        return out;
    }

    /// True iff i lies in every basis of the restriction to s.
    bool is_coloop_of(const IndexSet& s, std::size_t i) const {
        IndexSet t;
        for (auto j : s)
            if (j != i) t.push_back(j);
        return rank(t) < rank(s);
    }
};

/// Rank of the dual matroid from the rank function: r*(S) = |S| - r(E) + r(E \ S).
inline std::size_t dual_rank(const Matroid& M, const IndexSet& s) {
    return s.size() - M.rank() + M.rank(complement(s, M.n));
}

struct Flat {
    IndexSet indices;  ///< hyperplanes containing the flat
    std::size_t rank = 0;
    bool operator==(const Flat&) const = default;
    bool operator<(const Flat& o) const { return std::tie(rank, indices) < std::tie(o.rank, o.indices); }
};

/// All closed sets, ordered by rank then lexicographically.
inline std::vector<Flat> flats(const Matroid& M) {
    std::set<Flat> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << M.n); ++mask) {
        auto c = M.closure(mask_to_set(mask, M.n));
        out.insert({c, M.rank(c)});
    }
    return {out.begin(), out.end()};
}

/// Flats whose restriction has no coloops.
inline std::vector<Flat> coloop_free_flats(const Matroid& M) {
    std::vector<Flat> out;
    for (const auto& f : flats(M)) {
        bool ok = true;
        for (auto i : f.indices) ok = ok && !M.is_coloop_of(f.indices, i);
        if (ok) out.push_back(f);
    }
    return out;
}

/// Doubled arrangement of the pairs in `I`, modulo the flat, on the coset basepoint + Lambda_0.
struct LocalizedArrangement {
    IndexSet I;
    ZMat basis;  ///< Hermite basis of the projection of Lambda_0 to the coordinates I
    QVec base;   ///< basepoint restricted to I

    LocalizedArrangement(const Lattice& L, const QVec& basepoint, IndexSet idx) : I(std::move(idx)) {
        ZMat proj(L.k());
        for (std::size_t j = 0; j < L.k(); ++j)
            for (auto i : I) proj[j].push_back(L.basis[j][i]);
        basis = hermite_normal_form(proj, I.size());
        for (auto i : I) base.push_back(basepoint[i]);
    }

    std::size_t dim() const { return basis.size(); }

    /// h^+ >= 0 for '+', h^+ <= -1 for '-' on the pairs in I.
    RationalPolyhedron chamber(const SignVector& alpha) const {
        RationalPolyhedron P(dim());
        for (std::size_t p = 0; p < I.size(); ++p) {
            QVec a(dim());
            for (std::size_t j = 0; j < dim(); ++j) a[j] = basis[j][p];
            add_sign_constraint(P, a, base[p], alpha[p], -1);
        }
        return P;
    }

    RationalPolyhedron cone(const SignVector& alpha) const {
        RationalPolyhedron P(dim());
        for (std::size_t p = 0; p < I.size(); ++p) {
            QVec a(dim());
            for (std::size_t j = 0; j < dim(); ++j) a[j] = basis[j][p];
            add_sign_constraint(P, a, 0, alpha[p], 0);
        }
        return P;
    }

    bool compact_nonempty(const SignVector& alpha) const {
        if (!polyhedron_feasible(chamber(alpha))) return false;
        return functional_bounded_on_cone(QVec(dim(), 0), cone(alpha));
    }
};

/// Flats whose localized doubled arrangement has a compact nonempty chamber.
inline std::vector<Flat> coloop_free_flats_lp(const Lattice& L, const QVec& basepoint) {
    Matroid M = Matroid::of(L);
    std::vector<Flat> out;
    for (const auto& f : flats(M)) {
        LocalizedArrangement loc(L, basepoint, f.indices);
        bool found = false;
        for (const auto& a : all_signs(f.indices.size()))
            if (loc.compact_nonempty(a)) {
                found = true;
                break;
            }
        if (found) out.push_back(f);
    }
    return out;
}

// ---------------------------------------------------------------------------

struct ConeData {
    IndexSet I;            ///< hyperplanes vanishing on the cone
    std::size_t dim = 0;   ///< dimension of the span of the cone
    bool operator==(const ConeData&) const = default;
};

inline ConeData cone_data(const Lattice& L, const SignVector& alpha) {
    if (alpha.size() != L.n) throw Error("DimensionMismatch", "sign vector has wrong length");
    auto C = sign_cone(L, iota_indices(L.n), alpha);
    ConeData d;
    for (std::size_t i = 0; i < L.n; ++i) {
        RationalPolyhedron P = C;
        QVec a = to_q(L.column(i));
        if (alpha[i] == '-')
            for (auto& x : a) x = -x;
        P.add_ge(a, 1);
        if (!polyhedron_feasible(P)) d.I.push_back(i);
    }
    d.dim = L.k() - normals_rank(L, d.I);
    return d;
}

using ConeTable = std::map<SignVector, ConeData>;

inline ConeTable cone_table(const Lattice& L, const SignSet& signs) {
    ConeTable t;
    for (const auto& a : signs) t[a] = cone_data(L, a);
    return t;
}

inline bool agree_on(const SignVector& a, const SignVector& b, const IndexSet& s) {
    for (auto i : s)
        if (a[i] != b[i]) return false;
    return true;
}

/// I_beta within I_alpha and agreement on I_beta.
inline bool left_leq(const ConeData& ca, const ConeData& cb, const SignVector& a, const SignVector& b) {
    return is_subset(cb.I, ca.I) && agree_on(a, b, cb.I);
}

/// I_beta within I_alpha and agreement off I_alpha.
inline bool right_leq(const ConeData& ca, const ConeData& cb, const SignVector& a, const SignVector& b) {
    return is_subset(cb.I, ca.I) && agree_on(a, b, complement(ca.I, a.size()));
}

inline bool left_leq(const Lattice& L, const SignSet& F, const SignVector& a, const SignVector& b) {
    if (!contains(F, a) || !contains(F, b)) throw Error("NotFeasible", "sign vector is not feasible");
    return left_leq(cone_data(L, a), cone_data(L, b), a, b);
}

inline bool right_leq(const Lattice& L, const SignSet& B, const SignVector& a, const SignVector& b) {
    if (!contains(B, a) || !contains(B, b)) throw Error("NotBounded", "sign vector is not bounded");
    return right_leq(cone_data(L, a), cone_data(L, b), a, b);
}

/// Cone inclusion Delta_{0,a} within Delta_{0,b}, by LP.
inline bool cone_contained(const Lattice& L, const SignVector& a, const SignVector& b) {
    auto Ca = sign_cone(L, iota_indices(L.n), a);
    for (std::size_t i = 0; i < L.n; ++i) {
        QVec c = to_q(L.column(i));
        if (b[i] == '+')
            for (auto& x : c) x = -x;
        // Violation of b's i-th constraint: b_i h_i < 0 somewhere on Ca.
        RationalPolyhedron P = Ca;
        P.add_ge(c, 1);
        if (polyhedron_feasible(P)) return false;
    }
    return true;
}

/// Blocks in canonical order (by least element) with the induced block order.
struct CellPartition {
    std::vector<SignSet> blocks;
    std::vector<std::vector<bool>> leq;  ///< leq[a][b]: block a <= block b

    std::size_t block_of(const SignVector& s) const {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (contains(blocks[i], s)) return i;
        throw Error("NotFound", "sign vector is not in any block");
    }

    CellPartition opposite() const {
        CellPartition o = *this;
        for (std::size_t a = 0; a < blocks.size(); ++a)
            for (std::size_t b = 0; b < blocks.size(); ++b) o.leq[a][b] = leq[b][a];
        return o;
    }

    bool operator==(const CellPartition&) const = default;

    bool is_partial_order() const {
        std::size_t m = blocks.size();
        for (std::size_t a = 0; a < m; ++a) {
            if (!leq[a][a]) return false;
            for (std::size_t b = 0; b < m; ++b) {
                if (a != b && leq[a][b] && leq[b][a]) return false;
                for (std::size_t c = 0; c < m; ++c)
                    if (leq[a][b] && leq[b][c] && !leq[a][c]) return false;
            }
        }
        return true;
    }
};

/// Partition by mutual comparability of a preorder given on elements, transitively closed first.
inline CellPartition partition_by_preorder(const SignSet& elems,
                                           const std::function<bool(std::size_t, std::size_t)>& rel) {
    std::size_t m = elems.size();
    std::vector<std::vector<bool>> r(m, std::vector<bool>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) r[i][j] = i == j || rel(i, j);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < m; ++j)
                    if (r[k][j]) r[i][j] = true;
    std::vector<int> block(m, -1);
    CellPartition p;
    for (std::size_t i = 0; i < m; ++i) {
        if (block[i] >= 0) continue;
        block[i] = static_cast<int>(p.blocks.size());
        SignSet b{elems[i]};
        for (std::size_t j = i + 1; j < m; ++j)
            if (block[j] < 0 && r[i][j] && r[j][i]) {
                block[j] = block[i];
                b.push_back(elems[j]);
            }
        p.blocks.push_back(b);
    }
    std::size_t nb = p.blocks.size();
    p.leq.assign(nb, std::vector<bool>(nb, false));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (r[i][j]) p.leq[static_cast<std::size_t>(block[i])][static_cast<std::size_t>(block[j])] = true;
    return p;
}

struct Cells {
    CellPartition left, right, two_sided;
};

/// Left cells on F, right cells on B, two-sided cells on P = F n B.
inline Cells cell_partitions(const Lattice& L, const SignSet& F, const SignSet& B) {
    auto P = set_intersection(F, B);
    SignSet all = F;
    all.insert(all.end(), B.begin(), B.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    auto table = cone_table(L, all);
    Cells c;
    c.left = partition_by_preorder(F, [&](std::size_t i, std::size_t j) {
        return left_leq(table[F[i]], table[F[j]], F[i], F[j]);
    });
    c.right = partition_by_preorder(B, [&](std::size_t i, std::size_t j) {
        return right_leq(table[B[i]], table[B[j]], B[i], B[j]);
    });
    c.two_sided = partition_by_preorder(P, [&](std::size_t i, std::size_t j) {
        return left_leq(table[P[i]], table[P[j]], P[i], P[j]) || right_leq(table[P[i]], table[P[j]], P[i], P[j]);
    });
    return c;
}

inline void require_regular_integral(const QuantizedArrangement& X) {
    auto r = regularity_report(X);
    if (!r.regular() || !*r.integral) throw Error("NotRegularIntegral", "needs a regular integral arrangement");
}

inline Cells cell_partitions(const QuantizedArrangement& X) {
    require_regular_integral(X);
    return cell_partitions(X.lambda0, quantized_feasible_signs(X), quantized_bounded_signs(X));
}

/// Lattice points of the compact localized polytope attached to alpha.
inline std::size_t goldie_rank(const QuantizedArrangement& X, const SignVector& alpha) {
    if (!contains(quantized_feasible_signs(X), alpha)) throw Error("NotFeasible", "sign vector is not feasible");
    auto cd = cone_data(X.lambda0, alpha);
    LocalizedArrangement loc(X.lambda0, X.basepoint, cd.I);
    return lattice_points_in_polytope(loc.chamber(restrict_signs(alpha, cd.I))).size();
}

/// For each coloop-free flat, the number of alpha in P whose cone spans that flat.
inline std::vector<std::pair<Flat, std::size_t>> bbd_dimensions(const Lattice& L, const SignSet& P) {
    std::vector<std::pair<Flat, std::size_t>> out;
    auto table = cone_table(L, P);
    for (const auto& f : coloop_free_flats(Matroid::of(L))) {
        std::size_t c = 0;
        for (const auto& a : P) c += table[a].I == f.indices;
        out.push_back({f, c});
    }
    return out;
}

inline std::vector<std::pair<Flat, std::size_t>> bbd_dimensions(const QuantizedArrangement& X) {
    require_regular_integral(X);
    return bbd_dimensions(X.lambda0, quantized_bounded_feasible_signs(X));
}

// ---------------------------------------------------------------------------

inline Z binomial(std::size_t n, std::size_t k) {
    Z r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// h-vector of a pure complex of dimension r-1 from its face counts f_0..f_r.
inline ZVec h_from_f(const ZVec& f, std::size_t r) {
    ZVec h(r + 1, 0);
    for (std::size_t j = 0; j <= r; ++j)
        for (std::size_t i = 0; i <= j && i < f.size(); ++i) {
            Z term = binomial(r - i, j - i) * f[i];
            h[j] += ((j - i) % 2 ? -term : term);
        }
    return h;
}

/// h-vector of the independence complex.
inline ZVec h_vector(const Matroid& M) {
    std::size_t r = M.rank();
    ZVec f(r + 1, 0);
    for (std::size_t mask = 0; mask < (std::size_t{1} << M.n); ++mask) {
        auto s = mask_to_set(mask, M.n);
        if (M.independent(s)) f[s.size()] += 1;
    }
    return h_from_f(f, r);
}

/// h-vector of the broken-circuit complex for the ground-set order `order` (default natural).
/// A matroid with a loop has the void complex; its h-vector is all zeros.
inline ZVec broken_circuit_h_vector(const Matroid& M, std::vector<std::size_t> order = {}) {
    if (order.empty()) order = iota_indices(M.n);
    std::vector<std::size_t> pos(M.n);
    for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = p;
    std::size_t r = M.rank();
    std::vector<IndexSet> broken;
    for (const auto& c : M.circuits()) {
        if (c.size() == 1) return ZVec(r + 1, 0);
        auto least = *std::min_element(c.begin(), c.end(), [&](auto x, auto y) { return pos[x] < pos[y]; });
        IndexSet b;
        for (auto i : c)
            if (i != least) b.push_back(i);
        broken.push_back(b);
    }
    ZVec f(r + 1, 0);
    for (std::size_t mask = 0; mask < (std::size_t{1} << M.n); ++mask) {
        auto s = mask_to_set(mask, M.n);
        if (!M.independent(s)) continue;
        bool ok = true;
        for (const auto& b : broken) ok = ok && !is_subset(b, s);
        if (ok) f[s.size()] += 1;
    }
    return h_from_f(f, r);
}

struct MatroidIdentity {
    Z top_h;
    Z dual_bc_sum;
    bool holds() const { return top_h == dual_bc_sum; }
};

/// Top h-number of M against the summed broken-circuit h-numbers of the dual matroid.
inline MatroidIdentity top_h_identity(const Lattice& L) {
    auto h = h_vector(Matroid::of(L));
    Z sum = 0;
    for (const auto& x : broken_circuit_h_vector(Matroid::dual_of(L))) sum += x;
    return {h.back(), sum};
}

// ---------------------------------------------------------------------------

struct FiltrationReport {
    bool sums_match = false;        ///< sum of bbd dimensions equals |P| on both sides
    bool dual_values_match = false; ///< value at F equals the dual value at the complementary flat
    bool orthogonal = false;        ///< D_F pairs to zero with E!_{F^c}, and E_F with D!_{F^c}
    bool perpendicular = false;     ///< E!_{F^c} is exactly the annihilator of D_F (and D! of E_F)
    std::vector<IndexSet> incomparable_flats;  ///< flats where some cone flat of P is incomparable
};

/// Checks the cell filtration of the Grothendieck group of X against that of its Gale dual,
/// using the pairing <P_a, P!_b> = (-1)^{#minus signs of a} delta_{ab}.
inline FiltrationReport filtration_check(const PolarizedArrangement& X) {
    auto D = gale_dual(X);
    auto P = bounded_feasible_signs(X);
    auto tX = cone_table(X.lambda0, P), tD = cone_table(D.lambda0, P);
    auto bx = bbd_dimensions(X.lambda0, P), bd = bbd_dimensions(D.lambda0, P);
    std::size_t n = X.n();
    FiltrationReport r;
    auto total = [](const auto& v) {
        std::size_t s = 0;
        for (const auto& p : v) s += p.second;
        return s;
    };
    r.sums_match = total(bx) == P.size() && total(bd) == P.size();
    std::map<IndexSet, std::size_t> dual_value;
    for (const auto& [f, c] : bd) dual_value[f.indices] = c;
    r.dual_values_match = true;
    r.orthogonal = true;
    r.perpendicular = true;
    auto pairing = [](const SignVector& a, const SignVector& b) -> int {
        if (a != b) return 0;
        return std::count(a.begin(), a.end(), '-') % 2 ? -1 : 1;
    };
    for (const auto& [f, c] : bx) {
        auto fc = complement(f.indices, n);
        auto it = dual_value.find(fc);
        if (it == dual_value.end() || it->second != c) r.dual_values_match = false;
        SignSet DF, EF, Dd, Ed;
        for (const auto& a : P) {
            if (is_subset(tX[a].I, f.indices)) {
                DF.push_back(a);
                if (tX[a].I != f.indices) EF.push_back(a);
            }
            if (is_subset(tD[a].I, fc)) {
                Dd.push_back(a);
                if (tD[a].I != fc) Ed.push_back(a);
            }
            if (!is_subset(tX[a].I, f.indices) && !is_subset(f.indices, tX[a].I)) {
                if (r.incomparable_flats.empty() || r.incomparable_flats.back() != f.indices)
                    r.incomparable_flats.push_back(f.indices);
            }
        }
        auto annihilator = [&](const SignSet& S) {
            SignSet out;
            for (const auto& b : P) {
                bool zero = true;
                for (const auto& a : S) zero = zero && pairing(a, b) == 0;
                if (zero) out.push_back(b);
            }
            return out;
        };
        for (const auto& a : DF)
            for (const auto& b : Ed) r.orthogonal = r.orthogonal && pairing(a, b) == 0;
        for (const auto& a : EF)
            for (const auto& b : Dd) r.orthogonal = r.orthogonal && pairing(a, b) == 0;
        if (annihilator(DF) != Ed || annihilator(EF) != Dd) r.perpendicular = false;
    }
    return r;
}

}  // namespace hypertoric
