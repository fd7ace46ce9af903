#pragma once

// Graded quotients of the cube-quiver path algebra and finite graded algebras in general.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hypertoric/arrangement.hpp"

namespace hypertoric {

/// Sparse vector over a basis: index -> nonzero coefficient.
using SparseVec = std::map<std::size_t, Q>;

inline void axpy(SparseVec& y, const Q& a, const SparseVec& x) {
    if (a == 0) return;
    for (const auto& [i, v] : x) {
        auto it = y.find(i);
        if (it == y.end()) {
            y.emplace(i, a * v);
        } else {
            it->second += a * v;
            if (it->second == 0) y.erase(it);
        }
    }
}

struct BasisElement {
    std::size_t source = 0;  ///< vertex index
    std::size_t target = 0;  ///< vertex index
    int degree = 0;
    std::string label;
    std::vector<unsigned> path;  ///< flips per coordinate, for cube-quiver paths (empty otherwise)

    bool operator==(const BasisElement&) const = default;
};

/// Finite-dimensional (or degree-truncated) graded algebra over Q with vertex idempotents.
/// Paths compose left to right: basis i times basis j is nonzero only if target(i) = source(j).
struct GradedAlgebra {
    std::vector<SignVector> vertices;
    std::vector<BasisElement> basis;
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> table;  ///< nonzero products only
    int max_degree = 0;   ///< highest computed degree
    bool finite = false;  ///< every piece above max_degree vanishes

    std::size_t dim() const { return basis.size(); }
    bool known(int degree) const { return finite || degree <= max_degree; }

    SparseVec product(std::size_t i, std::size_t j) const {
        if (basis[i].target != basis[j].source) return {};
        if (!known(basis[i].degree + basis[j].degree))
            throw Error("DegreeBudgetExceeded", "product lies beyond the computed degree");
        auto it = table.find({i, j});
        return it == table.end() ? SparseVec{} : it->second;
    }

    SparseVec multiply(const SparseVec& x, const SparseVec& y) const {
        SparseVec out;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) axpy(out, a * b, product(i, j));
        return out;
    }

    std::vector<std::size_t> in_degree(int d) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].degree == d) out.push_back(i);
        return out;
    }

    std::vector<std::size_t> piece(std::size_t a, std::size_t b, int d) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].source == a && basis[i].target == b && basis[i].degree == d) out.push_back(i);
        return out;
    }

    std::optional<std::size_t> vertex_index(const SignVector& v) const {
        auto it = std::find(vertices.begin(), vertices.end(), v);
        if (it == vertices.end()) return std::nullopt;
        return static_cast<std::size_t>(it - vertices.begin());
    }

    /// Basis index of the idempotent at vertex v.
    std::size_t idempotent(std::size_t v) const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].degree == 0 && basis[i].source == v && basis[i].target == v) return i;
        throw Error("InvalidAlgebra", "vertex has no idempotent");
    }

    int top_degree() const {
        int t = 0;
        for (const auto& b : basis) t = std::max(t, b.degree);
        return t;
    }
};

// ---------------------------------------------------------------------------
// Invariants and numerical summaries

/// hilbert[a][b][d] = dim e_a A_d e_b for d <= max_degree.
using HilbertMatrix = std::vector<std::vector<std::vector<std::size_t>>>;

inline HilbertMatrix graded_dims(const GradedAlgebra& A) {
    std::size_t v = A.vertices.size();
    int top = A.finite ? A.top_degree() : A.max_degree;
    HilbertMatrix h(v, std::vector<std::vector<std::size_t>>(v, std::vector<std::size_t>(top + 1, 0)));
    for (const auto& b : A.basis) ++h[b.source][b.target][b.degree];
    return h;
}

/// Total dimension per degree.
inline std::vector<std::size_t> degree_dims(const GradedAlgebra& A) {
    int top = A.finite ? A.top_degree() : A.max_degree;
    std::vector<std::size_t> out(A.basis.empty() ? 0 : top + 1, 0);
    for (const auto& b : A.basis) ++out[b.degree];
    return out;
}

inline ZMat cartan_matrix(const GradedAlgebra& A) {
    std::size_t v = A.vertices.size();
    ZMat c(v, ZVec(v, 0));
    for (const auto& b : A.basis) c[b.source][b.target] += 1;
    return c;
}

/// (xy)z = x(yz) and degree additivity on all composable basis triples within the computed range.
inline bool associativity_check(const GradedAlgebra& A) {
    std::vector<std::vector<std::size_t>> from(A.vertices.size());
    for (std::size_t i = 0; i < A.dim(); ++i) from[A.basis[i].source].push_back(i);
    for (const auto& [key, val] : A.table)
        for (const auto& [r, c] : val)
            if (A.basis[r].degree != A.basis[key.first].degree + A.basis[key.second].degree) return false;
    for (std::size_t x = 0; x < A.dim(); ++x)
        for (auto y : from[A.basis[x].target])
            for (auto z : from[A.basis[y].target]) {
                if (!A.known(A.basis[x].degree + A.basis[y].degree + A.basis[z].degree)) continue;
                auto left = A.multiply(A.product(x, y), {{z, 1}});
                auto right = A.multiply({{x, 1}}, A.product(y, z));
                if (left != right) return false;
            }
    return true;
}

/// A_d = A_{d-1} A_1 for every computed d >= 2.
inline bool generated_in_degree_one(const GradedAlgebra& A) {
    auto ones = A.in_degree(1);
    int top = A.finite ? A.top_degree() : A.max_degree;
    for (int d = 2; d <= top; ++d) {
        auto target = A.in_degree(d);
        if (target.empty()) continue;
        std::map<std::size_t, std::size_t> col;
        for (std::size_t c = 0; c < target.size(); ++c) col[target[c]] = c;
        QMat rows;
        for (auto x : A.in_degree(d - 1))
            for (auto a : ones) {
                auto p = A.product(x, a);
                if (p.empty()) continue;
                QVec r(target.size(), 0);
                for (const auto& [i, c] : p) r[col.at(i)] = c;
                rows.push_back(std::move(r));
            }
        if (matrix_rank(rows) != target.size()) return false;
    }
    return true;
}

/// Graded dimensions of the center, by exact commutation constraints against every basis element.
inline std::vector<std::size_t> center_graded_dims(const GradedAlgebra& A) {
    int top = A.finite ? A.top_degree() : A.max_degree;
    std::vector<std::size_t> out;
    if (A.basis.empty()) return out;
    for (int d = 0; d <= top; ++d) {
        std::vector<std::size_t> cand;
        for (auto i : A.in_degree(d))
            if (A.basis[i].source == A.basis[i].target) cand.push_back(i);
        QMat rows;
        std::map<std::size_t, std::size_t> col;
        std::vector<QVec> cons;
        for (std::size_t g = 0; g < A.dim(); ++g) {
            if (!A.known(d + A.basis[g].degree)) continue;
            // One constraint block per generator: sum_c z_c (c g - g c) = 0.
            std::map<std::size_t, QVec> block;
            for (std::size_t c = 0; c < cand.size(); ++c) {
                SparseVec diff = A.product(cand[c], g);
                axpy(diff, -1, A.product(g, cand[c]));
                for (const auto& [r, v] : diff) {
                    auto& row = block[r];
                    if (row.empty()) row.assign(cand.size(), 0);
                    row[c] += v;
                }
            }
            for (auto& [r, row] : block) cons.push_back(std::move(row));
        }
        out.push_back(cand.size() - (cons.empty() ? 0 : matrix_rank(cons)));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// ---------------------------------------------------------------------------
// Cube-quiver paths modulo theta-relations and killed idempotents
//
// A path from alpha in the cube quiver is determined by its flip counts m; modulo the square
// relations it equals (alpha, 1_S) * prod theta_i^{p_i} with S = odd(m), m = 1_S + 2p. The central
// relations theta(x), x in the annihilator of Lambda_0, identify Q[theta] with Q[y_1..y_k] via
// theta_i -> <column i, y>. A path passes through every vertex alpha^T with T inside supp(m), so the
// killed idempotents cut out the monomial ideal generated by theta^{T \ S} over killed alpha^T.

namespace detail {

using Mask = std::uint32_t;

inline Mask sign_mask(const SignVector& a, const SignVector& b) {
    Mask m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) m |= Mask{1} << i;
    return m;
}

inline void monomials_rec(std::size_t k, unsigned e, std::vector<unsigned>& cur, std::size_t pos,
                          std::vector<std::vector<unsigned>>& out) {
    if (pos + 1 == k) {
        cur[pos] = e;
        out.push_back(cur);
        return;
    }
    for (unsigned a = e + 1; a-- > 0;) {
        cur[pos] = a;
        monomials_rec(k, e - a, cur, pos + 1, out);
    }
}

/// Exponent vectors of total degree e in k variables, lexicographically decreasing.
inline std::vector<std::vector<unsigned>> monomials(std::size_t k, unsigned e) {
    std::vector<std::vector<unsigned>> out;
    if (k == 0) {
        if (e == 0) out.emplace_back();
        return out;
    }
    std::vector<unsigned> cur(k, 0);
    monomials_rec(k, e, cur, 0, out);
    return out;
}

/// Degree-e piece of Q[y] modulo a monomial-generated ideal, with a basis of theta-monomials.
struct PolyQuotient {
    std::vector<std::vector<unsigned>> chosen;
    QMat rows;
    std::vector<std::size_t> pivots, free;
    QMat inv;

    std::size_t dim() const { return chosen.size(); }

    QVec coordinates(QVec v) const {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            Q f = v[pivots[r]];
            if (f == 0) continue;
            for (std::size_t c = 0; c < v.size(); ++c)
                if (rows[r][c] != 0) v[c] -= f * rows[r][c];
        }
        QVec out(chosen.size(), 0);
        for (std::size_t j = 0; j < chosen.size(); ++j)
            for (std::size_t f = 0; f < free.size(); ++f)
                if (v[free[f]] != 0) out[j] += v[free[f]] * inv[f][j];
        return out;
    }
};

class CubeEngine {
public:
    explicit CubeEngine(const Lattice& L) : n_(L.n), k_(L.k()) {
        for (std::size_t i = 0; i < n_; ++i) u_.push_back(to_q(L.column(i)));
    }

    std::size_t n() const { return n_; }

    std::size_t mono_index(const std::vector<unsigned>& a) {
        unsigned e = 0;
        for (auto x : a) e += x;
        basis_for(e);
        return index_[e].at(a);
    }

    const std::vector<std::vector<unsigned>>& basis_for(unsigned e) {
        if (!monos_.count(e)) {
            monos_[e] = monomials(k_, e);
            auto& idx = index_[e];
            for (std::size_t i = 0; i < monos_[e].size(); ++i) idx[monos_[e][i]] = i;
        }
        return monos_[e];
    }

    /// prod_i <column i, y>^{p_i}, dense in the degree-|p| monomial basis.
    const QVec& image(const std::vector<unsigned>& p) {
        auto it = image_.find(p);
        if (it != image_.end()) return it->second;
        unsigned e = 0;
        for (auto x : p) e += x;
        QVec out;
        if (e == 0) {
            out.assign(1, 1);
        } else {
            std::size_t i = 0;
            while (p[i] == 0) ++i;
            auto q = p;
            --q[i];
            QVec prev = image(q);
            const auto& lower = basis_for(e - 1);
            out.assign(basis_for(e).size(), 0);
            for (std::size_t a = 0; a < lower.size(); ++a) {
                if (prev[a] == 0) continue;
                for (std::size_t j = 0; j < k_; ++j) {
                    if (u_[i][j] == 0) continue;
                    auto m = lower[a];
                    ++m[j];
                    out[index_[e].at(m)] += prev[a] * u_[i][j];
                }
            }
        }
        return image_.emplace(p, std::move(out)).first->second;
    }

    const PolyQuotient& quotient(const std::vector<Mask>& gens, unsigned e) {
        auto key = std::make_pair(gens, e);
        auto it = quot_.find(key);
        if (it != quot_.end()) return it->second;
        PolyQuotient q;
        auto zf = zero_from_.find(gens);
        if (zf != zero_from_.end() && zf->second <= e) return quot_.emplace(key, std::move(q)).first->second;
        const auto& monos = basis_for(e);
        std::size_t N = monos.size();
        for (auto g : gens) {
            unsigned deg = static_cast<unsigned>(__builtin_popcount(g));
            if (deg > e) continue;
            std::vector<unsigned> gp(n_, 0);
            for (std::size_t i = 0; i < n_; ++i)
                if (g >> i & 1) gp[i] = 1;
            QVec gi = image(gp);
            const auto& gm = basis_for(deg);
            for (const auto& c : basis_for(e - deg)) {
                QVec row(N, 0);
                for (std::size_t a = 0; a < gm.size(); ++a) {
                    if (gi[a] == 0) continue;
                    auto m = gm[a];
                    for (std::size_t j = 0; j < k_; ++j) m[j] += c[j];
                    row[index_[e].at(m)] += gi[a];
                }
                q.rows.push_back(std::move(row));
            }
        }
        q.pivots = rref_in_place(q.rows, N);
        std::vector<bool> piv(N, false);
        for (auto p : q.pivots) piv[p] = true;
        for (std::size_t c = 0; c < N; ++c)
            if (!piv[c]) q.free.push_back(c);
        if (q.free.empty()) {
            zero_from_[gens] = std::min(zero_from_.count(gens) ? zero_from_[gens] : e, e);
            q.rows.clear();
            q.pivots.clear();
            return quot_.emplace(key, std::move(q)).first->second;
        }
        // Greedy choice of theta-monomials, lexicographically, independent modulo the ideal.
        QMat accepted, echelon;
        std::vector<std::size_t> epiv;
        for (const auto& p : monomials(n_, e)) {
            Mask supp = 0;
            for (std::size_t i = 0; i < n_; ++i)
                if (p[i]) supp |= Mask{1} << i;
            bool killed = false;
            for (auto g : gens) killed = killed || (g & supp) == g;
            if (killed) continue;
            QVec v = image(p);
            for (std::size_t r = 0; r < q.rows.size(); ++r) {
                Q f = v[q.pivots[r]];
                if (f == 0) continue;
                for (std::size_t c = 0; c < N; ++c)
                    if (q.rows[r][c] != 0) v[c] -= f * q.rows[r][c];
            }
            QVec s(q.free.size());
            for (std::size_t f = 0; f < q.free.size(); ++f) s[f] = v[q.free[f]];
            QMat test = echelon;
            test.push_back(s);
            if (rref_in_place(test, s.size()).size() == echelon.size()) continue;
            echelon = std::move(test);
            accepted.push_back(s);
            q.chosen.push_back(p);
            if (q.chosen.size() == q.free.size()) break;
        }
        q.inv = inverse(accepted);
        return quot_.emplace(key, std::move(q)).first->second;
    }

private:
    std::size_t n_, k_;
    std::vector<QVec> u_;
    std::map<unsigned, std::vector<std::vector<unsigned>>> monos_;
    std::map<unsigned, std::map<std::vector<unsigned>, std::size_t>> index_;
    std::map<std::vector<unsigned>, QVec> image_;
    std::map<std::pair<std::vector<Mask>, unsigned>, PolyQuotient> quot_;
    std::map<std::vector<Mask>, unsigned> zero_from_;
};

inline std::string path_label(const SignVector& source, const std::vector<unsigned>& m) {
    std::string s = source + "|";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
    return s;
}

}  // namespace detail

/// Graded span of cube paths from `sources` to `targets`, modulo theta(k) and paths through `killed`.
class CubePathSpace {
public:
    CubePathSpace(const Lattice& L, SignSet sources, SignSet targets, SignSet killed)
        : n_(L.n), sources_(std::move(sources)), targets_(std::move(targets)), killed_(std::move(killed)),
          engine_(std::make_shared<detail::CubeEngine>(L)) {}

    /// Computes pieces degree by degree; stops after two consecutive zero degrees.
    void build(int max_degree, bool expect_finite) {
        basis_.clear();
        std::vector<std::size_t> per_degree;
        finite_ = false;
        max_degree_ = max_degree;
        for (int d = 0; d <= max_degree; ++d) {
            std::size_t count = 0;
            for (std::size_t s = 0; s < sources_.size(); ++s)
                for (std::size_t t = 0; t < targets_.size(); ++t) {
                    auto S = detail::sign_mask(sources_[s], targets_[t]);
                    int w = __builtin_popcount(S);
                    if (w > d || (d - w) % 2) continue;
                    const auto& q = engine_->quotient(gens(s, t), static_cast<unsigned>((d - w) / 2));
                    for (const auto& p : q.chosen) {
                        BasisElement b;
                        b.source = s;
                        b.target = t;
                        b.degree = d;
                        b.path.assign(n_, 0);
                        for (std::size_t i = 0; i < n_; ++i) b.path[i] = 2 * p[i] + (S >> i & 1);
                        b.label = detail::path_label(sources_[s], b.path);
                        basis_.push_back(std::move(b));
                        ++count;
                    }
                }
            per_degree.push_back(count);
            if (d >= 1 && count == 0 && per_degree[d - 1] == 0) {
                finite_ = true;
                break;
            }
        }
        if (expect_finite && !finite_)
            throw Error("DegreeBudgetExceeded", "no stabilization up to degree " + std::to_string(max_degree));
        if (finite_) {
            max_degree_ = 0;
            for (const auto& b : basis_) max_degree_ = std::max(max_degree_, b.degree);
        }
        std::stable_sort(basis_.begin(), basis_.end(), [](const BasisElement& a, const BasisElement& b) {
            return std::tie(a.degree, a.source, a.path) < std::tie(b.degree, b.source, b.path);
        });
        pieces_.clear();
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const auto& b = basis_[i];
            pieces_[{b.source, b.target, b.degree}].push_back(i);
        }
        // Within a piece, order must follow the quotient's chosen list for coordinate lookup.
        for (auto& [key, idx] : pieces_) {
            auto [s, t, d] = key;
            auto S = detail::sign_mask(sources_[s], targets_[t]);
            const auto& q = engine_->quotient(gens(s, t), static_cast<unsigned>((d - __builtin_popcount(S)) / 2));
            std::vector<std::size_t> ordered;
            for (const auto& p : q.chosen)
                for (auto i : idx) {
                    bool match = true;
                    for (std::size_t c = 0; c < n_ && match; ++c) match = basis_[i].path[c] == 2 * p[c] + (S >> c & 1);
                    if (match) ordered.push_back(i);
                }
            idx = ordered;
        }
    }

    const std::vector<BasisElement>& basis() const { return basis_; }
    const SignSet& sources() const { return sources_; }
    const SignSet& targets() const { return targets_; }
    const SignSet& killed() const { return killed_; }
    bool finite() const { return finite_; }
    int max_degree() const { return max_degree_; }
    bool known(int d) const { return finite_ || d <= max_degree_; }

    /// Normal form of the path with the given source and flip counts.
    /// With missing_is_zero, paths leaving the source or target sets reduce to zero instead of throwing.
    SparseVec reduce(const SignVector& source, const std::vector<unsigned>& m, bool missing_is_zero = false) const {
        SignVector target = source;
        int d = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (m[i] % 2) target = flip(target, i);
            d += static_cast<int>(m[i]);
        }
        if (missing_is_zero && (!contains(sources_, source) || !contains(targets_, target))) return {};
        auto s = index_of(sources_, source);
        auto t = index_of(targets_, target);
        if (!known(d)) throw Error("DegreeBudgetExceeded", "path lies beyond the computed degree");
        if (d > max_degree_) return {};
        auto S = detail::sign_mask(source, target);
        std::vector<unsigned> p(n_);
        for (std::size_t i = 0; i < n_; ++i) p[i] = (m[i] - (S >> i & 1)) / 2;
        unsigned e = static_cast<unsigned>((d - __builtin_popcount(S)) / 2);
        const auto& q = engine_->quotient(gens(s, t), e);
        if (q.dim() == 0) return {};
        auto c = q.coordinates(engine_->image(p));
        const auto& idx = pieces_.at({s, t, d});
        SparseVec out;
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0) out[idx[j]] = c[j];
        return out;
    }

private:
    static std::size_t index_of(const SignSet& set, const SignVector& a) {
        auto it = std::lower_bound(set.begin(), set.end(), a);
        if (it == set.end() || *it != a) throw Error("InvalidPath", "endpoint " + a + " is not in the space");
        return static_cast<std::size_t>(it - set.begin());
    }

    const std::vector<detail::Mask>& gens(std::size_t s, std::size_t t) const {
        auto key = std::make_pair(s, t);
        auto it = gens_.find(key);
        if (it != gens_.end()) return it->second;
        auto S = detail::sign_mask(sources_[s], targets_[t]);
        std::vector<detail::Mask> raw;
        for (const auto& kv : killed_) raw.push_back(detail::sign_mask(sources_[s], kv) & ~S);
        std::sort(raw.begin(), raw.end(), [](auto a, auto b) {
            return std::make_pair(__builtin_popcount(a), a) < std::make_pair(__builtin_popcount(b), b);
        });
        std::vector<detail::Mask> minimal;
        for (auto g : raw) {
            bool dominated = false;
            for (auto h : minimal) dominated = dominated || (h & g) == h;
            if (!dominated) minimal.push_back(g);
        }
        std::sort(minimal.begin(), minimal.end());
        return gens_.emplace(key, std::move(minimal)).first->second;
    }

    std::size_t n_;
    SignSet sources_, targets_, killed_;
    std::shared_ptr<detail::CubeEngine> engine_;
    std::vector<BasisElement> basis_;
    std::map<std::tuple<std::size_t, std::size_t, int>, std::vector<std::size_t>> pieces_;
    mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<detail::Mask>> gens_;
    bool finite_ = false;
    int max_degree_ = 0;
};

/// Algebra structure on a cube path space whose sources and targets coincide.
inline GradedAlgebra algebra_from_paths(const CubePathSpace& space) {
    if (space.sources() != space.targets()) throw Error("InvalidAlgebra", "sources and targets differ");
    GradedAlgebra A;
    A.vertices = space.sources();
    A.basis = space.basis();
    A.max_degree = space.max_degree();
    A.finite = space.finite();
    std::vector<std::vector<std::size_t>> from(A.vertices.size());
    for (std::size_t i = 0; i < A.dim(); ++i) from[A.basis[i].source].push_back(i);
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (auto j : from[A.basis[i].target]) {
            int d = A.basis[i].degree + A.basis[j].degree;
            if (d > A.max_degree) continue;
            auto m = A.basis[i].path;
            for (std::size_t c = 0; c < m.size(); ++c) m[c] += A.basis[j].path[c];
            auto p = space.reduce(A.vertices[A.basis[i].source], m);
            if (!p.empty()) A.table[{i, j}] = std::move(p);
        }
    return A;
}

// ---------------------------------------------------------------------------
// Presentations and construction

/// Cube quiver on {+,-}^n with the data cutting out a quotient algebra.
struct QuiverPresentation {
    std::size_t n = 0;
    SignSet retained;  ///< vertices kept by the outer idempotent
    SignSet killed;    ///< retained vertices whose idempotents generate the killed ideal
    std::vector<std::pair<SignVector, SignVector>> arrows;  ///< all cube arrows, both directions
    std::vector<std::tuple<SignVector, std::size_t, std::size_t>> squares;  ///< (corner, i, j), i < j
    QMat theta_relations;  ///< rows x: sum_i x_i theta_i is central and set to zero
};

inline QuiverPresentation cube_presentation(const Lattice& L, const std::optional<SignSet>& feasible,
                                            const std::optional<SignSet>& bounded) {
    QuiverPresentation p;
    p.n = L.n;
    auto all = all_signs(L.n);
    p.retained = feasible.value_or(all);
    p.killed = set_difference(p.retained, bounded.value_or(all));
    for (const auto& a : all)
        for (std::size_t i = 0; i < L.n; ++i) {
            p.arrows.emplace_back(a, flip(a, i));
            for (std::size_t j = i + 1; j < L.n; ++j) p.squares.emplace_back(a, i, j);
        }
    p.theta_relations = to_q(orthogonal_complement_lattice(L).basis);
    return p;
}

inline int default_max_degree(std::size_t n, std::size_t k) { return static_cast<int>(2 * (n + k) + 2); }

/// Quotient (e Q_n e) / <killed idempotents> + <theta(k)> for e the retained vertices.
/// Feasible absent: all vertices retained. Bounded absent: nothing killed and the result is truncated.
inline GradedAlgebra build_algebra(const Lattice& L, const std::optional<SignSet>& feasible,
                                   const std::optional<SignSet>& bounded, int max_degree = -1) {
    if (max_degree < 0) max_degree = default_max_degree(L.n, L.k());
    auto all = all_signs(L.n);
    SignSet F = feasible.value_or(all), B = bounded.value_or(all);
    SignSet verts = set_intersection(F, B), killed = set_difference(F, B);
    CubePathSpace space(L, verts, verts, killed);
    space.build(max_degree, bounded.has_value());
    return algebra_from_paths(space);
}

inline GradedAlgebra build_algebra(const PolarizedArrangement& X, int max_degree = -1) {
    X.validate();
    return build_algebra(X.lambda0, feasible_signs(X), bounded_signs(X), max_degree);
}

/// Integral instances directly; otherwise through the essential restriction (zero if it has no vertex).
inline GradedAlgebra build_algebra(const QuantizedArrangement& X, int max_degree = -1) {
    X.validate();
    QuantizedArrangement Y = X;
    if (X.integral_indices().size() != X.n()) {
        if (!is_essential(X.lambda0, X.integral_indices())) {
            GradedAlgebra zero;
            zero.finite = true;
            return zero;
        }
        Y = essentialize(X);
    }
    return build_algebra(Y.lambda0, quantized_feasible_signs(Y), quantized_bounded_signs(Y), max_degree);
}

}  // namespace hypertoric
