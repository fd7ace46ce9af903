#pragma once

// Quiver algebras with homogeneous relations, quadratic duals and Koszul complexes.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypertoric/algebra.hpp"

namespace hypertoric {

struct QuiverArrow {
    std::size_t source = 0;
    std::size_t target = 0;
    std::string label;
};

/// Homogeneous linear combination of arrow words sharing endpoints.
using WordRelation = std::vector<std::pair<Q, std::vector<std::size_t>>>;

namespace detail {

inline std::string word_label(const std::vector<QuiverArrow>& arrows, const std::vector<std::size_t>& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + arrows[w[i]].label;
    return s;
}

}  // namespace detail

/// Path algebra of a quiver modulo the two-sided ideal of homogeneous word relations, degree by degree.
/// Each degree-d basis element is a degree-(d-1) basis element times an arrow.
class QuiverAlgebraBuilder {
public:
    QuiverAlgebraBuilder(std::vector<SignVector> vertices, std::vector<QuiverArrow> arrows,
                         std::vector<WordRelation> relations)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows)), relations_(std::move(relations)) {}

    GradedAlgebra build(int max_degree) {
        GradedAlgebra A;
        A.vertices = vertices_;
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            A.basis.push_back({v, v, 0, "e_" + vertices_[v], {}});
            words_.emplace_back();
        }
        by_degree_.push_back(iota(0, vertices_.size()));
        A.max_degree = max_degree;
        for (int d = 1; d <= max_degree; ++d) {
            if (by_degree_[d - 1].empty()) {
                A.finite = true;
                break;
            }
            extend(A, d);
        }
        if (!A.finite && by_degree_.back().empty()) A.finite = true;
        if (A.finite) A.max_degree = std::max(0, A.top_degree());
        fill_table(A);
        return A;
    }

    /// Normal form of an arrow word starting at basis element x.
    SparseVec apply_word(const GradedAlgebra& A, SparseVec x, const std::vector<std::size_t>& w) const {
        for (auto a : w) {
            SparseVec next;
            for (const auto& [b, c] : x) axpy(next, c, step(A, b, a));
            x = std::move(next);
        }
        return x;
    }

private:
    static std::vector<std::size_t> iota(std::size_t from, std::size_t to) {
        std::vector<std::size_t> v;
        for (std::size_t i = from; i < to; ++i) v.push_back(i);
        return v;
    }

    SparseVec step(const GradedAlgebra& A, std::size_t b, std::size_t a) const {
        if (A.basis[b].target != arrows_[a].source) return {};
        auto it = step_.find({b, a});
        if (it != step_.end()) return it->second;
        if (A.basis[b].degree + 1 > A.max_degree && !A.finite)
            throw Error("DegreeBudgetExceeded", "word lies beyond the computed degree");
        return {};
    }

    void extend(GradedAlgebra& A, int d) {
        std::vector<std::pair<std::size_t, std::size_t>> cand;
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> col;
        for (auto b : by_degree_[d - 1])
            for (std::size_t a = 0; a < arrows_.size(); ++a)
                if (A.basis[b].target == arrows_[a].source) {
                    col[{b, a}] = cand.size();
                    cand.emplace_back(b, a);
                }
        std::size_t N = cand.size();
        // Raw coordinates of x * w in the candidate space, for x of degree d - |w|.
        auto raw = [&](std::size_t x, const std::vector<std::size_t>& w) {
            SparseVec pre{{x, 1}};
            std::vector<std::size_t> head(w.begin(), w.end() - 1);
            pre = apply_word(A, pre, head);
            QVec v(N, 0);
            for (const auto& [b, c] : pre) {
                auto it = col.find({b, w.back()});
                if (it != col.end()) v[it->second] += c;
            }
            return v;
        };
        QMat rows;
        for (const auto& r : relations_) {
            if (r.empty()) continue;
            int len = static_cast<int>(r.front().second.size());
            if (len > d || len == 0) continue;
            std::size_t src = arrows_[r.front().second.front()].source;
            for (auto x : by_degree_[d - len]) {
                if (A.basis[x].target != src) continue;
                QVec v(N, 0);
                for (const auto& [c, w] : r) {
                    auto t = raw(x, w);
                    for (std::size_t i = 0; i < N; ++i) v[i] += c * t[i];
                }
                rows.push_back(std::move(v));
            }
        }
        // Reversed columns: pivots land on the latest candidates, so earlier words survive.
        QMat rev(rows.size(), QVec(N));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < N; ++c) rev[r][c] = rows[r][N - 1 - c];
        auto piv = rref_in_place(rev, N);
        std::vector<long> pivot_row(N, -1);
        for (std::size_t r = 0; r < piv.size(); ++r) pivot_row[N - 1 - piv[r]] = static_cast<long>(r);
        std::vector<std::size_t> fresh;
        std::map<std::size_t, std::size_t> index_of;
        for (std::size_t c = 0; c < N; ++c) {
            if (pivot_row[c] >= 0) continue;
            auto [b, a] = cand[c];
            index_of[c] = A.basis.size();
            fresh.push_back(A.basis.size());
            auto w = words_[b];
            w.push_back(a);
            A.basis.push_back({A.basis[b].source, arrows_[a].target, d, detail::word_label(arrows_, w), {}});
            words_.push_back(std::move(w));
        }
        for (std::size_t c = 0; c < N; ++c) {
            SparseVec v;
            if (pivot_row[c] < 0) {
                v[index_of[c]] = 1;
            } else {
                const auto& row = rev[pivot_row[c]];
                for (std::size_t f = 0; f < N; ++f)
                    if (pivot_row[f] < 0 && row[N - 1 - f] != 0) v[index_of[f]] = -row[N - 1 - f];
            }
            step_[cand[c]] = std::move(v);
        }
        by_degree_.push_back(std::move(fresh));
    }

    void fill_table(GradedAlgebra& A) const {
        std::vector<std::vector<std::size_t>> from(A.vertices.size());
        for (std::size_t i = 0; i < A.dim(); ++i) from[A.basis[i].source].push_back(i);
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (auto j : from[A.basis[i].target]) {
                if (A.basis[i].degree + A.basis[j].degree > A.max_degree) continue;
                auto p = apply_word(A, {{i, 1}}, words_[j]);
                if (!p.empty()) A.table[{i, j}] = std::move(p);
            }
    }

    std::vector<SignVector> vertices_;
    std::vector<QuiverArrow> arrows_;
    std::vector<WordRelation> relations_;
    std::vector<std::vector<std::size_t>> words_;
    std::vector<std::vector<std::size_t>> by_degree_;
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> step_;
};

inline GradedAlgebra quiver_algebra(std::vector<SignVector> vertices, std::vector<QuiverArrow> arrows,
                                    std::vector<WordRelation> relations, int max_degree) {
    return QuiverAlgebraBuilder(std::move(vertices), std::move(arrows), std::move(relations)).build(max_degree);
}

/// Q[x] / x^m with x in degree 1 on one vertex.
inline GradedAlgebra truncated_polynomial(int m, int max_degree = 16) {
    std::vector<WordRelation> rel{{{Q(1), std::vector<std::size_t>(m, 0)}}};
    return quiver_algebra({"*"}, {{0, 0, "x"}}, rel, max_degree);
}

// ---------------------------------------------------------------------------
// Quadratic presentations

/// Pairing sign of a degree-one arrow: flips of coordinate i from alpha weigh (-1)^{#{j < i : alpha_j = -}}.
inline int arrow_sign(const SignVector& from, const SignVector& to) {
    if (from.size() != to.size()) return 1;
    std::size_t diff = 0, at = 0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (from[i] != '+' && from[i] != '-') return 1;
        if (from[i] != to[i]) {
            ++diff;
            at = i;
        }
    }
    if (diff != 1) return 1;
    int minus = 0;
    for (std::size_t j = 0; j < at; ++j) minus += from[j] == '-';
    return minus % 2 ? -1 : 1;
}

struct QuadraticPresentation {
    std::vector<SignVector> vertices;
    std::vector<QuiverArrow> arrows;      ///< degree-one basis of the algebra
    std::vector<std::size_t> arrow_basis;  ///< basis index of each arrow
    std::vector<WordRelation> relations;   ///< spans the kernel of words of length two
    bool semisimple_base = true;           ///< degree zero is spanned by the vertex idempotents
    bool generated = true;                 ///< generated in degree one
    bool quadratic = true;                 ///< relations generated in degree two
};

inline QuadraticPresentation quadratic_presentation(const GradedAlgebra& A) {
    QuadraticPresentation P;
    P.vertices = A.vertices;
    auto zero = A.in_degree(0);
    P.semisimple_base = zero.size() == A.vertices.size();
    for (auto i : zero) P.semisimple_base = P.semisimple_base && A.basis[i].source == A.basis[i].target;
    for (auto i : A.in_degree(1)) {
        P.arrows.push_back({A.basis[i].source, A.basis[i].target, A.basis[i].label});
        P.arrow_basis.push_back(i);
    }
    std::size_t V = A.vertices.size();
    for (std::size_t u = 0; u < V; ++u)
        for (std::size_t w = 0; w < V; ++w) {
            std::vector<std::vector<std::size_t>> words;
            for (std::size_t a = 0; a < P.arrows.size(); ++a)
                for (std::size_t b = 0; b < P.arrows.size(); ++b)
                    if (P.arrows[a].source == u && P.arrows[a].target == P.arrows[b].source && P.arrows[b].target == w)
                        words.push_back({a, b});
            if (words.empty()) continue;
            auto target = A.piece(u, w, 2);
            std::map<std::size_t, std::size_t> col;
            for (std::size_t c = 0; c < target.size(); ++c) col[target[c]] = c;
            // Columns are words; rows are coordinates in A_2.
            QMat m(target.size(), QVec(words.size(), 0));
            for (std::size_t c = 0; c < words.size(); ++c)
                for (const auto& [r, v] : A.product(P.arrow_basis[words[c][0]], P.arrow_basis[words[c][1]]))
                    m[col.at(r)][c] = v;
            for (const auto& k : nullspace(m, words.size())) {
                WordRelation rel;
                for (std::size_t c = 0; c < words.size(); ++c)
                    if (k[c] != 0) rel.emplace_back(k[c], words[c]);
                P.relations.push_back(std::move(rel));
            }
        }
    P.generated = generated_in_degree_one(A);
    if (P.semisimple_base && P.generated) {
        int top = A.finite ? A.top_degree() + 2 : A.max_degree;
        auto quad = quiver_algebra(P.vertices, P.arrows, P.relations, top);
        auto a = degree_dims(A), q = degree_dims(quad);
        a.resize(top + 1, 0);
        q.resize(top + 1, 0);
        P.quadratic = a == q;
    } else {
        P.quadratic = false;
    }
    return P;
}

/// Quadratic algebra on the degree-one generators and quadratic relations of A.
inline GradedAlgebra quadratic_part(const GradedAlgebra& A, int max_degree) {
    auto P = quadratic_presentation(A);
    if (!P.semisimple_base) throw Error("NotQuadratic", "degree zero is not spanned by vertex idempotents");
    return quiver_algebra(P.vertices, P.arrows, P.relations, max_degree);
}

namespace detail {

/// Dual presentation: same arrows (starred) and the annihilator of the relations under the signed pairing.
inline QuadraticPresentation dual_presentation(const QuadraticPresentation& P) {
    QuadraticPresentation D;
    D.vertices = P.vertices;
    for (const auto& a : P.arrows) D.arrows.push_back({a.source, a.target, a.label + "*"});
    auto sign = [&](std::size_t a) { return arrow_sign(P.vertices[P.arrows[a].source], P.vertices[P.arrows[a].target]); };
    std::size_t V = P.vertices.size();
    for (std::size_t u = 0; u < V; ++u)
        for (std::size_t w = 0; w < V; ++w) {
            std::vector<std::vector<std::size_t>> words;
            for (std::size_t a = 0; a < P.arrows.size(); ++a)
                for (std::size_t b = 0; b < P.arrows.size(); ++b)
                    if (P.arrows[a].source == u && P.arrows[a].target == P.arrows[b].source && P.arrows[b].target == w)
                        words.push_back({a, b});
            if (words.empty()) continue;
            std::map<std::vector<std::size_t>, std::size_t> col;
            for (std::size_t c = 0; c < words.size(); ++c) col[words[c]] = c;
            QMat m;
            for (const auto& r : P.relations) {
                if (r.empty() || P.arrows[r.front().second.front()].source != u ||
                    P.arrows[r.front().second.back()].target != w)
                    continue;
                QVec row(words.size(), 0);
                for (const auto& [c, word] : r) row[col.at(word)] += c * sign(word[0]) * sign(word[1]);
                m.push_back(std::move(row));
            }
            for (const auto& k : nullspace(m, words.size())) {
                WordRelation rel;
                for (std::size_t c = 0; c < words.size(); ++c)
                    if (k[c] != 0) rel.emplace_back(k[c], words[c]);
                D.relations.push_back(std::move(rel));
            }
        }
    return D;
}

}  // namespace detail

/// Quadratic dual on the same quiver orientation (the opposite of the dual on reversed arrows).
inline GradedAlgebra quadratic_dual(const GradedAlgebra& A, int max_degree = 16) {
    auto P = quadratic_presentation(A);
    if (!P.quadratic) throw Error("NotQuadratic", "algebra is not quadratic over its vertex idempotents");
    auto D = detail::dual_presentation(P);
    return quiver_algebra(D.vertices, D.arrows, D.relations, max_degree);
}

// ---------------------------------------------------------------------------
// Koszul complex A (x) B^* with B the quadratic dual of the quadratic part of A

struct KoszulHomology {
    std::size_t source = 0, target = 0;  ///< vertex pair
    int internal_degree = 0;
    int homological = 0;
    std::size_t dimension = 0;
};

struct KoszulReport {
    std::vector<int> exact_degrees;      ///< internal degrees where every strand is exact
    std::optional<int> failed_at;         ///< first internal degree carrying homology
    std::vector<KoszulHomology> homology;  ///< nonzero homology groups found
    bool koszul() const { return !failed_at.has_value(); }
};

inline KoszulReport koszul_check(const GradedAlgebra& A, int up_to_degree = 16) {
    auto P = quadratic_presentation(A);
    if (!P.semisimple_base || !P.generated)
        throw Error("NotQuadratic", "algebra is not generated in degree one over its vertex idempotents");
    auto D = detail::dual_presentation(P);
    GradedAlgebra B = quiver_algebra(D.vertices, D.arrows, D.relations, up_to_degree);
    std::size_t V = A.vertices.size();
    int top = up_to_degree;
    if (A.finite && B.finite) top = std::min(top, A.top_degree() + B.top_degree());

    std::vector<int> sgn(P.arrows.size());
    for (std::size_t x = 0; x < P.arrows.size(); ++x)
        sgn[x] = arrow_sign(A.vertices[P.arrows[x].source], A.vertices[P.arrows[x].target]);
    // Arrow x of A is basis element P.arrow_basis[x]; its dual is the degree-one basis element x of B.
    std::vector<std::size_t> bdual(P.arrows.size());
    {
        auto ones = B.in_degree(1);
        for (std::size_t x = 0; x < P.arrows.size(); ++x) bdual[x] = ones.at(x);
    }

    KoszulReport rep;
    for (int d = 0; d <= top; ++d) {
        bool exact = true;
        for (std::size_t al = 0; al < V; ++al)
            for (std::size_t be = 0; be < V; ++be) {
                // Basis of K_j: pairs (a, g), a in e_al A_{d-j} e_ga, g in e_ga B_j e_be.
                std::vector<std::vector<std::pair<std::size_t, std::size_t>>> K(d + 2);
                for (int j = 0; j <= d; ++j) {
                    if (!A.known(d - j) || !B.known(j)) continue;
                    for (std::size_t ga = 0; ga < V; ++ga)
                        for (auto a : A.piece(al, ga, d - j))
                            for (auto g : B.piece(ga, be, j)) K[j].emplace_back(a, g);
                }
                auto differential = [&](int j) {
                    // Matrix of d_j : K_j -> K_{j-1}, rows indexed by K_{j-1}.
                    std::map<std::pair<std::size_t, std::size_t>, std::size_t> row;
                    for (std::size_t r = 0; r < K[j - 1].size(); ++r) row[K[j - 1][r]] = r;
                    QMat m(K[j - 1].size(), QVec(K[j].size(), 0));
                    for (std::size_t c = 0; c < K[j].size(); ++c) {
                        auto [a, g] = K[j][c];
                        std::size_t ga = A.basis[a].target;
                        for (std::size_t x = 0; x < P.arrows.size(); ++x) {
                            if (P.arrows[x].source != ga) continue;
                            auto ax = A.product(a, P.arrow_basis[x]);
                            if (ax.empty()) continue;
                            for (auto h : B.piece(P.arrows[x].target, be, j - 1)) {
                                auto xh = B.product(bdual[x], h);
                                auto it = xh.find(g);
                                if (it == xh.end()) continue;
                                for (const auto& [ai, av] : ax) m[row.at({ai, h})][c] += sgn[x] * it->second * av;
                            }
                        }
                    }
                    return m;
                };
                std::vector<std::size_t> rank(d + 2, 0);
                for (int j = 1; j <= d; ++j)
                    if (!K[j].empty() && !K[j - 1].empty()) rank[j] = matrix_rank(differential(j));
                for (int j = 0; j <= d; ++j) {
                    std::size_t augment = (j == 0 && d == 0 && al == be) ? 1 : 0;
                    std::size_t kernel = K[j].size() - (j == 0 ? augment : rank[j]);
                    std::size_t h = kernel - rank[j + 1];
                    if (h != 0) {
                        exact = false;
                        rep.homology.push_back({al, be, d, j, h});
                    }
                }
            }
        if (exact) {
            rep.exact_degrees.push_back(d);
        } else if (!rep.failed_at) {
            rep.failed_at = d;
        }
    }
    return rep;
}

}  // namespace hypertoric
