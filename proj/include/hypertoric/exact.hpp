#pragma once

// Exact integer and rational linear algebra, lattices, and rational polyhedra.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hypertoric {

using Z = mpz_class;
using Q = mpq_class;
using ZVec = std::vector<Z>;
using QVec = std::vector<Q>;
using ZMat = std::vector<ZVec>;
using QMat = std::vector<QVec>;

/// Domain error with a stable code (e.g. "DependentRows", "Inessential").
class Error : public std::runtime_error {
public:
    Error(const std::string& code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(code) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// ---------------------------------------------------------------------------
// Small helpers

inline QVec to_q(const ZVec& v) { return QVec(v.begin(), v.end()); }

inline QMat to_q(const ZMat& m) {
    QMat out;
    out.reserve(m.size());
    for (const auto& r : m) out.push_back(to_q(r));
    return out;
}

inline ZMat identity_z(std::size_t n) {
    ZMat id(n, ZVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

template <class T>
std::vector<std::vector<T>> transpose(const std::vector<std::vector<T>>& m, std::size_t cols_if_empty = 0) {
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : cols_if_empty;
    std::vector<std::vector<T>> t(cols, std::vector<T>(rows));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    T s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Q qdot(const QVec& a, const ZVec& b) {
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_integral(const Q& q) { return q.get_den() == 1; }

inline Z floor_q(const Q& q) {
    Z r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Z ceil_q(const Q& q) {
    Z r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Nearest integer, halves rounded toward +infinity.
inline Z round_q(const Q& q) { return floor_q(q + Q(1, 2)); }

inline Z floor_div(const Z& a, const Z& b) {
    Z r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline std::string to_string(const Q& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p/q" or "p".
inline Q parse_rational(const std::string& s) {
    Q q;
    if (q.set_str(s, 10) != 0) throw Error("ParseError", "invalid rational '" + s + "'");
    if (q.get_den() == 0) throw Error("ParseError", "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------------------
// Rational elimination

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref_in_place(QMat& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t rows = m.size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(m[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Q inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            Q f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    return pivots;
}

inline std::size_t matrix_rank(QMat m) {
    if (m.empty()) return 0;
    return rref_in_place(m, m[0].size()).size();
}

inline std::size_t matrix_rank(const ZMat& m) { return matrix_rank(to_q(m)); }

/// Basis of {x : m x = 0}.
inline QMat nullspace(QMat m, std::size_t cols) {
    auto piv = rref_in_place(m, cols);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    QMat basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        QVec v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some solution of a x = b, if one exists.
inline std::optional<QVec> solve_linear(const QMat& a, const QVec& b, std::size_t cols) {
    QMat aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        QVec r = a[i];
        r.push_back(b[i]);
        aug.push_back(std::move(r));
    }
    auto piv = rref_in_place(aug, cols + 1);
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    QVec x(cols, 0);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][cols];
    return x;
}

/// Inverse of a square rational matrix; throws if singular.
inline QMat inverse(const QMat& m) {
    std::size_t n = m.size();
    QMat aug(n, QVec(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    auto piv = rref_in_place(aug, 2 * n);
    if (piv.size() < n || piv[n - 1] != n - 1) throw Error("Singular", "matrix is not invertible");
    QMat inv(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

inline QMat matmul(const QMat& a, const QMat& b) {
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    QMat c(n, QVec(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (sgn(a[i][l]) == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline ZMat matmul(const ZMat& a, const ZMat& b) {
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    ZMat c(n, ZVec(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (sgn(a[i][l]) == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline Z determinant(const ZMat& m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    QMat a = to_q(m);
    Q det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a[p][c]) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(a[i][c]) == 0) continue;
            Q f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det.get_num();
}

// ---------------------------------------------------------------------------
// Integer normal forms

struct SmithForm {
    ZMat S;  ///< diagonal, d_1 | d_2 | ...
    ZMat U;  ///< unimodular, rows x rows
    ZMat V;  ///< unimodular, cols x cols
    std::size_t rank = 0;
};

/// U * M * V = S with S diagonal and successive divisibility.
inline SmithForm smith_normal_form(const ZMat& M, std::size_t cols_if_empty = 0) {
    std::size_t m = M.size(), n = m ? M[0].size() : cols_if_empty;
    SmithForm f{M, identity_z(m), identity_z(n), 0};
    ZMat& S = f.S;
    ZMat& U = f.U;
    ZMat& V = f.V;
    auto swap_cols = [&](ZMat& A, std::size_t a, std::size_t b) {
        for (auto& row : A) std::swap(row[a], row[b]);
    };
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        while (true) {
            std::size_t pi = m, pj = n;
            Z best = 0;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (S[i][j] != 0 && (best == 0 || abs(S[i][j]) < best)) {
                        best = abs(S[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (pi == m) break;
            std::swap(S[t], S[pi]);
            std::swap(U[t], U[pi]);
            swap_cols(S, t, pj);
            swap_cols(V, t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (S[i][t] == 0) continue;
                Z q = floor_div(S[i][t], S[t][t]);
                for (std::size_t j = t; j < n; ++j) S[i][j] -= q * S[t][j];
                for (std::size_t j = 0; j < m; ++j) U[i][j] -= q * U[t][j];
                if (S[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (S[t][j] == 0) continue;
                Z q = floor_div(S[t][j], S[t][t]);
                for (std::size_t i = t; i < m; ++i) S[i][j] -= q * S[i][t];
                for (std::size_t i = 0; i < n; ++i) V[i][j] -= q * V[i][t];
                if (S[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (S[i][j] % S[t][t] != 0) {
                        for (std::size_t c = t; c < n; ++c) S[t][c] += S[i][c];
                        for (std::size_t c = 0; c < m; ++c) U[t][c] += U[i][c];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (t >= m || t >= n || S[t][t] == 0) break;
        if (S[t][t] < 0) {
            for (auto& x : S[t]) x = -x;
            for (auto& x : U[t]) x = -x;
        }
    }
    for (std::size_t i = 0; i < std::min(m, n); ++i)
        if (S[i][i] != 0) ++f.rank;
    return f;
}

/// Canonical row-style Hermite normal form of the lattice spanned by the rows (zero rows dropped).
inline ZMat hermite_normal_form(ZMat rows, std::size_t cols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Z q = floor_div(rows[i][c], rows[r][c]);
                for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r >= rows.size() || rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (auto& x : rows[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Z q = floor_div(rows[i][c], rows[r][c]);
            if (q != 0)
                for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

/// Basis (Hermite form) of {x in Z^cols : M x = 0}.
inline ZMat integer_kernel(const ZMat& M, std::size_t cols) {
    if (M.empty()) return identity_z(cols);
    auto f = smith_normal_form(M, cols);
    ZMat ker;
    for (std::size_t j = f.rank; j < cols; ++j) {
        ZVec v(cols);
        for (std::size_t i = 0; i < cols; ++i) v[i] = f.V[i][j];
        ker.push_back(std::move(v));
    }
    return hermite_normal_form(ker, cols);
}

/// Some integer x with M x = b, if one exists.
inline std::optional<ZVec> integer_solve(const ZMat& M, const ZVec& b, std::size_t cols) {
    auto f = smith_normal_form(M, cols);
    std::size_t m = M.size();
    ZVec ub(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) ub[i] += f.U[i][j] * b[j];
    ZVec y(cols, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (i < f.rank) {
            if (ub[i] % f.S[i][i] != 0) return std::nullopt;
            y[i] = ub[i] / f.S[i][i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    ZVec x(cols, 0);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j) x[i] += f.V[i][j] * y[j];
    return x;
}

/// True iff the row lattice is a direct summand (all invariant factors 1).
/// Throws DependentRows when the rows are not independent.
inline bool is_direct_summand(const ZMat& M) {
    if (M.empty()) return true;
    auto f = smith_normal_form(M);
    if (f.rank < M.size()) throw Error("DependentRows", "rows are linearly dependent");
    for (std::size_t i = 0; i < f.rank; ++i)
        if (f.S[i][i] != 1) return false;
    return true;
}

/// Like is_direct_summand but for a generating set: the lattice spanned by the rows is saturated.
inline bool spans_saturated_lattice(const ZMat& M, std::size_t cols) {
    if (M.empty()) return true;
    auto f = smith_normal_form(M, cols);
    for (std::size_t i = 0; i < f.rank; ++i)
        if (f.S[i][i] != 1) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Lattices

/// Rows of `basis` form a basis of a direct summand Lambda_0 of Z^n.
struct Lattice {
    std::size_t n = 0;
    ZMat basis;

    std::size_t k() const { return basis.size(); }

    /// Column i of the basis: the normal of the i-th coordinate hyperplane in basis coordinates.
    ZVec column(std::size_t i) const {
        ZVec c(k());
        for (std::size_t j = 0; j < k(); ++j) c[j] = basis[j][i];
        return c;
    }

    /// Throws InvalidLattice naming the first violated condition.
    void validate() const {
        for (const auto& r : basis)
            if (r.size() != n) throw Error("InvalidLattice", "basis row has wrong length");
        if (matrix_rank(basis) != k()) throw Error("DependentRows", "basis rows are linearly dependent");
        if (!is_direct_summand(basis)) throw Error("InvalidLattice", "lattice is not a direct summand");
        for (std::size_t i = 0; i < n; ++i) {
            bool zero = true;
            for (const auto& r : basis) zero = zero && r[i] == 0;
            if (zero) throw Error("InvalidLattice", "column " + std::to_string(i + 1) + " is zero");
        }
        for (std::size_t i = 0; i < n; ++i) {
            QMat m = to_q(basis);
            QVec e(n, 0);
            e[i] = 1;
            m.push_back(e);
            if (matrix_rank(m) == k())
                throw Error("InvalidLattice", "e_" + std::to_string(i + 1) + " lies in the lattice");
        }
    }

    static Lattice from_rows(ZMat rows, std::size_t n, bool check = true) {
        Lattice l{n, std::move(rows)};
        if (check) l.validate();
        return l;
    }

    /// Same lattice with its basis in Hermite normal form.
    Lattice canonical() const { return Lattice{n, hermite_normal_form(basis, n)}; }

    /// Membership test for an integer vector.
    bool contains(const ZVec& v) const {
        QMat m = to_q(basis);
        auto sol = solve_linear(transpose(m, n), to_q(v), k());
        if (!sol) return false;
        for (const auto& x : *sol)
            if (!is_integral(x)) return false;
        return true;
    }
};

/// Basis of {w in Z^n : <w, v> = 0 for all v in Lambda_0}, in Hermite form.
inline Lattice orthogonal_complement_lattice(const Lattice& L) {
    return Lattice{L.n, integer_kernel(L.basis, L.n)};
}

// ---------------------------------------------------------------------------
// Rational polyhedra

/// a . x >= b, or a . x > b when strict.
struct Inequality {
    QVec a;
    Q b;
    bool strict = false;
};

struct RationalPolyhedron {
    std::size_t dim = 0;
    std::vector<Inequality> rows;

    RationalPolyhedron() = default;
    explicit RationalPolyhedron(std::size_t d) : dim(d) {}

    void check(const QVec& a) const {
        if (a.size() != dim) throw Error("DimensionMismatch", "inequality has wrong dimension");
    }
    void add_ge(QVec a, Q b) { check(a); rows.push_back({std::move(a), std::move(b), false}); }
    void add_gt(QVec a, Q b) { check(a); rows.push_back({std::move(a), std::move(b), true}); }
    void add_le(QVec a, Q b) {
        for (auto& x : a) x = -x;
        add_ge(std::move(a), -b);
    }
    void add_lt(QVec a, Q b) {
        for (auto& x : a) x = -x;
        add_gt(std::move(a), -b);
    }
    void add_eq(const QVec& a, const Q& b) {
        add_ge(a, b);
        add_le(a, b);
    }

    bool contains(const QVec& x) const {
        for (const auto& r : rows) {
            Q v = dot(r.a, x);
            if (r.strict ? !(v > r.b) : !(v >= r.b)) return false;
        }
        return true;
    }

    bool homogeneous() const {
        for (const auto& r : rows)
            if (sgn(r.b) != 0) return false;
        return true;
    }

    bool has_strict() const {
        for (const auto& r : rows)
            if (r.strict) return true;
        return false;
    }

    /// Recession cone (homogenized, non-strict).
    RationalPolyhedron recession_cone() const {
        RationalPolyhedron c(dim);
        for (const auto& r : rows) c.add_ge(r.a, 0);
        return c;
    }

    /// Polyhedron in the remaining variables after fixing the first values.size() coordinates.
    RationalPolyhedron fix_prefix(const QVec& values) const {
        std::size_t j = values.size();
        RationalPolyhedron p(dim - j);
        for (const auto& r : rows) {
            Q b = r.b;
            for (std::size_t i = 0; i < j; ++i) b -= r.a[i] * values[i];
            p.rows.push_back({QVec(r.a.begin() + static_cast<std::ptrdiff_t>(j), r.a.end()), b, r.strict});
        }
        return p;
    }
};

struct LpOutcome {
    enum Status { Infeasible, Unbounded, Optimal } status = Infeasible;
    QVec x;
    Q value;
};

namespace detail {

struct FmOverflow {};

struct FmRow {
    QVec a;
    Q b;
    std::vector<std::uint64_t> hist;
};

inline std::size_t popcount(const std::vector<std::uint64_t>& h) {
    std::size_t c = 0;
    for (auto w : h) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

/// Scales a row so its coefficient vector is primitive integral; false if the vector is zero.
inline bool normalize(FmRow& r) {
    Z den = 1;
    for (const auto& x : r.a) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    Z g = 0;
    for (const auto& x : r.a) {
        Z v = x.get_num() * (den / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (g == 0) return false;
    Q s(den, g);
    for (auto& x : r.a) x *= s;
    r.b *= s;
    return true;
}

enum class Pick { Nice, Max };

inline constexpr std::size_t kFmCap = 3000;

/// Fourier-Motzkin with Chernikov pruning over non-strict rows; returns a point or nullopt.
/// Variable 0 is eliminated last and chosen according to `pick0`; throws FmOverflow past kFmCap rows
/// or when the back-substituted point fails an input row. Infeasibility answers are always certified
/// by a derived contradiction.
inline std::optional<QVec> fm_solve(const std::vector<Inequality>& in, std::size_t dim, Pick pick0,
                                    bool* unbounded0 = nullptr) {
    std::size_t words = (in.size() + 63) / 64 + 1;
    std::vector<std::vector<FmRow>> stage(dim + 1);
    // Only exact duplicates are merged: replacing a weaker row by a stronger one can let the
    // history rule discard both.
    using Index = std::map<std::pair<QVec, Q>, std::size_t>;
    auto insert = [](std::vector<FmRow>& sys, Index& index, FmRow&& row) -> bool {
        if (!normalize(row)) return sgn(row.b) <= 0;
        auto key = std::make_pair(row.a, row.b);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(std::move(key), sys.size());
            sys.push_back(std::move(row));
        } else if (popcount(row.hist) < popcount(sys[it->second].hist)) {
            sys[it->second] = std::move(row);
        }
        return true;
    };
    {
        Index index;
        for (std::size_t i = 0; i < in.size(); ++i) {
            FmRow r{in[i].a, in[i].b, std::vector<std::uint64_t>(words, 0)};
            r.hist[i / 64] |= (std::uint64_t{1} << (i % 64));
            if (!insert(stage[dim], index, std::move(r))) return std::nullopt;
        }
    }
    for (std::size_t j = dim; j-- > 0;) {
        std::size_t eliminated = dim - j;
        const auto& cur = stage[j + 1];
        std::vector<FmRow> next;
        Index index;
        std::vector<const FmRow*> pos, neg;
        for (const auto& r : cur) {
            int s = sgn(r.a[j]);
            if (s > 0) pos.push_back(&r);
            else if (s < 0) neg.push_back(&r);
            else {
                FmRow copy = r;
                if (!insert(next, index, std::move(copy))) return std::nullopt;
            }
        }
        for (const FmRow* p : pos)
            for (const FmRow* q : neg) {
                std::vector<std::uint64_t> h(words);
                for (std::size_t w = 0; w < words; ++w) h[w] = p->hist[w] | q->hist[w];
                if (popcount(h) > eliminated + 1) continue;
                Q cp = -q->a[j], cq = p->a[j];
                FmRow r{QVec(dim), cp * p->b + cq * q->b, std::move(h)};
                for (std::size_t i = 0; i < dim; ++i) r.a[i] = cp * p->a[i] + cq * q->a[i];
                r.a[j] = 0;
                if (!insert(next, index, std::move(r))) return std::nullopt;
                if (next.size() > kFmCap) throw FmOverflow{};
            }
        stage[j] = std::move(next);
    }
    QVec x(dim, 0);
    for (std::size_t j = 0; j < dim; ++j) {
        std::optional<Q> lo, hi;
        for (const auto& r : stage[j + 1]) {
            if (sgn(r.a[j]) == 0) continue;
            Q val = r.b;
            for (std::size_t i = 0; i < j; ++i) val -= r.a[i] * x[i];
            Q bound = val / r.a[j];
            if (sgn(r.a[j]) > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else {
                if (!hi || bound < *hi) hi = bound;
            }
        }
        if (j == 0 && pick0 == Pick::Max) {
            if (!hi) {
                if (unbounded0) *unbounded0 = true;
                x[0] = lo ? *lo : Q(0);
            } else {
                x[0] = *hi;
            }
            continue;
        }
        if ((!lo || sgn(*lo) <= 0) && (!hi || sgn(*hi) >= 0)) x[j] = 0;
        else if (lo && sgn(*lo) > 0) {
            Q c(ceil_q(*lo));
            x[j] = (!hi || c <= *hi) ? c : *lo;
        } else {
            Q f(floor_q(*hi));
            x[j] = (!lo || f >= *lo) ? f : *hi;
        }
    }
    // Pruning can drop a row the witness needs; hand such systems to the simplex.
    for (const auto& r : in)
        if (dot(r.a, x) < r.b) throw FmOverflow{};
    return x;
}

/// Dense-tableau two-phase simplex with Bland's rule: maximize c.x over non-strict rows, x free.
inline LpOutcome simplex_maximize(const std::vector<Inequality>& in, std::size_t dim, const QVec& c) {
    std::size_t m = in.size();
    std::size_t nx = 2 * dim, ns = m, na = m;
    std::size_t N = nx + ns + na;
    QMat T(m, QVec(N + 1, 0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        int flip = sgn(in[i].b) < 0 ? -1 : 1;
        for (std::size_t j = 0; j < dim; ++j) {
            T[i][j] = flip * in[i].a[j];
            T[i][dim + j] = -flip * in[i].a[j];
        }
        T[i][nx + i] = -flip;
        T[i][nx + ns + i] = 1;
        T[i][N] = flip * in[i].b;
        basis[i] = nx + ns + i;
    }
    auto pivot = [&](std::size_t r, std::size_t col) {
        Q inv = 1 / T[r][col];
        for (auto& v : T[r]) v *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || sgn(T[i][col]) == 0) continue;
            Q f = T[i][col];
            for (std::size_t j = 0; j <= N; ++j) T[i][j] -= f * T[r][j];
        }
        basis[r] = col;
    };
    // Returns false when unbounded.
    auto run = [&](const QVec& cost, std::size_t allowed) -> bool {
        while (true) {
            std::size_t enter = N;
            for (std::size_t j = 0; j < allowed; ++j) {
                Q d = cost[j];
                for (std::size_t i = 0; i < m; ++i) d -= cost[basis[i]] * T[i][j];
                if (sgn(d) > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == N) return true;
            std::size_t leave = m;
            Q best;
            for (std::size_t i = 0; i < m; ++i) {
                if (sgn(T[i][enter]) <= 0) continue;
                Q ratio = T[i][N] / T[i][enter];
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) return false;
            pivot(leave, enter);
        }
    };
    QVec phase1(N, 0);
    for (std::size_t j = nx + ns; j < N; ++j) phase1[j] = -1;
    run(phase1, N);
    Q infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= nx + ns) infeas += T[i][N];
    LpOutcome out;
    if (sgn(infeas) != 0) return out;
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < nx + ns) continue;
        for (std::size_t j = 0; j < nx + ns; ++j)
            if (sgn(T[i][j]) != 0) {
                pivot(i, j);
                break;
            }
    }
    QVec cost(N, 0);
    for (std::size_t j = 0; j < dim; ++j) {
        cost[j] = c[j];
        cost[dim + j] = -c[j];
    }
    bool bounded = run(cost, nx + ns);
    QVec z(N, 0);
    for (std::size_t i = 0; i < m; ++i) z[basis[i]] = T[i][N];
    out.x.assign(dim, 0);
    for (std::size_t j = 0; j < dim; ++j) out.x[j] = z[j] - z[dim + j];
    out.value = dot(c, out.x);
    out.status = bounded ? LpOutcome::Optimal : LpOutcome::Unbounded;
    return out;
}

/// Maximize c.x over non-strict rows.
inline LpOutcome maximize_nonstrict(const std::vector<Inequality>& rows, std::size_t dim, const QVec& c) {
    // Variables (z, x) with z <= c.x; maximize z.
    std::vector<Inequality> sys;
    sys.reserve(rows.size() + 1);
    for (const auto& r : rows) {
        QVec a(dim + 1, 0);
        std::copy(r.a.begin(), r.a.end(), a.begin() + 1);
        sys.push_back({std::move(a), r.b, false});
    }
    QVec zc(dim + 1, 0);
    zc[0] = -1;
    for (std::size_t i = 0; i < dim; ++i) zc[i + 1] = c[i];
    sys.push_back({std::move(zc), 0, false});
    LpOutcome out;
    try {
        bool unb = false;
        auto sol = fm_solve(sys, dim + 1, Pick::Max, &unb);
        if (!sol) return out;
        if (unb) throw FmOverflow{};
        out.x.assign(sol->begin() + 1, sol->end());
        out.value = dot(c, out.x);
        out.status = LpOutcome::Optimal;
        return out;
    } catch (const FmOverflow&) {
        return simplex_maximize(rows, dim, c);
    }
}

inline std::optional<QVec> feasible_nonstrict(const std::vector<Inequality>& rows, std::size_t dim) {
    try {
        return fm_solve(rows, dim, Pick::Nice);
    } catch (const FmOverflow&) {
        auto r = simplex_maximize(rows, dim, QVec(dim, 0));
        if (r.status == LpOutcome::Infeasible) return std::nullopt;
        return r.x;
    }
}

}  // namespace detail

/// Exact feasibility with a witness; strict rows are handled with an auxiliary slack maximized up to 1.
inline std::optional<QVec> polyhedron_feasible(const RationalPolyhedron& P) {
    for (const auto& r : P.rows) P.check(r.a);
    if (!P.has_strict()) return detail::feasible_nonstrict(P.rows, P.dim);
    std::vector<Inequality> rows;
    for (const auto& r : P.rows) {
        QVec a(P.dim + 1, 0);
        std::copy(r.a.begin(), r.a.end(), a.begin() + 1);
        if (r.strict) a[0] = -1;
        rows.push_back({std::move(a), r.b, false});
    }
    QVec cap(P.dim + 1, 0);
    cap[0] = -1;
    rows.push_back({cap, -1, false});
    QVec obj(P.dim + 1, 0);
    obj[0] = 1;
    auto res = detail::maximize_nonstrict(rows, P.dim + 1, obj);
    if (res.status == LpOutcome::Infeasible || sgn(res.x[0]) <= 0) return std::nullopt;
    QVec x(res.x.begin() + 1, res.x.end());
    return x;
}

/// Maximize c.x over a closed polyhedron.
inline LpOutcome lp_maximize(const RationalPolyhedron& P, const QVec& c) {
    if (P.has_strict()) throw Error("DimensionMismatch", "lp_maximize needs a closed polyhedron");
    if (c.size() != P.dim) throw Error("DimensionMismatch", "objective has wrong dimension");
    return detail::maximize_nonstrict(P.rows, P.dim, c);
}

inline LpOutcome lp_minimize(const RationalPolyhedron& P, QVec c) {
    for (auto& x : c) x = -x;
    auto r = lp_maximize(P, c);
    r.value = -r.value;
    return r;
}

/// True iff {v in C : xi(v) >= 0} = {0}, i.e. xi is strictly negative on C minus the origin.
inline bool functional_bounded_on_cone(const QVec& xi, const RationalPolyhedron& C) {
    if (!C.homogeneous()) throw Error("NonHomogeneous", "cone has a nonzero constant");
    if (xi.size() != C.dim) throw Error("DimensionMismatch", "covector has wrong dimension");
    RationalPolyhedron base = C.recession_cone();
    base.add_ge(xi, 0);
    for (std::size_t j = 0; j < C.dim; ++j)
        for (int s : {1, -1}) {
            RationalPolyhedron p = base;
            QVec e(C.dim, 0);
            e[j] = s;
            p.add_ge(e, 1);
            if (polyhedron_feasible(p)) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Lattice points

namespace detail {

/// Integer points of P. The recession cone's span U is split off by a unimodular change of
/// variables; the bounded complementary coordinates are enumerated and each nonempty fiber
/// (whose recession cone is full-dimensional in U) yields a point by pushing along an interior ray.
inline void integer_search(const RationalPolyhedron& P, bool all, std::vector<ZVec>& out) {
    std::size_t d = P.dim;
    auto feas = polyhedron_feasible(P);
    if (!feas) return;
    if (d == 0) {
        out.push_back({});
        return;
    }
    RationalPolyhedron closedP(d);
    for (const auto& r : P.rows) closedP.rows.push_back(r);
    RationalPolyhedron rec = P.recession_cone();
    ZMat implicit;
    QVec ray(d, 0);
    for (const auto& r : P.rows) {
        bool zero = true;
        for (const auto& x : r.a) zero = zero && sgn(x) == 0;
        if (zero) continue;
        RationalPolyhedron t = rec;
        t.add_ge(r.a, 1);
        auto w = polyhedron_feasible(t);
        if (w) {
            for (std::size_t i = 0; i < d; ++i) ray[i] += (*w)[i];
        } else {
            Z den = 1;
            for (const auto& x : r.a) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
            ZVec zr(d);
            for (std::size_t i = 0; i < d; ++i) zr[i] = Q(r.a[i] * den).get_num();
            implicit.push_back(std::move(zr));
        }
    }
    std::size_t bounded_dims;
    ZMat V;
    if (implicit.empty()) {
        bounded_dims = 0;
        V = identity_z(d);
    } else {
        auto f = smith_normal_form(implicit, d);
        bounded_dims = f.rank;
        V = f.V;
    }
    if (all && bounded_dims < d) throw Error("UnboundedEnumeration", "polyhedron is unbounded");
    // Rows in s-coordinates, t = V s.
    RationalPolyhedron S(d);
    for (const auto& r : P.rows) {
        QVec a(d, 0);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i) a[j] += r.a[i] * V[i][j];
        S.rows.push_back({std::move(a), r.b, r.strict});
    }
    QMat Vq = to_q(V);
    QVec ray_s;
    if (bounded_dims < d) {
        QMat Vinv = inverse(Vq);
        ray_s.assign(d, 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) ray_s[i] += Vinv[i][j] * ray[j];
        Z den = 1;
        for (const auto& x : ray_s) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
        for (auto& x : ray_s) x *= den;
    }
    auto to_t = [&](const ZVec& s) {
        ZVec t(d, 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) t[i] += V[i][j] * s[j];
        return t;
    };
    QVec prefix;
    std::function<bool()> dfs = [&]() -> bool {
        std::size_t j = prefix.size();
        RationalPolyhedron sub = S.fix_prefix(prefix);
        if (j == bounded_dims) {
            auto y0 = polyhedron_feasible(sub);
            if (!y0) return false;
            ZVec s(d);
            for (std::size_t i = 0; i < j; ++i) s[i] = prefix[i].get_num();
            if (j == d) {
                out.push_back(to_t(s));
                return !all;
            }
            std::size_t u = d - j;
            Q lambda = 0;
            for (const auto& r : sub.rows) {
                Q ap = 0, ay = 0, l1 = 0;
                for (std::size_t i = 0; i < u; ++i) {
                    ap += r.a[i] * ray_s[j + i];
                    ay += r.a[i] * (*y0)[i];
                    l1 += abs(r.a[i]);
                }
                if (sgn(ap) <= 0) continue;
                Q need = (r.b - ay + l1 / 2 + (r.strict ? Q(1) : Q(0))) / ap;
                if (need > lambda) lambda = need;
            }
            lambda = Q(ceil_q(lambda));
            for (std::size_t i = 0; i < u; ++i) s[j + i] = round_q((*y0)[i] + lambda * ray_s[j + i]);
            ZVec t = to_t(s);
            if (!P.contains(to_q(t))) throw Error("InternalError", "lattice witness failed verification");
            out.push_back(std::move(t));
            return true;
        }
        RationalPolyhedron closed = sub;
        for (auto& r : closed.rows) r.strict = false;
        QVec e(d - j, 0);
        e[0] = 1;
        auto hi = lp_maximize(closed, e);
        if (hi.status == LpOutcome::Infeasible) return false;
        auto lo = lp_minimize(closed, e);
        if (hi.status != LpOutcome::Optimal || lo.status != LpOutcome::Optimal)
            throw Error("InternalError", "bounded coordinate has no finite range");
        for (Z v = ceil_q(lo.value); v <= floor_q(hi.value); ++v) {
            prefix.push_back(Q(v));
            bool stop = dfs();
            prefix.pop_back();
            if (stop) return true;
        }
        return false;
    };
    dfs();
}

}  // namespace detail

/// All integer points of a bounded polyhedron, in increasing order; throws UnboundedEnumeration.
inline std::vector<ZVec> lattice_points_in_polytope(const RationalPolyhedron& P) {
    std::vector<ZVec> out;
    detail::integer_search(P, true, out);
    std::sort(out.begin(), out.end());
    return out;
}

/// One integer point of P (bounded or not), if any.
inline std::optional<ZVec> lattice_point_witness(const RationalPolyhedron& P) {
    std::vector<ZVec> out;
    detail::integer_search(P, false, out);
    if (out.empty()) return std::nullopt;
    return out.front();
}

/// Affine lattice basepoint + Lambda_0; its points are basepoint + t B for t in Z^k.
struct AffineLattice {
    QVec basepoint;
    Lattice lattice;

    QVec point(const ZVec& t) const {
        QVec p = basepoint;
        for (std::size_t j = 0; j < t.size(); ++j)
            for (std::size_t i = 0; i < p.size(); ++i) p[i] += t[j] * lattice.basis[j][i];
        return p;
    }

    /// Pulls an ambient polyhedron back to lattice coordinates t.
    RationalPolyhedron pullback(const RationalPolyhedron& ambient) const {
        if (ambient.dim != basepoint.size()) throw Error("DimensionMismatch", "polyhedron and lattice differ");
        RationalPolyhedron p(lattice.k());
        for (const auto& r : ambient.rows) {
            QVec a(lattice.k(), 0);
            for (std::size_t j = 0; j < lattice.k(); ++j)
                for (std::size_t i = 0; i < basepoint.size(); ++i) a[j] += r.a[i] * lattice.basis[j][i];
            p.rows.push_back({std::move(a), r.b - dot(r.a, basepoint), r.strict});
        }
        return p;
    }
};

inline std::vector<QVec> lattice_points_in_polytope(const AffineLattice& A, const RationalPolyhedron& P) {
    std::vector<QVec> pts;
    for (const auto& t : lattice_points_in_polytope(A.pullback(P))) pts.push_back(A.point(t));
    return pts;
}

inline std::optional<QVec> lattice_point_witness(const AffineLattice& A, const RationalPolyhedron& P) {
    auto t = lattice_point_witness(A.pullback(P));
    if (!t) return std::nullopt;
    return A.point(*t);
}

}  // namespace hypertoric
