/**
 * @file test_exact.cpp
 * @brief Exact linear algebra, normal forms, lattices and polyhedra.
 */
#include <gtest/gtest.h>

#include <random>

#include "hypertoric/exact.hpp"

using namespace hypertoric;

namespace {

ZMat zm(std::initializer_list<std::initializer_list<int>> rows) {
    ZMat m;
    for (auto r : rows) {
        ZVec v;
        for (int x : r) v.push_back(x);
        m.push_back(v);
    }
    return m;
}

QVec qv(std::initializer_list<int> xs) {
    QVec v;
    for (int x : xs) v.push_back(x);
    return v;
}

ZMat random_matrix(std::mt19937& rng, std::size_t m, std::size_t n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    ZMat a(m, ZVec(n));
    for (auto& r : a)
        for (auto& x : r) x = d(rng);
    return a;
}

}  // namespace

TEST(Smith, DiagonalTwoThree) {
    auto f = smith_normal_form(zm({{2, 0}, {0, 3}}));
    EXPECT_EQ(f.S, zm({{1, 0}, {0, 6}}));
}

TEST(Smith, DifferenceMatrix) {
    auto f = smith_normal_form(zm({{1, -1, 0}, {0, 1, -1}}));
    EXPECT_EQ(f.S, zm({{1, 0, 0}, {0, 1, 0}}));
}

TEST(Smith, PropertyTransformsAndDivisibility) {
    std::mt19937 rng(7);
    for (int it = 0; it < 200; ++it) {
        std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
        ZMat a = random_matrix(rng, m, n, -6, 6);
        auto f = smith_normal_form(a);
        EXPECT_EQ(matmul(matmul(f.U, a), f.V), f.S);
        EXPECT_EQ(abs(determinant(f.U)), 1);
        EXPECT_EQ(abs(determinant(f.V)), 1);
        EXPECT_EQ(f.rank, matrix_rank(a));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) { EXPECT_EQ(f.S[i][j], 0); }
        for (std::size_t i = 0; i + 1 < f.rank; ++i) {
            EXPECT_GT(f.S[i][i], 0);
            EXPECT_EQ(f.S[i + 1][i + 1] % f.S[i][i], 0);
        }
    }
}

TEST(Hermite, SameLatticeSameForm) {
    std::mt19937 rng(11);
    for (int it = 0; it < 100; ++it) {
        std::size_t k = 1 + rng() % 3, n = k + rng() % 3;
        ZMat a = random_matrix(rng, k, n, -4, 4);
        ZMat u = identity_z(k);
        std::uniform_int_distribution<int> d(-2, 2);
        for (int s = 0; s < 4; ++s) {
            std::size_t i = rng() % k, j = rng() % k;
            if (i == j) continue;
            int c = d(rng);
            for (std::size_t x = 0; x < k; ++x) u[i][x] += c * u[j][x];
        }
        EXPECT_EQ(hermite_normal_form(a, n), hermite_normal_form(matmul(u, a), n));
    }
}

TEST(Rank, DependentRows) {
    EXPECT_EQ(matrix_rank(zm({{1, 2}, {2, 4}})), 1u);
}

TEST(Summand, Examples) {
    EXPECT_FALSE(is_direct_summand(zm({{2, 0}})));
    EXPECT_TRUE(is_direct_summand(zm({{1, -1}})));
    try {
        is_direct_summand(zm({{1, 2}, {2, 4}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "DependentRows");
    }
}

TEST(Lattice, ComplementOfDiagonal) {
    auto L = Lattice::from_rows(zm({{1, -1}}), 2);
    auto C = orthogonal_complement_lattice(L);
    EXPECT_EQ(C.basis, zm({{1, 1}}));
}

TEST(Lattice, ComplementProperty) {
    std::mt19937 rng(3);
    for (int it = 0; it < 100; ++it) {
        std::size_t n = 2 + rng() % 4, k = 1 + rng() % (n - 1);
        ZMat a = random_matrix(rng, k, n, -3, 3);
        if (matrix_rank(a) != k || !is_direct_summand(a)) continue;
        Lattice L{n, a};
        auto C = orthogonal_complement_lattice(L);
        EXPECT_EQ(C.k(), n - k);
        EXPECT_TRUE(is_direct_summand(C.basis));
        for (const auto& u : L.basis)
            for (const auto& w : C.basis) EXPECT_EQ(dot(u, w), 0);
        auto CC = orthogonal_complement_lattice(C);
        EXPECT_EQ(CC.basis, hermite_normal_form(a, n));
    }
}

TEST(Lattice, Validation) {
    EXPECT_THROW(Lattice::from_rows(zm({{2, 0}}), 2), Error);
    EXPECT_THROW(Lattice::from_rows(zm({{1, 0}}), 2), Error);
    EXPECT_THROW(Lattice::from_rows(zm({{1, 0, 0}, {0, 1, 0}}), 3), Error);
    EXPECT_NO_THROW(Lattice::from_rows(zm({{1, 1, 1}}), 3));
}

TEST(Polyhedron, TriangleLatticePoints) {
    RationalPolyhedron P(2);
    P.add_ge(qv({1, 0}), 0);
    P.add_ge(qv({0, 1}), 0);
    P.add_le(qv({1, 1}), 1);
    auto pts = lattice_points_in_polytope(P);
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts[0], ZVec({0, 0}));
    EXPECT_EQ(pts[1], ZVec({0, 1}));
    EXPECT_EQ(pts[2], ZVec({1, 0}));
}

TEST(Polyhedron, HalfOpenInterval) {
    RationalPolyhedron P(1);
    P.add_ge(qv({1}), 0);
    P.add_le(qv({1}), Q(5, 2));
    auto pts = lattice_points_in_polytope(P);
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts[2], ZVec({2}));
}

TEST(Polyhedron, UnboundedEnumerationFails) {
    RationalPolyhedron P(1);
    P.add_ge(qv({1}), 0);
    try {
        lattice_points_in_polytope(P);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "UnboundedEnumeration");
    }
    auto w = lattice_point_witness(P);
    ASSERT_TRUE(w);
    EXPECT_GE((*w)[0], 0);
}

TEST(Polyhedron, ThinUnboundedStripHasNoLatticePoint) {
    // 1/3 <= x - 2y <= 2/3 contains no integer point; unbounded along (2,1).
    RationalPolyhedron P(2);
    P.add_ge(qv({1, -2}), Q(1, 3));
    P.add_le(qv({1, -2}), Q(2, 3));
    EXPECT_TRUE(polyhedron_feasible(P));
    EXPECT_FALSE(lattice_point_witness(P));
    P.rows[1].b = -Q(4, 3);
    EXPECT_TRUE(lattice_point_witness(P));
}

TEST(Polyhedron, StrictInequalities) {
    RationalPolyhedron P(1);
    P.add_gt(qv({1}), -1);
    P.add_lt(qv({1}), 0);
    auto x = polyhedron_feasible(P);
    ASSERT_TRUE(x);
    EXPECT_TRUE(P.contains(*x));
    EXPECT_FALSE(lattice_point_witness(P));
    RationalPolyhedron R(1);
    R.add_gt(qv({1}), 0);
    R.add_lt(qv({1}), 0);
    EXPECT_FALSE(polyhedron_feasible(R));
}

TEST(Polyhedron, LpMaximize) {
    RationalPolyhedron P(2);
    P.add_ge(qv({1, 0}), 0);
    P.add_ge(qv({0, 1}), 0);
    P.add_le(qv({2, 1}), 4);
    P.add_le(qv({1, 3}), 6);
    auto r = lp_maximize(P, qv({1, 1}));
    ASSERT_EQ(r.status, LpOutcome::Optimal);
    EXPECT_EQ(r.value, Q(14, 5));
    auto u = lp_maximize(P, qv({-1, 0}));
    EXPECT_EQ(u.value, 0);
    RationalPolyhedron H(1);
    H.add_ge(qv({1}), 0);
    EXPECT_EQ(lp_maximize(H, qv({1})).status, LpOutcome::Unbounded);
}

TEST(Polyhedron, SimplexAgreesWithElimination) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int it = 0; it < 600; ++it) {
        std::size_t dim = 1 + rng() % 5, m = 1 + rng() % 9;
        std::vector<Inequality> rows;
        for (std::size_t i = 0; i < m; ++i) {
            QVec a(dim);
            for (auto& x : a) x = d(rng);
            rows.push_back({a, rng() % 2 ? Q(0) : Q(d(rng)), false});
        }
        QVec c(dim);
        for (auto& x : c) x = d(rng);
        auto s = detail::simplex_maximize(rows, dim, c);
        auto f = detail::maximize_nonstrict(rows, dim, c);
        EXPECT_EQ(s.status, f.status);
        if (s.status == LpOutcome::Optimal) { EXPECT_EQ(s.value, f.value); }
        if (f.status != LpOutcome::Infeasible) {
            RationalPolyhedron P(dim);
            P.rows = rows;
            EXPECT_TRUE(P.contains(f.x));
        }
    }
}

TEST(Polyhedron, EmptyConeSliceWithManyRows) {
    RationalPolyhedron P(4);
    for (auto a : {qv({2, 1, -1, -1}), qv({-2, -2, 0, 1}), qv({-1, 1, -1, 1}), qv({1, -1, -2, 2}), qv({1, -1, 2, 2}),
                   qv({0, 1, 1, -2}), qv({1, 2, -1, 0})})
        P.add_ge(a, 0);
    P.add_ge(qv({0, 1, 0, 0}), 1);
    EXPECT_FALSE(polyhedron_feasible(P).has_value());
    EXPECT_EQ(detail::simplex_maximize(P.rows, 4, qv({0, 0, 0, 0})).status, LpOutcome::Infeasible);
}

TEST(Polyhedron, FeasibilityAgreesWithSimplexOnCones) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int it = 0; it < 400; ++it) {
        std::size_t dim = 3 + rng() % 3, m = 6 + rng() % 7;
        RationalPolyhedron P(dim);
        for (std::size_t i = 0; i < m; ++i) {
            QVec a(dim);
            for (auto& x : a) x = d(rng);
            P.add_ge(a, 0);
        }
        QVec e(dim, 0);
        e[rng() % dim] = 1;
        P.add_ge(e, 1);
        auto w = polyhedron_feasible(P);
        auto s = detail::simplex_maximize(P.rows, dim, QVec(dim, 0));
        EXPECT_EQ(w.has_value(), s.status != LpOutcome::Infeasible);
        if (w) { EXPECT_TRUE(P.contains(*w)); }
    }
}

TEST(Polyhedron, EnumerationMatchesBoxScan) {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int it = 0; it < 60; ++it) {
        RationalPolyhedron P(2);
        for (int s = 0; s < 2; ++s) {
            P.add_ge(qv({s == 0 ? 1 : 0, s == 1 ? 1 : 0}), -4);
            P.add_le(qv({s == 0 ? 1 : 0, s == 1 ? 1 : 0}), 4);
        }
        for (int r = 0; r < 3; ++r) P.add_ge(qv({d(rng), d(rng)}), Q(d(rng), 2));
        std::vector<ZVec> scan;
        for (int x = -4; x <= 4; ++x)
            for (int y = -4; y <= 4; ++y)
                if (P.contains(qv({x, y}))) scan.push_back({x, y});
        EXPECT_EQ(lattice_points_in_polytope(P), scan);
        EXPECT_EQ(lattice_point_witness(P).has_value(), !scan.empty());
    }
}

TEST(Cone, FunctionalBounded) {
    RationalPolyhedron C(1);
    C.add_ge(qv({1}), 0);
    EXPECT_TRUE(functional_bounded_on_cone(qv({-1}), C));
    EXPECT_FALSE(functional_bounded_on_cone(qv({1}), C));
    RationalPolyhedron N(1);
    N.add_ge(qv({1}), 1);
    EXPECT_THROW(functional_bounded_on_cone(qv({-1}), N), Error);
}

TEST(Integer, Solve) {
    auto x = integer_solve(zm({{2, 4}}), ZVec({6}), 2);
    ASSERT_TRUE(x);
    EXPECT_EQ(2 * (*x)[0] + 4 * (*x)[1], 6);
    EXPECT_FALSE(integer_solve(zm({{2, 4}}), ZVec({3}), 2));
}

TEST(Rational, Parse) {
    EXPECT_EQ(parse_rational("-3/6"), Q(-1, 2));
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("x"), Error);
}
