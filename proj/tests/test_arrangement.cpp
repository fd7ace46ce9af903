/**
 * @file test_arrangement.cpp
 * @brief Chamber sets, regularity flags, linkage and essentialization.
 */
#include <gtest/gtest.h>

#include <random>

#include "hypertoric/arrangement.hpp"

using namespace hypertoric;

namespace {

Lattice diagonal3() { return Lattice::from_rows({{1, -1, 0}, {0, 1, -1}}, 3); }
Lattice diagonal2() { return Lattice::from_rows({{1, -1}}, 2); }
Lattice all_ones(int n) { return Lattice::from_rows({ZVec(n, 1)}, n); }

QuantizedArrangement quantized(const Lattice& L, std::vector<Q> v0, ZVec xi) { return {L, std::move(v0), std::move(xi)}; }

/// Example-4.6-type lattice with basepoint summing to c.
QuantizedArrangement sum_lattice(int n, int c) {
    ZMat rows;
    for (int i = 0; i + 1 < n; ++i) {
        ZVec r(n, 0);
        r[i] = 1;
        r[i + 1] = -1;
        rows.push_back(r);
    }
    QVec v0(n, 0);
    v0[0] = c;
    return {Lattice::from_rows(rows, n), v0, ZVec(n - 1, 1)};
}

Lattice random_lattice(std::mt19937& rng, std::size_t n, std::size_t k) {
    std::uniform_int_distribution<int> d(-2, 2);
    while (true) {
        ZMat a(k, ZVec(n));
        for (auto& r : a)
            for (auto& x : r) x = d(rng);
        try {
            return Lattice::from_rows(a, n);
        } catch (const Error&) {
        }
    }
}

/// Feasibility by scanning a rational grid in lattice coordinates (k <= 2).
SignSet grid_feasible(const PolarizedArrangement& X, int radius, int denom) {
    std::set<SignVector> seen;
    std::size_t k = X.k();
    std::vector<int> idx(k, -radius * denom);
    while (true) {
        QVec t(k);
        for (std::size_t j = 0; j < k; ++j) t[j] = Q(idx[j], denom);
        auto h = X.h_values(t);
        std::vector<std::size_t> zeros;
        SignVector base;
        for (std::size_t i = 0; i < h.size(); ++i) {
            base.push_back(sgn(h[i]) >= 0 ? '+' : '-');
            if (sgn(h[i]) == 0) zeros.push_back(i);
        }
        for (std::size_t m = 0; m < (std::size_t{1} << zeros.size()); ++m) {
            SignVector a = base;
            for (std::size_t z = 0; z < zeros.size(); ++z)
                if (m >> z & 1) a[zeros[z]] = '-';
            seen.insert(a);
        }
        std::size_t j = 0;
        while (j < k && idx[j] == radius * denom) idx[j++] = -radius * denom;
        if (j == k) break;
        ++idx[j];
    }
    return SignSet(seen.begin(), seen.end());
}

std::size_t vertex_count(const PolarizedArrangement& X) {
    std::set<QVec> pts;
    for (const auto& s : subsets_of_size(iota_indices(X.n()), X.k())) {
        QMat m;
        QVec b;
        for (auto i : s) {
            m.push_back(to_q(X.lambda0.column(i)));
            b.push_back(-Q(X.eta[i]));
        }
        if (matrix_rank(m) != X.k()) continue;
        pts.insert(*solve_linear(m, b, X.k()));
    }
    return pts.size();
}

}  // namespace

TEST(Normals, ReadOffColumns) {
    auto n2 = restricted_normals(diagonal2());
    EXPECT_EQ(n2, (std::vector<ZVec>{{1}, {-1}}));
    auto n3 = restricted_normals(diagonal3());
    EXPECT_EQ(n3, (std::vector<ZVec>{{1, 0}, {-1, 1}, {0, -1}}));
    for (const auto& v : n3) EXPECT_NE(v, ZVec(2, 0));
}

TEST(Feasible, DiagonalThreeHasSevenChambers) {
    PolarizedArrangement X{diagonal3(), {1, 0, 0}, {1, 1}};
    auto F = feasible_signs(X);
    EXPECT_EQ(F.size(), 7u);
    EXPECT_TRUE(contains(F, "+++"));
    EXPECT_FALSE(contains(F, "---"));
    EXPECT_TRUE(X.chamber("+++").contains(QVec{0, 0}));
    EXPECT_EQ(X.h_values(QVec{0, 0}), (QVec{1, 0, 0}));
}

TEST(Bounded, DiagonalThreeBoundedFeasible) {
    PolarizedArrangement X{diagonal3(), {1, 0, 0}, {1, 1}};
    EXPECT_EQ(bounded_feasible_signs(X), (SignSet{"+++", "-++", "--+"}));
}

TEST(Bounded, ZeroCovectorGivesTotallyBounded) {
    EXPECT_EQ(bounded_signs(diagonal2(), {0}), (SignSet{"++", "--"}));
}

TEST(Bounded, DiagonalTwo) {
    PolarizedArrangement X{diagonal2(), {1, 0}, {1}};
    EXPECT_EQ(feasible_signs(X), (SignSet{"++", "+-", "-+"}));
    EXPECT_EQ(bounded_signs(X), (SignSet{"++", "-+", "--"}));
    EXPECT_EQ(bounded_feasible_signs(X), (SignSet{"++", "-+"}));
}

TEST(Bounded, AmbientCovectorRestriction) {
    EXPECT_EQ(restrict_covector(diagonal3(), {1, 0, -1}), (ZVec{1, 1}));
}

TEST(Quantized, DiagonalThreeIntegral) {
    auto X = sum_lattice(3, 1);
    EXPECT_EQ(quantized_feasible_signs(X).size(), 7u);
}

TEST(Quantized, AllOnesNonRegular) {
    for (int n = 2; n <= 4; ++n) {
        auto X = quantized(all_ones(n), QVec(n, 0), {1});
        SignSet expect{std::string(n, '+'), std::string(n, '-')};
        EXPECT_EQ(quantized_feasible_signs(X), expect);
    }
}

TEST(Quantized, NoIntegralIndices) {
    auto X = quantized(diagonal3(), {Q(1, 2), Q(1, 2), Q(1, 2)}, {1, 1});
    EXPECT_EQ(quantized_feasible_signs(X), (SignSet{""}));
    EXPECT_TRUE(quantized_bounded_feasible_signs(X).empty());
}

TEST(Quantized, IntegralIndicesIndependentOfLift) {
    auto X = quantized(diagonal3(), {Q(1, 2), 0, Q(3, 2)}, {1, 1});
    auto Y = X.shifted({2, -3, 1});
    EXPECT_EQ(X.integral_indices(), Y.integral_indices());
    EXPECT_EQ(quantized_feasible_signs(X), quantized_feasible_signs(Y));
}

TEST(Regularity, EtaRegularity) {
    EXPECT_TRUE(eta_regular({diagonal3(), {1, 0, 0}, {1, 1}}));
    EXPECT_FALSE(eta_regular({diagonal3(), {0, 0, 0}, {1, 1}}));
}

TEST(Regularity, SumLatticeRegularRange) {
    int n = 3;
    for (int c = -6; c <= 3; ++c) {
        auto r = regularity_report(sum_lattice(n, c));
        EXPECT_EQ(*r.lambda_regular, c >= 0 || c <= -n) << "c=" << c;
        EXPECT_TRUE(*r.integral);
    }
    auto r0 = regularity_report(sum_lattice(3, 0));
    EXPECT_TRUE(*r0.quasi_regular);
    EXPECT_TRUE(*r0.lambda_regular);
}

TEST(Regularity, DiagonalIsUnimodular) {
    for (int n = 2; n <= 5; ++n) EXPECT_TRUE(regularity_report(sum_lattice(n, 1)).unimodular);
    EXPECT_FALSE(is_unimodular(Lattice::from_rows({{1, 1, 0}, {0, 1, 2}}, 3)));
}

TEST(Regularity, CovectorRegularity) {
    EXPECT_TRUE(covector_regular(diagonal3(), {1, 1}, {0, 1, 2}));
    EXPECT_FALSE(covector_regular(diagonal3(), {1, 0}, {0, 1, 2}));
    EXPECT_FALSE(covector_regular(diagonal2(), {0}, {0, 1}));
}

TEST(Linked, DiagonalThree) {
    PolarizedArrangement X{diagonal3(), {1, 0, 0}, {1, 1}};
    auto r = is_linked(X, sum_lattice(3, 1));
    EXPECT_TRUE(r.linked);
    ASSERT_TRUE(r.translation_k);
    EXPECT_EQ(*r.translation_k, 1);
    EXPECT_FALSE(is_linked(X, sum_lattice(3, -3)).linked);
}

TEST(Linked, Errors) {
    PolarizedArrangement X{diagonal3(), {1, 0, 0}, {1, 1}};
    auto Y = sum_lattice(3, 1);
    Y.xi = {1, 2};
    try {
        is_linked(X, Y);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "ParameterMismatch");
    }
    try {
        is_linked(X, sum_lattice(3, -1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "NotRegular");
    }
}

TEST(Essentialize, IntegralIsIdentity) {
    auto X = sum_lattice(3, 1);
    auto Y = essentialize(X);
    EXPECT_EQ(Y.lambda0.basis, X.lambda0.basis);
    EXPECT_EQ(Y.basepoint, X.basepoint);
}

TEST(Essentialize, NoIntegralIndicesFails) {
    auto X = quantized(diagonal2(), {Q(1, 2), Q(1, 2)}, {1});
    try {
        essentialize(X);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "Inessential");
    }
}

TEST(Essentialize, HalfIntegralPair) {
    auto X = quantized(diagonal2(), {0, Q(1, 2)}, {1});
    auto Y = essentialize(X);
    EXPECT_EQ(Y.n(), 1u);
    EXPECT_EQ(quantized_feasible_signs(Y), quantized_feasible_signs(X));
    EXPECT_EQ(quantized_bounded_signs(Y), quantized_bounded_signs(X));
    EXPECT_EQ(quantized_bounded_feasible_signs(Y), quantized_bounded_feasible_signs(X));
    EXPECT_EQ(quantized_feasible_signs(Y), (SignSet{"+", "-"}));
}

TEST(ChamberCount, Examples) {
    auto c = chamber_count_check(sum_lattice(3, 1));
    EXPECT_EQ(c.count, 7u);
    EXPECT_EQ(c.bound, 7u);
    EXPECT_TRUE(c.equal);
    auto d = chamber_count_check(quantized(all_ones(3), QVec(3, 0), {1}));
    EXPECT_EQ(d.count, 2u);
    EXPECT_LT(d.count, d.bound);
    auto e = chamber_count_check(quantized(diagonal3(), {Q(1, 2), Q(1, 2), Q(1, 2)}, {1, 1}));
    EXPECT_EQ(e.count, 1u);
    EXPECT_EQ(e.bound, 1u);
}

TEST(Equivalence, Keys) {
    PolarizedArrangement X{diagonal3(), {1, 0, 0}, {1, 1}};
    PolarizedArrangement Xs{diagonal3(), {2, -1, 0}, {1, 1}};
    PolarizedArrangement X2{diagonal3(), {2, 0, 0}, {1, 1}};
    PolarizedArrangement X5{diagonal3(), {-5, 0, 0}, {1, 1}};
    EXPECT_EQ(equivalence_key(X), equivalence_key(Xs));
    EXPECT_EQ(equivalence_key(X), equivalence_key(X2));
    EXPECT_NE(equivalence_key(X), equivalence_key(X5));
    EXPECT_EQ(equivalence_key(X).serialize(), equivalence_key(X2).serialize());
}

TEST(Property, FeasibleMatchesGridScan) {
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> d(-3, 3);
    int checked = 0;
    for (int it = 0; it < 40; ++it) {
        std::size_t n = 2 + rng() % 3, k = 1 + rng() % std::min<std::size_t>(2, n - 1);
        auto L = random_lattice(rng, n, k);
        ZVec eta(n);
        for (auto& x : eta) x = d(rng);
        PolarizedArrangement X{L, eta, ZVec(k, 1)};
        auto F = feasible_signs(X);
        auto G = grid_feasible(X, 16, 6);
        for (const auto& a : G) EXPECT_TRUE(contains(F, a)) << a;
        if (eta_regular(X)) {
            EXPECT_EQ(F, G);
            ++checked;
        }
    }
    EXPECT_GT(checked, 10);
}

TEST(Property, LiftInvariance) {
    std::mt19937 rng(22);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int it = 0; it < 20; ++it) {
        std::size_t n = 2 + rng() % 3, k = 1 + rng() % (n - 1);
        auto L = random_lattice(rng, n, k);
        ZVec eta(n), xi(k);
        for (auto& x : eta) x = d(rng);
        for (auto& x : xi) x = d(rng);
        ZVec shifted = eta;
        for (std::size_t j = 0; j < k; ++j) {
            int c = d(rng);
            for (std::size_t i = 0; i < n; ++i) shifted[i] += c * L.basis[j][i];
        }
        EXPECT_EQ(equivalence_key(PolarizedArrangement{L, eta, xi}),
                  equivalence_key(PolarizedArrangement{L, shifted, xi}));
    }
}

TEST(Property, BoundedFeasibleCountsVertices) {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> d(-3, 3);
    int checked = 0;
    for (int it = 0; it < 60 && checked < 15; ++it) {
        std::size_t n = 2 + rng() % 3, k = 1 + rng() % (n - 1);
        auto L = random_lattice(rng, n, k);
        ZVec eta(n), xi(k);
        for (auto& x : eta) x = d(rng);
        for (auto& x : xi) x = d(rng);
        PolarizedArrangement X{L, eta, xi};
        if (!regularity_report(X).regular()) continue;
        EXPECT_EQ(bounded_feasible_signs(X).size(), vertex_count(X));
        EXPECT_EQ(vertex_count(X), matroid_bases(L, iota_indices(n)).size());
        ++checked;
    }
    EXPECT_GE(checked, 10);
}

TEST(Property, ChamberGraphConnected) {
    std::mt19937 rng(24);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int it = 0; it < 20; ++it) {
        std::size_t n = 2 + rng() % 3, k = 1 + rng() % (n - 1);
        auto L = random_lattice(rng, n, k);
        ZVec eta(n);
        for (auto& x : eta) x = d(rng);
        PolarizedArrangement X{L, eta, ZVec(k, 1)};
        auto F = feasible_signs(X);
        std::set<SignVector> seen{F.front()};
        std::vector<SignVector> stack{F.front()};
        while (!stack.empty()) {
            auto a = stack.back();
            stack.pop_back();
            for (std::size_t i = 0; i < n; ++i) {
                auto b = flip(a, i);
                if (!contains(F, b) || seen.count(b)) continue;
                auto P = X.chamber(a);
                P.add_eq(to_q(L.column(i)), -Q(eta[i]));
                if (!polyhedron_feasible(P)) continue;
                seen.insert(b);
                stack.push_back(b);
            }
        }
        EXPECT_EQ(seen.size(), F.size());
    }
}

TEST(Property, QuantizedCountsAndBases) {
    std::mt19937 rng(25);
    std::uniform_int_distribution<int> d(-4, 4);
    int equal_seen = 0;
    for (int it = 0; it < 40; ++it) {
        std::size_t n = 2 + rng() % 3, k = 1 + rng() % (n - 1);
        auto L = random_lattice(rng, n, k);
        QVec v0(n);
        for (auto& x : v0) x = Q(d(rng), rng() % 4 == 0 ? 2 : 1);
        ZVec xi(k);
        for (auto& x : xi) x = d(rng);
        QuantizedArrangement X{L, v0, xi};
        auto rep = regularity_report(X);
        auto cc = chamber_count_check(X);
        EXPECT_LE(cc.count, cc.bound);
        if (rep.essential) {
            EXPECT_EQ(cc.equal, *rep.lambda_regular);
        }
        auto P = quantized_bounded_feasible_signs(X);
        auto bases = matroid_bases(L, iota_indices(n)).size();
        EXPECT_LE(P.size(), bases);
        if (rep.xi_regular) {
            bool eq = P.size() == bases;
            EXPECT_EQ(eq, *rep.lambda_regular && *rep.integral);
            equal_seen += eq;
        }
        if (rep.essential) {
            auto Y = essentialize(X);
            EXPECT_EQ(quantized_feasible_signs(Y), quantized_feasible_signs(X));
            EXPECT_EQ(quantized_bounded_signs(Y), quantized_bounded_signs(X));
        }
    }
    EXPECT_GT(equal_seen, 3);
}
