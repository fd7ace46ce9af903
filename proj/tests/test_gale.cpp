/**
 * @file test_gale.cpp
 * @brief Gale duals and the exchange of feasible and bounded chambers.
 */
#include <gtest/gtest.h>

#include <random>

#include "hypertoric/gale.hpp"
#include "hypertoric/suite.hpp"

using namespace hypertoric;

TEST(GaleDual, LineInPlane) {
    PolarizedArrangement X{Lattice::from_rows({{1, -1}}, 2), {1, 0}, {1}};
    auto D = gale_dual(X);
    EXPECT_EQ(D.lambda0.basis, ZMat({{1, 1}}));
    EXPECT_EQ(D.xi, ZVec({-1}));
    EXPECT_EQ(D.eta[0] - D.eta[1], -1);
    EXPECT_EQ(D.eta, ZVec({-1, 0}));
}

TEST(GaleDual, DoubleDualIsEquivalent) {
    for (auto X : {sum_zero_polarized(3, 1), sum_zero_polarized(4, 2), three_lines_polarized()}) {
        auto DD = gale_dual(gale_dual(X));
        EXPECT_EQ(equivalence_key(DD), equivalence_key(X));
    }
}

TEST(GaleDual, SumZeroDualIsDiagonalLine) {
    auto D = gale_dual(sum_zero_polarized(3, 1));
    EXPECT_EQ(D.lambda0.basis, ZMat({{1, 1, 1}}));
}

TEST(VerifyDuality, SumZeroThree) {
    auto X = sum_zero_polarized(3, 1);
    auto r = verify_duality(X);
    EXPECT_TRUE(r.all());
    auto D = gale_dual(X);
    EXPECT_EQ(bounded_feasible_signs(X).size(), 3u);
    EXPECT_EQ(bounded_feasible_signs(D).size(), 3u);
}

TEST(VerifyDuality, LineInPlane) {
    PolarizedArrangement X{Lattice::from_rows({{1, -1}}, 2), {1, 0}, {1}};
    EXPECT_TRUE(verify_duality(X).all());
    auto D = gale_dual(X);
    EXPECT_EQ(bounded_feasible_signs(X), (SignSet{"++", "-+"}));
    EXPECT_EQ(bounded_feasible_signs(D), (SignSet{"++", "-+"}));
    EXPECT_EQ(feasible_signs(D), bounded_signs(X));
}

TEST(Property, RandomSuiteDuality) {
    std::mt19937 rng(101);
    RandomSpec spec;
    spec.n_max = 5;
    for (int it = 0; it < 40; ++it) {
        auto X = random_regular_polarized(rng, spec);
        auto r = verify_duality(X);
        EXPECT_TRUE(r.F_eta_eq_B_xidual);
        EXPECT_TRUE(r.F_etadual_eq_B_xi);
        EXPECT_TRUE(r.P_eq);
        EXPECT_TRUE(r.regular_transfer);
    }
}

TEST(Property, DualLiftInvariance) {
    std::mt19937 rng(102);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int it = 0; it < 20; ++it) {
        auto X = random_regular_polarized(rng);
        auto D = gale_dual(X);
        auto E = D;
        for (const auto& b : D.lambda0.basis) {
            int c = d(rng);
            for (std::size_t i = 0; i < D.n(); ++i) E.eta[i] += c * b[i];
        }
        EXPECT_EQ(equivalence_key(D), equivalence_key(E));
    }
}

TEST(Property, MinimalLiftIsMinimal) {
    std::mt19937 rng(103);
    for (int it = 0; it < 30; ++it) {
        auto X = random_regular_polarized(rng);
        auto D = gale_dual(X);
        Z norm = 0;
        for (const auto& x : D.eta) norm = std::max<Z>(norm, abs(x));
        // Every nearby lift has max-norm at least as large.
        std::size_t m = D.k();
        std::vector<int> s(m, -2);
        while (true) {
            ZVec w = D.eta;
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t i = 0; i < D.n(); ++i) w[i] += s[j] * D.lambda0.basis[j][i];
            Z wn = 0;
            for (const auto& x : w) wn = std::max<Z>(wn, abs(x));
            EXPECT_GE(wn, norm);
            if (wn == norm) {
                EXPECT_GE(w, D.eta);
            }
            std::size_t j = 0;
            while (j < m && s[j] == 2) s[j++] = -2;
            if (j == m) break;
            ++s[j];
        }
    }
}

TEST(Linked, SuiteLinkedParametersExist) {
    std::mt19937 rng(104);
    RandomSpec spec;
    spec.n_max = 4;
    for (int it = 0; it < 10; ++it) {
        auto X = random_regular_polarized(rng, spec);
        auto Y = linked_quantized(X);
        auto r = is_linked(X, Y);
        EXPECT_TRUE(r.linked);
        EXPECT_TRUE(r.translation_k.has_value());
        if (regularity_report(X).unimodular) {
            EXPECT_EQ(r.translation_k.value_or(0), 1);
        }
    }
}
