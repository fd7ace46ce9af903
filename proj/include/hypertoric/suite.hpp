#pragma once

// Named example instances and seeded random instance generators.

#include <random>
#include <string>
#include <vector>

#include "hypertoric/arrangement.hpp"

namespace hypertoric {

/// Basis e_i - e_{i+1} of {sum = 0} in Z^n.
inline Lattice sum_zero_lattice(std::size_t n) {
    ZMat rows;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        ZVec r(n, 0);
        r[i] = 1;
        r[i + 1] = -1;
        rows.push_back(r);
    }
    return Lattice::from_rows(rows, n);
}

/// The line spanned by (1, ..., 1).
inline Lattice diagonal_line(std::size_t n) { return Lattice::from_rows({ZVec(n, 1)}, n); }

/// Hyperplanes h_i = t_i - t_{i+1} style arrangement on {sum = 0} with eta summing to c.
inline PolarizedArrangement sum_zero_polarized(std::size_t n, int c) {
    ZVec eta(n, 0);
    eta[0] = c;
    return {sum_zero_lattice(n), eta, ZVec(n - 1, 1)};
}

/// Quantized analogue with basepoint summing to c.
inline QuantizedArrangement sum_zero_quantized(std::size_t n, int c) {
    QVec v0(n, 0);
    v0[0] = c;
    return {sum_zero_lattice(n), v0, ZVec(n - 1, 1)};
}

/// n points on a line all carrying the same h^+; non-regular for n >= 2.
inline QuantizedArrangement diagonal_line_quantized(std::size_t n, int xi = 1) {
    return {diagonal_line(n), QVec(n, 0), ZVec{xi}};
}

/// Three lines in the plane through a common normal relation h3 = h1 + h2.
inline PolarizedArrangement three_lines_polarized() {
    return {Lattice::from_rows({{1, 0, 1}, {0, 1, 1}}, 3), {0, 0, 1}, {2, 1}};
}

struct RandomSpec {
    std::size_t n_min = 2, n_max = 6;
    int entry = 2;
    int eta_range = 3;
    int xi_range = 3;
};

/// Random valid lattice with rank in [1, n-1].
inline Lattice random_lattice(std::mt19937& rng, std::size_t n, std::size_t k, int entry) {
    std::uniform_int_distribution<int> d(-entry, entry);
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

/// Random regular polarized arrangement.
inline PolarizedArrangement random_regular_polarized(std::mt19937& rng, const RandomSpec& spec = {}) {
    std::uniform_int_distribution<std::size_t> dn(spec.n_min, spec.n_max);
    std::size_t n = dn(rng);
    std::uniform_int_distribution<std::size_t> dk(1, n - 1);
    std::size_t k = dk(rng);
    Lattice L = random_lattice(rng, n, k, spec.entry);
    std::uniform_int_distribution<int> de(-spec.eta_range, spec.eta_range), dx(-spec.xi_range, spec.xi_range);
    PolarizedArrangement X{L, ZVec(n), ZVec(k)};
    do {
        for (auto& x : X.eta) x = de(rng);
    } while (!eta_regular(X));
    do {
        for (auto& x : X.xi) x = dx(rng);
    } while (!covector_regular(L, X.xi, iota_indices(n)));
    return X;
}

/// Integral quantized arrangement r * eta + Lambda_0 linked to X, for the smallest r that works.
inline QuantizedArrangement linked_quantized(const PolarizedArrangement& X, int r_max = 64) {
    auto F = feasible_signs(X);
    for (int r = 1; r <= r_max; ++r) {
        QuantizedArrangement Y{X.lambda0, QVec(X.n()), X.xi};
        for (std::size_t i = 0; i < X.n(); ++i) Y.basepoint[i] = Q(X.eta[i] * r);
        if (quantized_feasible_signs(Y) == F && lambda_regular(Y)) return Y;
    }
    throw Error("NotRegular", "no linked integral parameter found");
}

}  // namespace hypertoric
