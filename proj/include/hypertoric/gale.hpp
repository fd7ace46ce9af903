#pragma once

// Gale duality of polarized arrangements.

#include "hypertoric/arrangement.hpp"

namespace hypertoric {

/// Lift of minimal max-norm in w0 + rowspan(C) over the integers; ties broken lexicographically.
inline ZVec minimal_lift(const ZVec& w0, const ZMat& C) {
    std::size_t n = w0.size(), m = C.size();
    if (m == 0) return w0;
    Z top = 0;
    for (const auto& x : w0) top = std::max<Z>(top, abs(x));
    auto box = [&](const Z& R) {
        RationalPolyhedron P(m);
        for (std::size_t i = 0; i < n; ++i) {
            QVec a(m);
            for (std::size_t j = 0; j < m; ++j) a[j] = C[j][i];
            P.add_ge(a, Q(-R - w0[i]));
            P.add_le(a, Q(R - w0[i]));
        }
        return P;
    };
    Z lo = 0, hi = top;
    while (lo < hi) {
        Z mid = (lo + hi) / 2;
        if (lattice_point_witness(box(mid))) hi = mid;
        else lo = mid + 1;
    }
    std::optional<ZVec> best;
    for (const auto& s : lattice_points_in_polytope(box(lo))) {
        ZVec w = w0;
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i) w[i] += s[j] * C[j][i];
        if (!best || w < *best) best = w;
    }
    return *best;
}

/// Complementary lattice with eta^! = -xi and xi^! = -eta under the natural identifications.
inline PolarizedArrangement gale_dual(const PolarizedArrangement& X) {
    X.validate();
    Lattice dual = orthogonal_complement_lattice(X.lambda0);
    ZVec rhs(X.k());
    for (std::size_t j = 0; j < X.k(); ++j) rhs[j] = -X.xi[j];
    auto w0 = integer_solve(X.lambda0.basis, rhs, X.n());
    if (!w0) throw Error("InvalidLattice", "lattice is not a direct summand");
    ZVec eta = minimal_lift(*w0, dual.basis);
    ZVec xi;
    for (const auto& b : dual.basis) xi.push_back(-dot(X.eta, b));
    return {dual, eta, xi};
}

struct DualityReport {
    bool F_eta_eq_B_xidual = false;
    bool F_etadual_eq_B_xi = false;
    bool P_eq = false;
    bool regular_transfer = false;
    bool all() const { return F_eta_eq_B_xidual && F_etadual_eq_B_xi && P_eq && regular_transfer; }
};

inline DualityReport verify_duality(const PolarizedArrangement& X) {
    auto D = gale_dual(X);
    auto F = feasible_signs(X), B = bounded_signs(X);
    auto Fd = feasible_signs(D), Bd = bounded_signs(D);
    DualityReport r;
    r.F_eta_eq_B_xidual = F == Bd;
    r.F_etadual_eq_B_xi = Fd == B;
    r.P_eq = set_intersection(F, B) == set_intersection(Fd, Bd);
    auto rx = regularity_report(X), rd = regularity_report(D);
    r.regular_transfer = *rx.eta_regular == rd.xi_regular && rx.xi_regular == *rd.eta_regular;
    return r;
}

}  // namespace hypertoric
