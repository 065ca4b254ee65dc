#pragma once

#include <optional>
#include <vector>

#include "scarlab/sparse.hpp"

namespace scarlab {

struct SgaCertificate {
    double omega = 0.0;
    double residual = 0.0;  // max over W of ||([H,Q] - omega Q) w||
    std::size_t w_dim = 0;

    bool passes(double tol) const { return residual <= tol; }
};

/// Certify ([H, Q] - omega Q) W = 0 on the span of `w_basis` (orthonormal
/// columns required). When omega is absent it is fitted by least squares
/// over W before the residual is taken.
SgaCertificate verify_sga(const SparseOperator& h, const SparseOperator& q,
                          const MatrixXd& w_basis, std::optional<double> omega = std::nullopt);

struct TowerState {
    VectorXd state;
    double energy;    // Rayleigh quotient <psi|H|psi>
    double residual;  // ||(H - E) psi||
};

/// Repeatedly apply Q to psi0, renormalizing at each step; stops at n_max
/// states or when ||Q psi|| <= tol. psi0 annihilated immediately yields a
/// one-state tower.
std::vector<TowerState> build_tower(const SparseOperator& h, const SparseOperator& q,
                                    VectorXd psi0, int n_max, double tol = 1e-12);

}  // namespace scarlab
