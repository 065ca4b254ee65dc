#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scarlab/basis.hpp"
#include "scarlab/sparse.hpp"

namespace scarlab {

/// exp(-i H t) |psi> by short-iterate Lanczos exponentials with adaptive
/// step splitting. `tol` bounds the accumulated propagation defect over the
/// whole interval (a posteriori Krylov estimate).
VectorXcd krylov_propagate(const SparseOperator& h, VectorXcd psi, double t, double tol = 1e-10,
                           int max_krylov = 40);

struct QuenchOptions {
    double tol = 1e-9;
    int max_krylov = 40;
    bool track_entropy = false;
    int entropy_cut = 0;  // 0 = half chain
    bool track_site_occupation = false;
};

struct QuenchResult {
    VectorXd times;
    VectorXd fidelity;        // |<psi0|psi(t)>|^2
    VectorXd dw_density;      // bond-averaged domain-wall indicator
    VectorXd norm_error;      // | ||psi(t)|| - 1 | per sample
    VectorXd entropy;         // optional, empty when not tracked
    MatrixXd site_occupation; // optional, samples x L
};

/// Quench evolution with observables sampled on `times` (ascending from 0).
QuenchResult evolve(const SparseOperator& h, const VectorXcd& psi0, const VectorXd& times,
                    const ConstrainedBasis& basis, const QuenchOptions& opt = {});

/// Domain walls are adjacent equal neighbors (oo or **); blockaded bases
/// never contain **. Returns the bond average.
double domain_wall_density(word_t config, int length, Boundary bc);
double domain_wall_density(const VectorXcd& state, const ConstrainedBasis& basis);

struct KrylovReport {
    VectorXd alphas;
    VectorXd betas;
    std::optional<int> closure_dim;   // n+1 when the recursion terminates
    VectorXd leakage_per_step;        // beta_{j+1} / ||H v_j||: norm fraction
                                      // lost when truncating after step j
    VectorXd restricted_spectrum;     // eigenvalues of the tridiagonal form
    double containment_error = 0.0;   // max_t ||(1 - P_K) exp(-iHt) psi0||
};

/// Lanczos recursion from psi0 with full reorthogonalization.
/// closure_tol <= 0 selects the default 1e-12 * ||H||. When horizon > 0 the
/// dynamical containment error is estimated on `horizon_samples` points.
KrylovReport krylov_fracture(const SparseOperator& h, const VectorXd& psi0, int max_steps,
                             double closure_tol = 0.0, double horizon = 0.0,
                             int horizon_samples = 16);

// Named product states. Z2 = *o*o..., Z3 = *oo*oo...; site 0 excited.
word_t z2_word(int length);
word_t z3_word(int length);
VectorXcd basis_state(const ConstrainedBasis& basis, word_t config);

}  // namespace scarlab
