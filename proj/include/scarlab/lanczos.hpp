#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "scarlab/errors.hpp"
#include "scarlab/sparse.hpp"

namespace scarlab {

struct TridiagonalForm {
    VectorXd alpha;  // diagonal, one per Krylov vector
    VectorXd beta;   // beta[j] couples vectors j and j+1
    bool closed = false;
    double closure_residual = 0.0;  // the off-diagonal that fell below tolerance
};

template <typename Vec>
struct LanczosBasis {
    std::vector<Vec> vectors;
    TridiagonalForm tri;
};

namespace detail {
inline double real_part(double x) { return x; }
inline double real_part(cplx x) { return x.real(); }
}  // namespace detail

/// Hermitian Lanczos with full reorthogonalization (two Gram-Schmidt
/// sweeps per step). `apply` maps Vec -> Vec; `v0` need not be normalized.
/// Stops after `max_steps` vectors or when the next residual norm drops to
/// `closure_tol` (absolute), whichever comes first.
template <typename Vec, typename ApplyFn>
LanczosBasis<Vec> lanczos(ApplyFn&& apply, Vec v0, int max_steps, double closure_tol,
                          const std::vector<Vec>* deflate = nullptr) {
    LanczosBasis<Vec> out;
    const double n0 = v0.norm();
    if (n0 == 0.0) throw InputError("lanczos: zero start vector");
    v0 /= n0;
    if (deflate)
        for (const auto& d : *deflate) v0 -= d * d.dot(v0);
    if (v0.norm() < 1e-12) throw InputError("lanczos: start vector inside deflation space");
    v0.normalize();

    std::vector<double> alphas, betas;
    out.vectors.push_back(v0);
    for (int j = 0; j < max_steps; ++j) {
        Vec w = apply(out.vectors[j]);
        const double a = detail::real_part(out.vectors[j].dot(w));
        alphas.push_back(a);
        // two reorthogonalization sweeps keep the basis orthonormal to
        // machine precision at these dimensions
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (const auto& v : out.vectors) w -= v * v.dot(w);
            if (deflate)
                for (const auto& d : *deflate) w -= d * d.dot(w);
        }
        const double b = w.norm();
        if (j + 1 >= max_steps || b <= closure_tol) {
            out.tri.closed = (b <= closure_tol);
            out.tri.closure_residual = b;
            break;
        }
        betas.push_back(b);
        out.vectors.push_back(w / b);
    }
    out.tri.alpha.resize(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) out.tri.alpha[i] = alphas[i];
    out.tri.beta.resize(betas.size());
    for (std::size_t i = 0; i < betas.size(); ++i) out.tri.beta[i] = betas[i];
    return out;
}

/// Eigen-decomposition of the tridiagonal form (dense; sizes are small).
inline Eigen::SelfAdjointEigenSolver<MatrixXd> solve_tridiagonal(const TridiagonalForm& tri) {
    const Eigen::Index m = tri.alpha.size();
    MatrixXd t = MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        t(i, i) = tri.alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = tri.beta[i];
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(t);
    return es;
}

}  // namespace scarlab
