#include "scarlab/sga.hpp"

#include <cmath>

namespace scarlab {

SgaCertificate verify_sga(const SparseOperator& h, const SparseOperator& q,
                          const MatrixXd& w_basis, std::optional<double> omega) {
    if (w_basis.cols() == 0) throw InputError("verify_sga: empty subspace");
    if (w_basis.rows() != h.dim() || q.dim() != h.dim())
        throw InputError("verify_sga: dimension mismatch");
    MatrixXd gram = w_basis.transpose() * w_basis;
    if ((gram - MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > 1e-10)
        throw InputError("verify_sga: W basis is not orthonormal");

    const SparseOperator comm = commutator(h, q);
    MatrixXd cw = comm.mat * w_basis;
    MatrixXd qw = q.mat * w_basis;

    SgaCertificate cert;
    cert.w_dim = static_cast<std::size_t>(w_basis.cols());
    if (omega) {
        cert.omega = *omega;
    } else {
        // least-squares omega: minimizes sum_w ||[H,Q]w - omega Qw||^2
        const double qq = qw.squaredNorm();
        cert.omega = (qq > 0.0) ? (qw.array() * cw.array()).sum() / qq : 0.0;
    }
    MatrixXd res = cw - cert.omega * qw;
    for (Eigen::Index c = 0; c < res.cols(); ++c)
        cert.residual = std::max(cert.residual, res.col(c).norm());
    return cert;
}

std::vector<TowerState> build_tower(const SparseOperator& h, const SparseOperator& q,
                                    VectorXd psi0, int n_max, double tol) {
    if (std::abs(psi0.norm() - 1.0) > 1e-10) throw InputError("build_tower: psi0 not normalized");
    if (n_max < 1) throw InputError("build_tower: n_max must be >= 1");

    std::vector<TowerState> tower;
    VectorXd psi = psi0;
    for (int n = 0; n < n_max; ++n) {
        VectorXd hpsi = h.apply(psi);
        const double e = psi.dot(hpsi);
        tower.push_back({psi, e, (hpsi - e * psi).norm()});
        VectorXd next = q.apply(psi);
        if (next.norm() <= tol) break;
        psi = next / next.norm();
    }
    return tower;
}

}  // namespace scarlab
