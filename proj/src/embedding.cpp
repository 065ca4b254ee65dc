#include "scarlab/embedding.hpp"

#include <cmath>
#include <string>

namespace scarlab {

std::vector<VectorXd> EmbeddedModel::target_states(const ConstrainedBasis& basis) const {
    std::vector<VectorXd> ts;
    ts.reserve(kernel_configs.size());
    for (std::size_t idx : kernel_configs) {
        VectorXd v = VectorXd::Zero(basis.size());
        v[idx] = 1.0;
        ts.push_back(std::move(v));
    }
    return ts;
}

EmbeddedModel shiraishi_mori(const std::vector<DiagonalProjector>& projectors,
                             const std::vector<LocalTerm>& locals,
                             const std::vector<LocalTerm>& commuting_part,
                             const ConstrainedBasis& basis, double tol) {
    if (projectors.size() != locals.size())
        throw InputError("shiraishi_mori: need one local term per projector");
    const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());

    EmbeddedModel model;
    model.h = zero_operator(dim);

    // P_i as assembled diagonal operators, validated as genuine projectors
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        const auto& p = projectors[i];
        const Eigen::Index d = Eigen::Index(1) << p.sites.size();
        if (p.diag.size() != d)
            throw InputError("shiraishi_mori: projector " + std::to_string(i) +
                             " diagonal size does not match its support");
        for (Eigen::Index e = 0; e < d; ++e)
            if (p.diag[e] != 0.0 && p.diag[e] != 1.0)
                throw InputError("shiraishi_mori: projector " + std::to_string(i) +
                                 " is not idempotent (entries must be 0 or 1)");
        MatrixXd m = MatrixXd::Zero(d, d);
        m.diagonal() = p.diag;
        model.projectors.push_back(assemble_local({{p.sites, m}}, basis));
    }

    // sum_i P_i h_i P_i
    for (std::size_t i = 0; i < locals.size(); ++i) {
        SparseOperator hi = assemble_local({locals[i]}, basis);
        SparseOperator term = multiply(multiply(model.projectors[i], hi), model.projectors[i]);
        model.h = add(model.h, term);
    }

    model.h_prime = commuting_part.empty() ? zero_operator(dim)
                                           : assemble_local(commuting_part, basis);
    for (std::size_t i = 0; i < model.projectors.size(); ++i) {
        const double c = frobenius_norm(commutator(model.h_prime, model.projectors[i]));
        if (c > tol)
            throw InputError("shiraishi_mori: H' does not commute with projector " +
                             std::to_string(i) + " (||[H',P]|| = " + std::to_string(c) + ")");
    }
    model.h = add(model.h, model.h_prime);
    model.h.hermitian = is_hermitian(model.h);

    // common kernel T: configurations annihilated by every P_i
    for (std::size_t n = 0; n < basis.size(); ++n) {
        const word_t w = basis.state(n);
        bool in_kernel = true;
        for (const auto& p : projectors) {
            std::size_t local = 0;
            for (std::size_t t = 0; t < p.sites.size(); ++t)
                local |= ((w >> p.sites[t]) & 1) << t;
            if (p.diag[local] != 0.0) {
                in_kernel = false;
                break;
            }
        }
        if (in_kernel) model.kernel_configs.push_back(n);
    }
    model.kernel_dim = model.kernel_configs.size();
    return model;
}

double embedding_defect(const EmbeddedModel& model, const ConstrainedBasis& basis) {
    double worst = 0.0;
    for (std::size_t idx : model.kernel_configs) {
        VectorXd t = VectorXd::Zero(basis.size());
        t[idx] = 1.0;
        VectorXd ht = model.h.apply(t);
        for (const auto& p : model.projectors)
            worst = std::max(worst, p.apply(ht).norm());
    }
    return worst;
}

}  // namespace scarlab
