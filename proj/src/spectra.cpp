#include "scarlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "scarlab/lanczos.hpp"

namespace scarlab {

EigenDecomposition diagonalize_dense(const SparseOperator& h, Eigen::Index dense_limit) {
    if (h.dim() > dense_limit)
        throw CapacityError("diagonalize_dense: dimension " + std::to_string(h.dim()) +
                            " exceeds the dense limit " + std::to_string(dense_limit));
    if (!h.hermitian) throw InputError("diagonalize_dense: operator not flagged hermitian");
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(h.dense());
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", 0.0);
    EigenDecomposition out;
    out.energies = es.eigenvalues();
    out.vectors = es.eigenvectors();
    return out;
}

EigenDecomposition extremal_eigs(const SparseOperator& h, int k, Extremal which, double tol,
                                 int max_dim) {
    const Eigen::Index dim = h.dim();
    if (k < 1 || k > dim) throw InputError("extremal_eigs: k out of range");
    if (!h.hermitian) throw InputError("extremal_eigs: operator not flagged hermitian");
    if (max_dim <= 0) max_dim = std::min<Eigen::Index>(dim, std::max(400, 6 * k + 60));
    const double scale = std::max(1.0, spectral_norm_estimate(h, 40));

    std::mt19937_64 rng(0x5ca21ab5u);  // fixed seed: deterministic restarts
    std::normal_distribution<double> gauss;

    std::vector<double> values;
    std::vector<VectorXd> vectors;  // converged, also the deflation space
    auto apply = [&](const VectorXd& x) { return h.apply(x); };

    int restarts = 0;
    double worst_residual = 0.0;
    while (static_cast<int>(values.size()) < k) {
        if (restarts++ > 2 * k + 8)
            throw ConvergenceError("extremal_eigs: iteration cap reached", worst_residual);
        VectorXd v0(dim);
        for (Eigen::Index i = 0; i < dim; ++i) v0[i] = gauss(rng);

        int m = std::min<Eigen::Index>(dim - vectors.size(),
                                       std::max(2 * (k - int(values.size())) + 30, 60));
        bool progressed = false;
        while (!progressed) {
            auto basis = lanczos(apply, v0, m, 1e-13 * scale, &vectors);
            auto es = solve_tridiagonal(basis.tri);
            const Eigen::Index mm = es.eigenvalues().size();
            // walk the Ritz values from the requested end
            for (Eigen::Index r = 0; r < mm; ++r) {
                const Eigen::Index idx = (which == Extremal::lowest) ? r : mm - 1 - r;
                VectorXd x = VectorXd::Zero(dim);
                for (std::size_t j = 0; j < basis.vectors.size(); ++j)
                    x += es.eigenvectors()(j, idx) * basis.vectors[j];
                x.normalize();
                const double theta = x.dot(h.apply(x));
                const double res = (h.apply(x) - theta * x).norm();
                worst_residual = res;
                if (res <= tol * scale) {
                    values.push_back(theta);
                    vectors.push_back(x);
                    progressed = true;
                    if (static_cast<int>(values.size()) == k) break;
                } else {
                    break;  // deeper Ritz values are not converged either
                }
            }
            if (static_cast<int>(values.size()) == k) break;
            if (basis.tri.closed && !progressed) break;  // invariant subspace exhausted
            if (!progressed) {
                if (m >= max_dim)
                    throw ConvergenceError("extremal_eigs: Krylov cap reached", worst_residual);
                m = std::min(max_dim, 2 * m);
            } else if (static_cast<int>(values.size()) < k) {
                break;  // restart with deflation against the converged pairs
            }
        }
    }

    // order the k pairs ascending
    std::vector<std::size_t> perm(values.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    EigenDecomposition out;
    out.energies.resize(values.size());
    out.vectors.resize(dim, values.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        out.energies[i] = values[perm[i]];
        out.vectors.col(i) = vectors[perm[i]];
    }
    return out;
}

RStatResult r_statistic(VectorXd energies, const RStatOptions& opt) {
    std::sort(energies.begin(), energies.end());
    const Eigen::Index n = energies.size();
    if (n < static_cast<Eigen::Index>(opt.min_levels))
        throw InputError("r_statistic: too few levels");
    const double width = energies[n - 1] - energies[0];
    if (width <= 0.0) throw InputError("r_statistic: spectrum is fully degenerate");
    const double ctol = opt.collapse_rel_tol * width;

    std::vector<double> levels;
    levels.push_back(energies[0]);
    std::size_t collapsed = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
        if (energies[i] - levels.back() <= ctol)
            ++collapsed;
        else
            levels.push_back(energies[i]);
    }
    if (levels.size() < 3) throw InputError("r_statistic: too few levels after collapse");

    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i + 2 < levels.size(); ++i) {
        const double g0 = levels[i + 1] - levels[i];
        const double g1 = levels[i + 2] - levels[i + 1];
        const double hi = std::max(g0, g1);
        if (hi <= 0.0) continue;
        sum += std::min(g0, g1) / hi;
        ++used;
    }
    if (used == 0) throw InputError("r_statistic: no usable gaps");
    return {sum / double(used), used, collapsed};
}

std::vector<OverlapPoint> overlap_scan(const EigenDecomposition& eig, const VectorXd& target) {
    if (eig.vectors.size() == 0) throw InputError("overlap_scan: eigenvectors not retained");
    if (target.size() != eig.vectors.rows())
        throw InputError("overlap_scan: target dimension does not match the eigenbasis");
    const double nrm = target.norm();
    if (std::abs(nrm - 1.0) > 1e-8) throw InputError("overlap_scan: target not normalized");
    VectorXd amps = eig.vectors.transpose() * target;
    std::vector<OverlapPoint> scan(eig.energies.size());
    for (Eigen::Index i = 0; i < eig.energies.size(); ++i)
        scan[i] = {eig.energies[i], amps[i] * amps[i]};
    return scan;
}

ScarTower detect_scar_tower(const std::vector<OverlapPoint>& scan, std::size_t window,
                            double threshold_decades) {
    if (scan.empty()) throw InputError("detect_scar_tower: empty scan");
    const std::size_t n = scan.size();
    if (window == 0) window = std::max<std::size_t>(5, n / 50);

    auto log_w = [&](std::size_t i) {
        return std::log10(std::max(scan[i].weight, 1e-300));
    };

    ScarTower tower;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = (i >= window / 2) ? i - window / 2 : 0;
        const std::size_t hi = std::min(n, lo + window + 1);
        std::vector<double> vals;
        vals.reserve(hi - lo);
        bool is_max = true;
        for (std::size_t j = lo; j < hi; ++j) {
            vals.push_back(log_w(j));
            if (j != i && log_w(j) > log_w(i)) is_max = false;
        }
        if (!is_max) continue;
        std::nth_element(vals.begin(), vals.begin() + vals.size() / 2, vals.end());
        const double median = vals[vals.size() / 2];
        if (log_w(i) >= median + threshold_decades) tower.members.push_back(i);
    }
    tower.count = tower.members.size();

    if (tower.count >= 2) {
        // least-squares fit of member energies to E_m = a + spacing * m
        const double m_count = double(tower.count);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t m = 0; m < tower.count; ++m) {
            const double x = double(m), y = scan[tower.members[m]].energy;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double denom = m_count * sxx - sx * sx;
        tower.spacing = (m_count * sxy - sx * sy) / denom;
        const double a = (sy - tower.spacing * sx) / m_count;
        double ss = 0.0;
        for (std::size_t m = 0; m < tower.count; ++m) {
            const double r = scan[tower.members[m]].energy - (a + tower.spacing * double(m));
            ss += r * r;
        }
        tower.spacing_residual = std::sqrt(ss / m_count);
    }
    return tower;
}

double entanglement_entropy(const VectorXcd& state, int cut, const ConstrainedBasis& basis) {
    const int L = basis.length();
    if (cut < 1 || cut >= L) throw InputError("entanglement_entropy: cut must split the chain");
    if (state.size() != static_cast<Eigen::Index>(basis.size()))
        throw InputError("entanglement_entropy: state dimension mismatch");

    const auto left = basis.blockaded()
                          ? ConstrainedBasis::rydberg(cut, Boundary::open)
                          : ConstrainedBasis::spin_chain(cut);
    const auto right = basis.blockaded()
                           ? ConstrainedBasis::rydberg(L - cut, Boundary::open)
                           : ConstrainedBasis::spin_chain(L - cut);

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(left.size(), right.size());
    const word_t left_mask = (word_t(1) << cut) - 1;
    for (std::size_t n = 0; n < basis.size(); ++n) {
        const word_t w = basis.state(n);
        m(left.index_of(w & left_mask), right.index_of(w >> cut)) = state[n];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    double s = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double p = svd.singularValues()[i] * svd.singularValues()[i];
        if (p > 1e-15) s -= p * std::log(p);
    }
    return s;
}

double entanglement_entropy(const VectorXd& state, int cut, const ConstrainedBasis& basis) {
    return entanglement_entropy(VectorXcd(state.cast<cplx>()), cut, basis);
}

double block_decomposition_check(const SparseOperator& h, const MatrixXd& subspace,
                                 double rank_tol) {
    if (subspace.cols() == 0) throw InputError("block_decomposition_check: empty subspace");
    if (subspace.rows() != h.dim())
        throw InputError("block_decomposition_check: dimension mismatch");

    // orthonormalize, dropping linearly dependent columns
    MatrixXd v(subspace.rows(), subspace.cols());
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < subspace.cols(); ++c) {
        VectorXd w = subspace.col(c);
        const double scale = std::max(1.0, w.norm());
        for (int sweep = 0; sweep < 2; ++sweep)
            for (Eigen::Index j = 0; j < r; ++j) w -= v.col(j) * v.col(j).dot(w);
        if (w.norm() <= rank_tol * scale) continue;
        v.col(r++) = w.normalized();
    }
    if (r == 0) throw InputError("block_decomposition_check: subspace has rank zero");
    v.conservativeResize(Eigen::NoChange, r);

    MatrixXd hv = h.mat * v;
    MatrixXd coupling = hv - v * (v.transpose() * hv);
    return coupling.jacobiSvd().singularValues()[0];
}

}  // namespace scarlab
