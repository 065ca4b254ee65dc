#include "scarlab/dynamics.hpp"

#include <cmath>

#include "scarlab/lanczos.hpp"
#include "scarlab/spectra.hpp"

namespace scarlab {

namespace {

// One Krylov exponential e^{-iHt}v with error estimate; recursively splits
// the step when the estimate misses the budget at the dimension cap.
VectorXcd expm_step(const SparseOperator& h, const VectorXcd& psi, double t, double tol,
                    int max_krylov, int depth) {
    if (depth > 24) throw ConvergenceError("krylov_propagate: step splitting did not converge", 0.0);
    const double nrm = psi.norm();
    if (nrm == 0.0) return psi;

    auto apply = [&](const VectorXcd& x) { return h.apply(x); };
    const int m_cap = std::min<Eigen::Index>(h.dim(), max_krylov);
    auto basis = lanczos(apply, psi, m_cap, 1e-14);
    const Eigen::Index m = basis.tri.alpha.size();

    auto es = solve_tridiagonal(basis.tri);
    // exp(-i t T) e1 in the Ritz basis
    VectorXcd phases(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double e = es.eigenvalues()[i];
        phases[i] = cplx(std::cos(e * t), -std::sin(e * t)) * es.eigenvectors()(0, i);
    }
    VectorXcd coeff = es.eigenvectors().cast<cplx>() * phases;

    // a posteriori estimate: weight that would spill into the next Krylov
    // vector, scaled by the step
    const double spill = basis.tri.closure_residual * std::abs(coeff[m - 1]) * std::abs(t);
    if (!basis.tri.closed && spill > tol) {
        VectorXcd half = expm_step(h, psi, t / 2, tol / 2, max_krylov, depth + 1);
        return expm_step(h, half, t / 2, tol / 2, max_krylov, depth + 1);
    }
    VectorXcd out = VectorXcd::Zero(psi.size());
    for (Eigen::Index j = 0; j < m; ++j) out += coeff[j] * basis.vectors[j];
    return out * nrm;
}

}  // namespace

VectorXcd krylov_propagate(const SparseOperator& h, VectorXcd psi, double t, double tol,
                           int max_krylov) {
    if (t == 0.0) return psi;
    return expm_step(h, psi, t, tol, max_krylov, 0);
}

QuenchResult evolve(const SparseOperator& h, const VectorXcd& psi0, const VectorXd& times,
                    const ConstrainedBasis& basis, const QuenchOptions& opt) {
    if (times.size() == 0 || times[0] != 0.0)
        throw InputError("evolve: the time grid must start at 0");
    for (Eigen::Index i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1]) throw InputError("evolve: time grid must be ascending");
    if (std::abs(psi0.norm() - 1.0) > 1e-10) throw InputError("evolve: psi0 not normalized");

    const int L = basis.length();
    const int cut = (opt.entropy_cut > 0) ? opt.entropy_cut : L / 2;
    const Eigen::Index n = times.size();

    QuenchResult r;
    r.times = times;
    r.fidelity.resize(n);
    r.dw_density.resize(n);
    r.norm_error.resize(n);
    if (opt.track_entropy) r.entropy.resize(n);
    if (opt.track_site_occupation) r.site_occupation.resize(n, L);

    VectorXcd psi = psi0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i > 0) {
            const double dt = times[i] - times[i - 1];
            psi = krylov_propagate(h, psi, dt, opt.tol * dt / std::max(times[n - 1], 1.0),
                                   opt.max_krylov);
        }
        const cplx ov = psi0.dot(psi);
        r.fidelity[i] = std::norm(ov);
        r.dw_density[i] = domain_wall_density(psi, basis);
        r.norm_error[i] = std::abs(psi.norm() - 1.0);
        if (opt.track_entropy) r.entropy[i] = entanglement_entropy(psi, cut, basis);
        if (opt.track_site_occupation)
            for (int s = 0; s < L; ++s) {
                double occ = 0.0;
                for (std::size_t c = 0; c < basis.size(); ++c)
                    if (basis.state(c) >> s & 1) occ += std::norm(psi[c]);
                r.site_occupation(i, s) = occ;
            }
    }
    return r;
}

double domain_wall_density(word_t config, int length, Boundary bc) {
    const int bonds = (bc == Boundary::periodic) ? length : length - 1;
    if (bonds <= 0) throw InputError("domain_wall_density: chain has no bonds");
    int walls = 0;
    for (int b = 0; b < bonds; ++b) {
        const int i = b;
        const int j = (b + 1) % length;
        if (((config >> i) & 1) == ((config >> j) & 1)) ++walls;
    }
    return double(walls) / double(bonds);
}

double domain_wall_density(const VectorXcd& state, const ConstrainedBasis& basis) {
    double v = 0.0;
    for (std::size_t c = 0; c < basis.size(); ++c)
        v += std::norm(state[c]) *
             domain_wall_density(basis.state(c), basis.length(), basis.boundary());
    return v;
}

KrylovReport krylov_fracture(const SparseOperator& h, const VectorXd& psi0, int max_steps,
                             double closure_tol, double horizon, int horizon_samples) {
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw InputError("krylov_fracture: psi0 not normalized");
    const double scale = spectral_norm_estimate(h, 40);
    if (closure_tol <= 0.0) closure_tol = 1e-12 * std::max(1.0, scale);

    auto apply = [&](const VectorXd& x) { return h.apply(x); };
    auto basis = lanczos(apply, psi0, max_steps, closure_tol);

    KrylovReport rep;
    rep.alphas = basis.tri.alpha;
    rep.betas = basis.tri.beta;
    if (basis.tri.closed) rep.closure_dim = static_cast<int>(basis.vectors.size());

    rep.leakage_per_step.resize(basis.vectors.size());
    for (std::size_t j = 0; j < basis.vectors.size(); ++j) {
        const double hv = h.apply(basis.vectors[j]).norm();
        const double out_coupling =
            (j + 1 < basis.vectors.size()) ? basis.tri.beta[j] : basis.tri.closure_residual;
        rep.leakage_per_step[j] = (hv > 0.0) ? out_coupling / hv : 0.0;
    }
    rep.restricted_spectrum = solve_tridiagonal(basis.tri).eigenvalues();

    if (horizon > 0.0 && horizon_samples > 0) {
        VectorXcd psi = psi0.cast<cplx>();
        const double dt = horizon / horizon_samples;
        double worst = 0.0;
        for (int s = 1; s <= horizon_samples; ++s) {
            psi = krylov_propagate(h, psi, dt, 1e-10);
            VectorXcd proj = VectorXcd::Zero(psi.size());
            for (const auto& v : basis.vectors) proj += v.cast<cplx>() * v.cast<cplx>().dot(psi);
            worst = std::max(worst, (psi - proj).norm());
        }
        rep.containment_error = worst;
    }
    return rep;
}

word_t z2_word(int length) {
    word_t w = 0;
    for (int i = 0; i < length; i += 2) w |= word_t(1) << i;
    return w;
}

word_t z3_word(int length) {
    word_t w = 0;
    for (int i = 0; i < length; i += 3) w |= word_t(1) << i;
    return w;
}

VectorXcd basis_state(const ConstrainedBasis& basis, word_t config) {
    VectorXcd v = VectorXcd::Zero(basis.size());
    v[basis.index_of(config)] = 1.0;
    return v;
}

}  // namespace scarlab
