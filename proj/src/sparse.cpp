#include "scarlab/sparse.hpp"

#include <cmath>

namespace scarlab {

VectorXcd SparseOperator::apply(const VectorXcd& x) const {
    VectorXd re = mat * x.real();
    VectorXd im = mat * x.imag();
    VectorXcd y(x.size());
    y.real() = re;
    y.imag() = im;
    return y;
}

SparseOperator make_operator(Eigen::Index dim, const std::vector<Triplet>& entries,
                             bool hermitian) {
    SparseOperator op;
    op.hermitian = hermitian;
    op.mat.resize(dim, dim);
    for (const auto& t : entries)
        if (t.row() < 0 || t.row() >= dim || t.col() < 0 || t.col() >= dim)
            throw InputError("make_operator: entry index out of range");
    op.mat.setFromTriplets(entries.begin(), entries.end());
    op.mat.prune(0.0, 0.0);
    op.mat.makeCompressed();
    return op;
}

SparseOperator diagonal_operator(const VectorXd& diag) {
    std::vector<Triplet> ts;
    ts.reserve(diag.size());
    for (Eigen::Index i = 0; i < diag.size(); ++i)
        if (diag[i] != 0.0) ts.emplace_back(i, i, diag[i]);
    return make_operator(diag.size(), ts, true);
}

SparseOperator identity_operator(Eigen::Index dim) {
    return diagonal_operator(VectorXd::Ones(dim));
}

SparseOperator zero_operator(Eigen::Index dim) {
    return make_operator(dim, {}, true);
}

SparseOperator adjoint(const SparseOperator& a) {
    SparseOperator r;
    r.mat = SpMat(a.mat.transpose());
    r.hermitian = a.hermitian;
    r.mat.makeCompressed();
    return r;
}

SparseOperator add(const SparseOperator& a, const SparseOperator& b) {
    SparseOperator r;
    r.mat = a.mat + b.mat;
    r.hermitian = a.hermitian && b.hermitian;
    r.mat.prune(0.0, 0.0);
    return r;
}

SparseOperator subtract(const SparseOperator& a, const SparseOperator& b) {
    SparseOperator r;
    r.mat = a.mat - b.mat;
    r.hermitian = a.hermitian && b.hermitian;
    r.mat.prune(0.0, 0.0);
    return r;
}

SparseOperator multiply(const SparseOperator& a, const SparseOperator& b) {
    SparseOperator r;
    r.mat = a.mat * b.mat;
    r.hermitian = false;
    r.mat.prune(0.0, 0.0);
    return r;
}

SparseOperator scale(double c, const SparseOperator& a) {
    SparseOperator r;
    r.mat = c * a.mat;
    r.hermitian = a.hermitian;
    return r;
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
    SparseOperator r;
    r.mat = a.mat * b.mat - b.mat * a.mat;
    r.hermitian = false;
    r.mat.prune(0.0, 0.0);
    return r;
}

bool is_hermitian(const SparseOperator& a, double tol) {
    SpMat diff = SpMat(a.mat.transpose()) - a.mat;
    double scale = std::max(1.0, max_abs_entry(a));
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SpMat::InnerIterator it(diff, k); it; ++it)
            if (std::abs(it.value()) > tol * scale) return false;
    return true;
}

double max_abs_entry(const SparseOperator& a) {
    double m = 0.0;
    for (int k = 0; k < a.mat.outerSize(); ++k)
        for (SpMat::InnerIterator it(a.mat, k); it; ++it)
            m = std::max(m, std::abs(it.value()));
    return m;
}

double frobenius_norm(const SparseOperator& a) { return a.mat.norm(); }

double spectral_norm_estimate(const SparseOperator& a, int iters) {
    const Eigen::Index n = a.dim();
    if (n == 0 || a.mat.nonZeros() == 0) return 0.0;
    VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = std::cos(0.7 * double(i) + 0.3);
    v.normalize();
    double s = 0.0;
    SpMat at = SpMat(a.mat.transpose());
    for (int it = 0; it < iters; ++it) {
        VectorXd w = at * (a.mat * v);
        double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
        s = std::sqrt(nw);
    }
    return s;
}

bool approx_equal(const SparseOperator& a, const SparseOperator& b, double tol) {
    if (a.dim() != b.dim()) return false;
    SpMat diff = a.mat - b.mat;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SpMat::InnerIterator it(diff, k); it; ++it)
            if (std::abs(it.value()) > tol) return false;
    return true;
}

}  // namespace scarlab
