#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "scarlab/errors.hpp"

namespace scarlab {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

/// Sparse real operator over an ordered basis. All Hamiltonians, ladder
/// operators and observables in this project are real in the occupation
/// basis; complex arithmetic enters only through state vectors.
struct SparseOperator {
    SpMat mat;
    bool hermitian = true;

    Eigen::Index dim() const { return mat.rows(); }
    std::size_t nonzeros() const { return static_cast<std::size_t>(mat.nonZeros()); }

    VectorXd apply(const VectorXd& x) const { return mat * x; }
    VectorXcd apply(const VectorXcd& x) const;

    MatrixXd dense() const { return MatrixXd(mat); }
};

/// Assemble from triplets; duplicate (row, col) pairs are summed and exact
/// zeros dropped. With `hermitian` set the symmetry closure is enforced by
/// validation, not by symmetrization.
SparseOperator make_operator(Eigen::Index dim, const std::vector<Triplet>& entries,
                             bool hermitian);

SparseOperator diagonal_operator(const VectorXd& diag);
SparseOperator identity_operator(Eigen::Index dim);
SparseOperator zero_operator(Eigen::Index dim);

SparseOperator adjoint(const SparseOperator& a);
SparseOperator add(const SparseOperator& a, const SparseOperator& b);
SparseOperator subtract(const SparseOperator& a, const SparseOperator& b);
SparseOperator multiply(const SparseOperator& a, const SparseOperator& b);
SparseOperator scale(double c, const SparseOperator& a);
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

bool is_hermitian(const SparseOperator& a, double tol = 1e-14);
double max_abs_entry(const SparseOperator& a);
double frobenius_norm(const SparseOperator& a);

/// Largest singular value, estimated by power iteration on A^T A with a
/// fixed deterministic start. Used for tolerance scales, not certificates.
double spectral_norm_estimate(const SparseOperator& a, int iters = 100);

/// Entrywise equality within tol (pattern-insensitive).
bool approx_equal(const SparseOperator& a, const SparseOperator& b, double tol = 1e-12);

}  // namespace scarlab
