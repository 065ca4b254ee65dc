#pragma once

#include <vector>

#include "scarlab/basis.hpp"
#include "scarlab/sparse.hpp"

namespace scarlab {

/// A dense operator acting on an explicit list of sites. Bit t of the local
/// index corresponds to sites[t], with the same 0 = unoccupied, 1 = excited
/// convention as the basis words.
struct LocalTerm {
    std::vector<int> sites;
    MatrixXd matrix;
};

// 2x2 blocks in the (unoccupied, excited) ordering.
Eigen::Matrix2d pauli_x();
Eigen::Matrix2d pauli_z();
Eigen::Matrix2d projector_empty();  // |o><o|
Eigen::Matrix2d number_op();        // |*><*|

/// Tensor product of 2x2 factors, factor t acting on local bit t.
MatrixXd local_product(const std::vector<Eigen::Matrix2d>& factors);

/// Embed a sum of local terms into the chain and project onto the basis:
/// matrix elements between invalid configurations are dropped.
SparseOperator assemble_local(const std::vector<LocalTerm>& terms,
                              const ConstrainedBasis& basis);

/// Kinetically constrained spin flips: site i flips iff all of its
/// neighbors are unoccupied. End sites of an open chain are conditioned
/// only on their single neighbor.
SparseOperator build_pxp(const ConstrainedBasis& basis);

/// The same Hamiltonian as an explicit local-term list (the slow,
/// independently constructed route; used for cross-checks and as the
/// generic building block for perturbed models).
std::vector<LocalTerm> pxp_local_terms(int length, Boundary bc);

struct LadderOperators {
    SparseOperator plus;   // creates on the even sublattice, removes on the odd
    SparseOperator minus;  // adjoint of plus
    SparseOperator z;      // (1/2) [plus, minus]
};

/// Sublattice ladder operators: plus + minus equals build_pxp entrywise.
LadderOperators build_raising(const ConstrainedBasis& basis);

SparseOperator site_occupation(const ConstrainedBasis& basis, int site);
SparseOperator total_occupation(const ConstrainedBasis& basis);

/// C = prod_i sigma^z_i. Anticommutes with the constrained-flip Hamiltonian,
/// which forces the spectrum to be symmetric about zero.
SparseOperator sublattice_sign(const ConstrainedBasis& basis);

}  // namespace scarlab
