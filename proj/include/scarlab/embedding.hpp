#pragma once

#include <vector>

#include "scarlab/basis.hpp"
#include "scarlab/operators.hpp"
#include "scarlab/sparse.hpp"

namespace scarlab {

/// A local projector that is diagonal in the occupation basis: entry d of
/// `diag` is the eigenvalue (0 or 1) on the local configuration d, with bit
/// t of d corresponding to sites[t].
struct DiagonalProjector {
    std::vector<int> sites;
    VectorXd diag;
};

struct EmbeddedModel {
    SparseOperator h;                        // sum_i P_i h_i P_i + H'
    SparseOperator h_prime;
    std::vector<SparseOperator> projectors;  // assembled P_i
    std::vector<std::size_t> kernel_configs; // basis ordinals spanning T
    std::size_t kernel_dim = 0;

    /// Unit vectors spanning the common kernel T.
    std::vector<VectorXd> target_states(const ConstrainedBasis& basis) const;
};

/// Plant the common kernel of the P_i as exact eigenstates:
/// H = sum_i P_i h_i P_i + H' with [H', P_i] = 0 certified up to `tol`
/// (construction rejected otherwise, naming the offending projector).
/// Projectors must be genuine 0/1 diagonals; h_i are arbitrary local terms
/// paired index-wise with the projectors.
EmbeddedModel shiraishi_mori(const std::vector<DiagonalProjector>& projectors,
                             const std::vector<LocalTerm>& locals,
                             const std::vector<LocalTerm>& commuting_part,
                             const ConstrainedBasis& basis, double tol = 1e-12);

/// max over targets t and projectors i of ||P_i H t||. Zero (to tolerance)
/// certifies that the kernel states are exact eigenstates of the embedded
/// block.
double embedding_defect(const EmbeddedModel& model, const ConstrainedBasis& basis);

}  // namespace scarlab
