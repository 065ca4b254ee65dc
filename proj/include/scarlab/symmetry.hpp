#pragma once

#include <optional>
#include <vector>

#include "scarlab/basis.hpp"
#include "scarlab/sparse.hpp"

namespace scarlab {

/// Cyclic shift by one site: site i -> site i+1 (mod L).
word_t translate(word_t bits, int length);

/// Spatial inversion: site i -> L-1-i.
word_t reflect(word_t bits, int length);

/// Distinct words in the translation orbit of `bits`.
std::vector<word_t> translation_orbit(word_t bits, int length);

/// One symmetry block of a periodic chain. Momentum sectors exist for every
/// k in [0, L); inversion parity can be resolved on top of momentum only
/// where translation and inversion commute on the block, i.e. k = 0 or
/// k = L/2.
///
/// `basis_columns` holds the orthonormal symmetry-adapted vectors expanded
/// over the full basis, one column per representative, ordered by ascending
/// representative word.
struct SymmetrySector {
    int momentum = 0;
    std::optional<int> parity;
    std::vector<word_t> representatives;
    std::vector<int> orbit_sizes;
    Eigen::SparseMatrix<cplx> basis_columns;

    std::size_t dim() const { return representatives.size(); }
};

SymmetrySector build_sector(const ConstrainedBasis& basis, int momentum,
                            std::optional<int> parity = std::nullopt);

/// All L momentum sectors (no parity resolution).
std::vector<SymmetrySector> all_momentum_sectors(const ConstrainedBasis& basis);

/// H restricted to the sector: V^dag H V.
Eigen::MatrixXcd sector_matrix(const SparseOperator& op, const SymmetrySector& sector);

/// Real restriction, valid for k = 0 and k = L/2 where all phases are +-1.
MatrixXd sector_matrix_real(const SparseOperator& op, const SymmetrySector& sector);

}  // namespace scarlab
