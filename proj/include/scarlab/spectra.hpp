#pragma once

#include <cstddef>
#include <vector>

#include "scarlab/basis.hpp"
#include "scarlab/sparse.hpp"

namespace scarlab {

struct EigenDecomposition {
    VectorXd energies;  // ascending
    MatrixXd vectors;   // orthonormal columns; 0x0 when not retained
};

/// Full dense diagonalization. Guarded by a dimension limit because the
/// cost is cubic and the memory quadratic.
EigenDecomposition diagonalize_dense(const SparseOperator& h, Eigen::Index dense_limit = 6000);

enum class Extremal { lowest, highest };

/// k extremal eigenpairs by restarted Lanczos with full reorthogonalization
/// and deflation (repeated eigenvalues are recovered through restarts).
EigenDecomposition extremal_eigs(const SparseOperator& h, int k, Extremal which,
                                 double tol = 1e-10, int max_dim = 0);

struct RStatOptions {
    // degenerate levels closer than this fraction of the spectral width are
    // collapsed to a single level before gap analysis
    double collapse_rel_tol = 1e-10;
    std::size_t min_levels = 3;
};

struct RStatResult {
    double mean_r = 0.0;
    std::size_t gaps_used = 0;
    std::size_t collapsed = 0;  // number of levels removed as degenerate
};

/// Mean adjacent-gap ratio <min(g_n, g_{n+1}) / max(g_n, g_{n+1})>.
RStatResult r_statistic(VectorXd energies, const RStatOptions& opt = {});

struct OverlapPoint {
    double energy;
    double weight;  // |<target|E>|^2
};

std::vector<OverlapPoint> overlap_scan(const EigenDecomposition& eig, const VectorXd& target);

struct ScarTower {
    std::vector<std::size_t> members;  // indices into the scan, ascending energy
    double spacing = 0.0;              // least-squares arithmetic-progression fit
    double spacing_residual = 0.0;     // rms residual of the fit
    std::size_t count = 0;
};

/// Tower members are local maxima of log-overlap that stand at least
/// `threshold_decades` above the median overlap inside a sliding window of
/// `window` scan points (0 = auto: max(5, N/50)).
ScarTower detect_scar_tower(const std::vector<OverlapPoint>& scan, std::size_t window = 0,
                            double threshold_decades = 2.0);

/// Von Neumann entropy (nats) across the bond between sites cut-1 and cut.
/// The left/right factor spaces are the open-chain constrained bases of the
/// two halves; cross-bond double occupations never appear in a valid state,
/// so the reshape needs no boundary labels.
double entanglement_entropy(const VectorXcd& state, int cut, const ConstrainedBasis& basis);
double entanglement_entropy(const VectorXd& state, int cut, const ConstrainedBasis& basis);

/// Operator norm of (1 - P) H P where P projects onto span(subspace).
/// Columns are orthonormalized internally; rank-deficient inputs are
/// reduced (columns with negligible residual dropped).
double block_decomposition_check(const SparseOperator& h, const MatrixXd& subspace,
                                 double rank_tol = 1e-12);

}  // namespace scarlab
