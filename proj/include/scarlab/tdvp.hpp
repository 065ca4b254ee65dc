#pragma once

#include <array>
#include <optional>
#include <vector>

#include "scarlab/basis.hpp"
#include "scarlab/sparse.hpp"

namespace scarlab {

/// Angle coordinates on the blockade-projected product manifold.
/// cell = 2: thetas = (theta_odd, theta_even); even sites (0, 2, ...) carry
///           thetas[1], so (0, pi) is the period-2 density wave with site 0
///           excited and (pi, 0) its one-site translate.
/// cell = 3: thetas = (theta_a, theta_b, theta_c) with site j carrying
///           thetas[j % 3]; (pi, 0, 0) is the period-3 density wave.
struct ManifoldPoint {
    std::vector<double> thetas;
};

struct FlowSample {
    ManifoldPoint point;
    std::vector<double> velocity;
    double leakage = 0.0;  // gamma^2, the minimized squared defect
    double leakage_per_site = 0.0;
    double gram_condition = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<FlowSample> samples;
};

struct PoincareData {
    int section_angle = 0;  // index of the angle pinned by the section
    double section_value = 0.0;
    std::vector<std::array<double, 2>> points;  // remaining angles, wrapped to [0, 2pi)
    std::vector<int> seed_of_point;
};

struct PeriodicOrbit {
    ManifoldPoint start;
    double period = 0.0;
    double closure_defect = 0.0;
    std::vector<cplx> multipliers;  // eigenvalues of the monodromy matrix
};

/// Variational reduction of a constrained-flip Hamiltonian to the manifold
/// of blockade-projected product states with a sublattice angle pattern.
///
/// The single-site state is the sigma^x rotation
///     |s(theta)> = cos(theta/2)|o> - i sin(theta/2)|*>,
/// so theta = 0 is the empty site and theta = pi the excited one. The
/// per-configuration phase (-i)^n is a fixed gauge; the angle convention
/// (0, pi) -> period-2 density wave is unaffected by it, while the phase
/// makes the variational velocity nonzero. Expectation values <H> vanish
/// identically on this manifold, so the flow conserves energy exactly.
class TdvpSystem {
public:
    TdvpSystem(const ConstrainedBasis& basis, const SparseOperator& h, int cell);

    int cell() const { return cell_; }
    const ConstrainedBasis& basis() const { return *basis_; }

    /// Normalized projection of the product state onto the blockaded
    /// basis, with the global phase fixed so that the largest amplitude is
    /// real positive (this pins (0, pi) to the density-wave basis state
    /// exactly). Throws DegeneratePointError when the projection vanishes.
    VectorXcd ansatz_state(const ManifoldPoint& p) const;

    /// The same map in the raw gauge (no phase fixing); smooth in theta,
    /// used for tangent calculus and finite-difference checks.
    VectorXcd state_raw(const ManifoldPoint& p) const;

    /// Bond-dimension-2 route: transfer matrices with A^(*) proportional to
    /// sigma^+, contracted over the ring or with open boundary vectors.
    /// Agrees with ansatz_state by construction of the constraint.
    VectorXcd ansatz_state_mps(const ManifoldPoint& p) const;

    /// Variational velocity and quantum leakage at a point. The Gram
    /// system is Tikhonov-regularized (eps = 1e-10 tr G / m) so that angle
    /// chart poles do not abort flow integration; a fully degenerate
    /// tangent frame still throws DegeneratePointError.
    FlowSample rhs(const ManifoldPoint& p) const;

    /// Adaptive Dormand-Prince integration, sampled every `sample_dt`.
    Trajectory integrate(const ManifoldPoint& start, double horizon, double sample_dt = 0.02,
                         double tol = 1e-10) const;

    /// Endpoint of the flow map Phi_T (no sampling).
    ManifoldPoint flow_map(const ManifoldPoint& start, double t, double tol = 1e-11) const;

    /// Crossings of the plane thetas[section_angle] = section_value taken
    /// in the direction of increasing angle. 3-angle systems only.
    PoincareData poincare_section(const std::vector<ManifoldPoint>& seeds, int section_angle,
                                  double section_value, int n_crossings, double horizon,
                                  double tol = 1e-10) const;

    /// Newton shooting refinement of a periodic orbit near `guess`.
    /// Equilibria of the flow are rejected as degenerate.
    PeriodicOrbit find_periodic_orbit(const ManifoldPoint& guess, double period_guess,
                                      double tol = 1e-8, int max_iter = 40) const;

    /// Leakage over a uniform n x n angle grid (cell = 2). Degenerate
    /// points carry NaN.
    MatrixXd leakage_grid(int n) const;

private:
    struct RawEval {
        VectorXd rho;    // unnormalized real amplitude profile
        MatrixXd drho;   // dim x m tangent profiles
    };
    RawEval eval_raw(const std::vector<double>& thetas, bool tangents) const;
    std::vector<double> site_angles(const ManifoldPoint& p) const;

    const ConstrainedBasis* basis_;
    SparseOperator h_;
    SpMat flip_asym_;  // raising minus lowering part of H (real antisymmetric)
    int cell_;
    std::vector<int> sublattice_;  // per site: which theta it carries
};

/// Angular distance on the torus, per component, euclidean-combined.
double torus_distance(const std::vector<double>& a, const std::vector<double>& b);

/// Curve-vs-area statistic for a set of section points: small for points
/// on a closed return-map loop, large for an area-filling scatter.
/// dispersion = N <d_NN> / (2 pi sigma), sigma = rms spread.
double section_dispersion(const std::vector<std::array<double, 2>>& points);

}  // namespace scarlab
