#include "scarlab/tdvp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/numeric/odeint.hpp>

namespace scarlab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
    double w = std::fmod(x, two_pi);
    if (w < 0) w += two_pi;
    return w;
}

// wrapped difference in (-pi, pi]
double wrap_diff(double x) {
    double w = std::fmod(x, two_pi);
    if (w > std::numbers::pi) w -= two_pi;
    if (w <= -std::numbers::pi) w += two_pi;
    return w;
}

}  // namespace

TdvpSystem::TdvpSystem(const ConstrainedBasis& basis, const SparseOperator& h, int cell)
    : basis_(&basis), h_(h), cell_(cell) {
    if (cell != 2 && cell != 3) throw InputError("tdvp: unit cell must be 2 or 3 sites");
    if (basis.length() % cell != 0)
        throw InputError("tdvp: chain length must be divisible by the unit cell");
    if (h.dim() != static_cast<Eigen::Index>(basis.size()))
        throw InputError("tdvp: operator dimension does not match the basis");

    sublattice_.resize(basis.length());
    for (int j = 0; j < basis.length(); ++j)
        sublattice_[j] = (cell == 2) ? ((j % 2 == 0) ? 1 : 0) : j % 3;

    // split H into raising minus lowering part; requires single-flip terms
    std::vector<Triplet> ts;
    for (int k = 0; k < h.mat.outerSize(); ++k)
        for (SpMat::InnerIterator it(h.mat, k); it; ++it) {
            const int nr = __builtin_popcountll(basis.state(it.row()));
            const int nc = __builtin_popcountll(basis.state(it.col()));
            if (nr == nc + 1)
                ts.emplace_back(it.row(), it.col(), it.value());
            else if (nr == nc - 1)
                ts.emplace_back(it.row(), it.col(), -it.value());
            else
                throw InputError("tdvp: Hamiltonian must consist of single-flip terms");
        }
    flip_asym_.resize(h.dim(), h.dim());
    flip_asym_.setFromTriplets(ts.begin(), ts.end());
    flip_asym_.makeCompressed();
}

std::vector<double> TdvpSystem::site_angles(const ManifoldPoint& p) const {
    if (static_cast<int>(p.thetas.size()) != cell_)
        throw InputError("tdvp: point has the wrong number of angles");
    std::vector<double> a(basis_->length());
    for (int j = 0; j < basis_->length(); ++j) a[j] = p.thetas[sublattice_[j]];
    return a;
}

TdvpSystem::RawEval TdvpSystem::eval_raw(const std::vector<double>& thetas,
                                         bool tangents) const {
    if (static_cast<int>(thetas.size()) != cell_)
        throw InputError("tdvp: point has the wrong number of angles");
    const int L = basis_->length();
    const std::size_t dim = basis_->size();

    // per-site factors for empty/occupied and their theta-derivatives
    std::vector<std::array<double, 2>> f(L), d(L);
    for (int j = 0; j < L; ++j) {
        const double t = thetas[sublattice_[j]];
        f[j] = {std::cos(t / 2), std::sin(t / 2)};
        d[j] = {-0.5 * std::sin(t / 2), 0.5 * std::cos(t / 2)};
    }

    RawEval ev;
    ev.rho.resize(dim);
    if (tangents) ev.drho = MatrixXd::Zero(dim, cell_);

    std::vector<double> prefix(L + 1), suffix(L + 1);
    for (std::size_t c = 0; c < dim; ++c) {
        const word_t w = basis_->state(c);
        prefix[0] = 1.0;
        for (int j = 0; j < L; ++j) prefix[j + 1] = prefix[j] * f[j][(w >> j) & 1];
        ev.rho[c] = prefix[L];
        if (!tangents) continue;
        suffix[L] = 1.0;
        for (int j = L - 1; j >= 0; --j) suffix[j] = suffix[j + 1] * f[j][(w >> j) & 1];
        for (int j = 0; j < L; ++j)
            ev.drho(c, sublattice_[j]) += prefix[j] * d[j][(w >> j) & 1] * suffix[j + 1];
    }
    return ev;
}

VectorXcd TdvpSystem::state_raw(const ManifoldPoint& p) const {
    auto ev = eval_raw(p.thetas, false);
    const double n = ev.rho.norm();
    if (n < 1e-10)
        throw DegeneratePointError("tdvp: blockade projection vanishes at this point");
    static const cplx phase_cycle[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
    VectorXcd psi(ev.rho.size());
    for (Eigen::Index c = 0; c < ev.rho.size(); ++c)
        psi[c] = phase_cycle[__builtin_popcountll(basis_->state(c)) % 4] * (ev.rho[c] / n);
    return psi;
}

VectorXcd TdvpSystem::ansatz_state(const ManifoldPoint& p) const {
    VectorXcd psi = state_raw(p);
    Eigen::Index imax = 0;
    psi.cwiseAbs().maxCoeff(&imax);
    const cplx ph = std::conj(psi[imax]) / std::abs(psi[imax]);
    return ph * psi;
}

VectorXcd TdvpSystem::ansatz_state_mps(const ManifoldPoint& p) const {
    const int L = basis_->length();
    const auto thetas = site_angles(p);
    using M2 = Eigen::Matrix2cd;
    std::vector<M2> m_empty(L), m_occ(L);
    for (int j = 0; j < L; ++j) {
        M2 e = M2::Zero(), o = M2::Zero();
        // bond basis: 0 = previous site empty, 1 = previous site excited.
        // The excited tensor is sigma^+ weighted by the site amplitude, so
        // two adjacent excitations contract to zero.
        e(0, 0) = e(0, 1) = std::cos(thetas[j] / 2);
        o(1, 0) = cplx(0, -1) * std::sin(thetas[j] / 2);
        m_empty[j] = e;
        m_occ[j] = o;
    }

    VectorXcd amps(basis_->size());
    for (std::size_t c = 0; c < basis_->size(); ++c) {
        const word_t w = basis_->state(c);
        M2 prod = M2::Identity();
        for (int j = 0; j < L; ++j) prod = ((w >> j & 1) ? m_occ[j] : m_empty[j]) * prod;
        if (basis_->boundary() == Boundary::periodic)
            amps[c] = prod.trace();
        else
            amps[c] = prod(0, 0) + prod(1, 0);  // enter as "previous empty", sum exits
    }
    const double n = amps.norm();
    if (n < 1e-10)
        throw DegeneratePointError("tdvp: blockade projection vanishes at this point");
    amps /= n;
    Eigen::Index imax = 0;
    amps.cwiseAbs().maxCoeff(&imax);
    const cplx ph = std::conj(amps[imax]) / std::abs(amps[imax]);
    return ph * amps;
}

FlowSample TdvpSystem::rhs(const ManifoldPoint& p) const {
    const int m = cell_;
    auto ev = eval_raw(p.thetas, true);
    const double n = ev.rho.norm();
    if (n < 1e-10)
        throw DegeneratePointError("tdvp: blockade projection vanishes at this point");

    VectorXd rho_hat = ev.rho / n;
    MatrixXd tangents = (ev.drho - rho_hat * (rho_hat.transpose() * ev.drho)) / n;

    MatrixXd gram = tangents.transpose() * tangents;
    const double tr = gram.trace();
    if (tr < 1e-18) throw DegeneratePointError("tdvp: tangent frame vanished");

    VectorXd hflow = flip_asym_ * rho_hat;  // i<->real bookkeeping: see header
    VectorXd b = tangents.transpose() * hflow;

    const double eps = 1e-10 * tr / m;
    MatrixXd reg = gram + eps * MatrixXd::Identity(m, m);
    VectorXd vel = reg.ldlt().solve(b);

    Eigen::SelfAdjointEigenSolver<MatrixXd> ges(gram);
    const double lmin = ges.eigenvalues()[0];
    const double lmax = ges.eigenvalues()[m - 1];

    FlowSample s;
    s.point = p;
    s.velocity.assign(vel.data(), vel.data() + m);
    const double defect2 = vel.dot(gram * vel) - 2.0 * b.dot(vel) + hflow.squaredNorm();
    s.leakage = std::max(0.0, defect2);
    s.leakage_per_site = s.leakage / basis_->length();
    s.gram_condition = lmax / std::max(lmin, 1e-300);
    return s;
}

namespace {
using OdeState = std::vector<double>;
}

Trajectory TdvpSystem::integrate(const ManifoldPoint& start, double horizon, double sample_dt,
                                 double tol) const {
    namespace ode = boost::numeric::odeint;
    if (horizon <= 0) throw InputError("tdvp integrate: horizon must be positive");

    auto system = [this](const OdeState& x, OdeState& dxdt, double) {
        ManifoldPoint p{x};
        dxdt = rhs(p).velocity;
    };

    Trajectory traj;
    auto record = [&](const OdeState& x, double t) {
        FlowSample s = rhs(ManifoldPoint{x});
        traj.times.push_back(t);
        traj.samples.push_back(std::move(s));
    };

    auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<OdeState>());
    OdeState x = start.thetas;
    try {
        stepper.initialize(x, 0.0, std::min(1e-3, horizon));
        record(x, 0.0);
        double next_sample = sample_dt;
        while (stepper.current_time() < horizon) {
            stepper.do_step(system);
            while (next_sample <= stepper.current_time() && next_sample <= horizon) {
                OdeState xi(cell_);
                stepper.calc_state(next_sample, xi);
                record(xi, next_sample);
                next_sample += sample_dt;
            }
        }
    } catch (const DegeneratePointError& e) {
        throw DegeneratePointError(std::string(e.what()) + " (flow integration halted at t = " +
                                   std::to_string(stepper.current_time()) + ")");
    }
    return traj;
}

ManifoldPoint TdvpSystem::flow_map(const ManifoldPoint& start, double t, double tol) const {
    namespace ode = boost::numeric::odeint;
    auto system = [this](const OdeState& x, OdeState& dxdt, double) {
        dxdt = rhs(ManifoldPoint{x}).velocity;
    };
    auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<OdeState>());
    stepper.initialize(start.thetas, 0.0, std::min(1e-3, t));
    while (stepper.current_time() < t) stepper.do_step(system);
    OdeState xf(cell_);
    stepper.calc_state(t, xf);
    return ManifoldPoint{xf};
}

PoincareData TdvpSystem::poincare_section(const std::vector<ManifoldPoint>& seeds,
                                          int section_angle, double section_value,
                                          int n_crossings, double horizon, double tol) const {
    namespace ode = boost::numeric::odeint;
    if (cell_ != 3) throw InputError("poincare_section: needs the 3-angle system");
    if (section_angle < 0 || section_angle >= 3)
        throw InputError("poincare_section: section angle out of range");

    PoincareData data;
    data.section_angle = section_angle;
    data.section_value = section_value;

    auto section_sin = [&](const OdeState& x) { return std::sin(x[section_angle] - section_value); };
    auto section_cos = [&](const OdeState& x) { return std::cos(x[section_angle] - section_value); };

    auto system = [this](const OdeState& x, OdeState& dxdt, double) {
        dxdt = rhs(ManifoldPoint{x}).velocity;
    };

    for (std::size_t s = 0; s < seeds.size(); ++s) {
        auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<OdeState>());
        try {
            stepper.initialize(seeds[s].thetas, 0.0, 1e-3);
            int found = 0;
            double t_prev = 0.0;
            OdeState x_prev = seeds[s].thetas;
            while (stepper.current_time() < horizon && found < n_crossings) {
                stepper.do_step(system);
                const double t_cur = stepper.current_time();
                // subsample the accepted step to bracket crossings
                const int sub = 8;
                for (int i = 1; i <= sub; ++i) {
                    const double ta = t_prev + (t_cur - t_prev) * (i - 1) / sub;
                    const double tb = t_prev + (t_cur - t_prev) * i / sub;
                    OdeState xa(3), xb(3);
                    stepper.calc_state(ta, xa);
                    stepper.calc_state(tb, xb);
                    if (ta == tb) continue;
                    if (!(section_sin(xa) < 0.0 && section_sin(xb) >= 0.0)) continue;
                    if (section_cos(xa) < 0.3 || section_cos(xb) < 0.3) continue;
                    // bisection on the dense output
                    double lo = ta, hi = tb;
                    OdeState xm(3);
                    for (int it = 0; it < 80; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        stepper.calc_state(mid, xm);
                        if (section_sin(xm) < 0.0)
                            lo = mid;
                        else
                            hi = mid;
                        if (std::abs(section_sin(xm)) < 1e-12) break;
                    }
                    std::array<double, 2> pt;
                    int idx = 0;
                    for (int a = 0; a < 3; ++a)
                        if (a != section_angle) pt[idx++] = wrap_angle(xm[a]);
                    data.points.push_back(pt);
                    data.seed_of_point.push_back(static_cast<int>(s));
                    if (++found >= n_crossings) break;
                }
                t_prev = t_cur;
                stepper.calc_state(t_cur, x_prev);
            }
        } catch (const DegeneratePointError&) {
            // trajectory wandered into a chart pole; keep what was collected
        }
    }
    return data;
}

PeriodicOrbit TdvpSystem::find_periodic_orbit(const ManifoldPoint& guess, double period_guess,
                                              double tol, int max_iter) const {
    const int m = cell_;
    FlowSample f0 = rhs(guess);
    double speed = 0.0;
    for (double v : f0.velocity) speed += v * v;
    speed = std::sqrt(speed);
    if (speed < 1e-6)
        throw InputError("find_periodic_orbit: guess is an equilibrium (period-0) point");
    if (period_guess <= 0) throw InputError("find_periodic_orbit: period guess must be positive");

    int pin = 0;
    for (int a = 1; a < m; ++a)
        if (std::abs(f0.velocity[a]) > std::abs(f0.velocity[pin])) pin = a;

    // unknowns: the m-1 free coordinates and the period
    auto unpack = [&](const VectorXd& u, ManifoldPoint& p, double& T) {
        p.thetas = guess.thetas;
        int k = 0;
        for (int a = 0; a < m; ++a)
            if (a != pin) p.thetas[a] = u[k++];
        T = u[m - 1];
    };
    auto residual = [&](const VectorXd& u) {
        ManifoldPoint p;
        double T;
        unpack(u, p, T);
        ManifoldPoint q = flow_map(p, T);
        VectorXd r(m);
        for (int a = 0; a < m; ++a) r[a] = wrap_diff(q.thetas[a] - p.thetas[a]);
        return r;
    };

    VectorXd u(m);
    {
        int k = 0;
        for (int a = 0; a < m; ++a)
            if (a != pin) u[k++] = guess.thetas[a];
        u[m - 1] = period_guess;
    }

    VectorXd r = residual(u);
    for (int iter = 0; iter < max_iter && r.norm() > tol; ++iter) {
        MatrixXd jac(m, m);
        const double delta = 1e-6;
        for (int c = 0; c < m; ++c) {
            VectorXd up = u, um = u;
            up[c] += delta;
            um[c] -= delta;
            jac.col(c) = (residual(up) - residual(um)) / (2 * delta);
        }
        VectorXd step = jac.fullPivLu().solve(-r);
        // damped update
        double lambda = 1.0;
        for (int half = 0; half < 6; ++half) {
            VectorXd u_try = u + lambda * step;
            VectorXd r_try = residual(u_try);
            if (r_try.norm() < r.norm() || half == 5) {
                u = u_try;
                r = r_try;
                break;
            }
            lambda *= 0.5;
        }
    }
    if (r.norm() > tol)
        throw ConvergenceError("find_periodic_orbit: Newton did not converge", r.norm());

    PeriodicOrbit orbit;
    double T;
    ManifoldPoint p;
    unpack(u, p, T);
    orbit.start = p;
    orbit.period = T;
    orbit.closure_defect = r.norm();

    // monodromy by central differences around the refined orbit
    MatrixXd mono(m, m);
    const double delta = 1e-6;
    for (int c = 0; c < m; ++c) {
        ManifoldPoint pp = p, pm = p;
        pp.thetas[c] += delta;
        pm.thetas[c] -= delta;
        ManifoldPoint qp = flow_map(pp, T), qm = flow_map(pm, T);
        for (int a = 0; a < m; ++a)
            mono(a, c) = wrap_diff(qp.thetas[a] - qm.thetas[a]) / (2 * delta);
    }
    Eigen::EigenSolver<MatrixXd> es(mono);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        orbit.multipliers.push_back(es.eigenvalues()[i]);
    return orbit;
}

MatrixXd TdvpSystem::leakage_grid(int n) const {
    if (cell_ != 2) throw InputError("leakage_grid: implemented for the 2-angle system");
    MatrixXd grid(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ManifoldPoint p{{two_pi * i / n, two_pi * j / n}};
            try {
                grid(i, j) = rhs(p).leakage;
            } catch (const DegeneratePointError&) {
                grid(i, j) = std::numeric_limits<double>::quiet_NaN();
            }
        }
    return grid;
}

double torus_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw InputError("torus_distance: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = wrap_diff(a[i] - b[i]);
        s += d * d;
    }
    return std::sqrt(s);
}

double section_dispersion(const std::vector<std::array<double, 2>>& points) {
    const std::size_t n = points.size();
    if (n < 8) throw InputError("section_dispersion: too few points");

    auto dist = [&](std::size_t i, std::size_t j) {
        const double d0 = wrap_diff(points[i][0] - points[j][0]);
        const double d1 = wrap_diff(points[i][1] - points[j][1]);
        return std::sqrt(d0 * d0 + d1 * d1);
    };

    double nn_sum = 0.0;
    double pair_sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::max();
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d = dist(i, j);
            best = std::min(best, d);
            if (j > i) {
                pair_sum += d * d;
                ++pairs;
            }
        }
        nn_sum += best;
    }
    const double mean_nn = nn_sum / double(n);
    const double sigma = std::sqrt(pair_sum / double(pairs) / 2.0);  // rms spread
    return double(n) * mean_nn / (two_pi * std::max(sigma, 1e-12));
}

}  // namespace scarlab
