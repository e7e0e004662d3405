#ifndef DICKE_PROPAGATOR_HPP
#define DICKE_PROPAGATOR_HPP

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "dicke/darkstate.hpp"
#include "dicke/hamiltonian.hpp"

namespace dicke {

/// A time-dependent linear operator in matrix-free form: out = H(t) * psi.
/// Lets the integrator run over any basis without knowing its structure.
struct Generator {
    int dim = 0;
    std::function<void(double t, const Eigen::VectorXcd& psi, Eigen::VectorXcd& out)> apply;
};

struct IntegratorOptions {
    double tol = 1e-10;       ///< local error control, absolute and relative
    double initial_step = 0.0;  ///< 0 picks one automatically
    long max_steps = 50'000'000;
};

/// Integrates i d(psi)/dt = H(t) psi from t_start to t_end with an adaptive
/// embedded Runge-Kutta 5(4) stepper, sampling the solution on
/// `report_times` (ascending, inside the window) through dense output.
///
/// Throws a stiffness error on step-size underflow and an accuracy error if
/// the local tolerance cannot be met.
std::vector<Eigen::VectorXcd> integrate_schrodinger(const Generator& gen,
                                                    const Eigen::VectorXcd& psi0, double t_start,
                                                    double t_end,
                                                    const std::vector<double>& report_times,
                                                    const IntegratorOptions& opts = {});

/// Time series of a symmetric-basis propagation: amplitudes, norms, and
/// populations per excited-ion manifold.
struct Trajectory {
    int n_ions = 0;
    int n_quanta = 0;
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> amplitudes;
    std::vector<double> norms;
    std::vector<std::vector<double>> manifold_pops;  ///< [time][eps]
};

/// Default half-width of the integration window: 4T + |tau| keeps both
/// Gaussian tails below e^-16 of peak at the edges.
double default_window_halfwidth(const DriveParams& p);

/// Uniform time grid of n points across [a, b].
std::vector<double> uniform_grid(double a, double b, int n);

/// Propagates an initial symmetric-basis state under the driven chain
/// Hamiltonian (non-Hermitian when gamma > 0, so the norm may shrink).
Trajectory propagate(const Eigen::VectorXcd& initial, int n_ions, int n_quanta,
                     const DriveParams& p, std::pair<double, double> window, double tol,
                     int n_report = 601);

/// |<target|psi(t)>|^2 without renormalising the decayed state, so norm loss
/// counts as infidelity.
std::vector<double> fidelity_series(const Trajectory& traj, const Eigen::VectorXcd& target);

/// Population per excited-ion manifold, freshly summed from the amplitudes
/// (the same numbers a Trajectory carries in manifold_pops).
std::vector<std::vector<double>> manifold_populations(const Trajectory& traj);

/// Instantaneous dark-state occupation |<phi0(t)|psi(t)>|^2 along the grid.
std::vector<double> adiabatic_projection(const Trajectory& traj,
                                         const std::vector<DarkVector>& dark_ref);

/// Basis state |W_m^N(mu, eps)> as a symmetric-basis unit vector.
Eigen::VectorXcd symmetric_unit_state(const SymmetricBasis& basis, int mu, int eps);

/// Two-pulse-pair preparation: stage 1 drives the m addressed ions from
/// |1...1>|0> to |0...0>|m> (forward ordering), stage 2 drives all N ions
/// from |0...0>|m> into the Dicke state (reverse ordering). Fidelities and
/// dark-manifold retention multiply across the pipeline.
struct PreparationResult {
    Trajectory stage1;
    Trajectory stage2;
    double stage1_fidelity = 0.0;
    double stage2_fidelity = 0.0;
    double final_fidelity = 0.0;
    double dark_retention = 0.0;
};

PreparationResult prepare_dicke(int n_ions, int n_quanta, const DriveParams& p_forward,
                                const DriveParams& p_reverse, double tol, int n_report = 601);

}  // namespace dicke

#endif
