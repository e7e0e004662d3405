#ifndef DICKE_TESTS_REFERENCE_RK4_HPP
#define DICKE_TESTS_REFERENCE_RK4_HPP

// Test-only reference integrator: classic fixed-step fourth-order
// Runge-Kutta, deliberately independent of the adaptive production stepper
// so the two can cross-check each other.

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace dicke_test {

using MatrixFn = std::function<Eigen::MatrixXcd(double)>;

inline Eigen::VectorXcd rk4_propagate(const MatrixFn& hamiltonian, Eigen::VectorXcd psi,
                                      double t0, double t1, int n_steps)
{
    const std::complex<double> mi(0.0, -1.0);
    const double h = (t1 - t0) / n_steps;
    for (int s = 0; s < n_steps; ++s) {
        const double t = t0 + s * h;
        const Eigen::VectorXcd k1 = mi * (hamiltonian(t) * psi);
        const Eigen::VectorXcd k2 = mi * (hamiltonian(t + 0.5 * h) * (psi + 0.5 * h * k1));
        const Eigen::VectorXcd k3 = mi * (hamiltonian(t + 0.5 * h) * (psi + 0.5 * h * k2));
        const Eigen::VectorXcd k4 = mi * (hamiltonian(t + h) * (psi + h * k3));
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

}  // namespace dicke_test

#endif
