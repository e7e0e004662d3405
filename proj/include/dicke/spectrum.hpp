#ifndef DICKE_SPECTRUM_HPP
#define DICKE_SPECTRUM_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "dicke/hamiltonian.hpp"

namespace dicke {

/// Instantaneous eigenstructure of the chain matrix. `e1` is the nonzero
/// eigenvalue of smallest magnitude, the one that sets the adiabatic gap.
struct SpectrumSample {
    double time = 0.0;
    Eigen::VectorXcd eigenvalues;   ///< all 2m+1, unsorted solver order
    Eigen::MatrixXcd eigenvectors;  ///< columns match eigenvalues
    int dark_index = -1;            ///< position of the near-zero eigenvalue
    std::complex<double> e1{0.0, 0.0};
    Eigen::VectorXcd z_roots;       ///< filled by z_roots(), empty otherwise
};

/// Dense eigensolve of a chain matrix. Identifies the dark eigenvalue and
/// the gap eigenvalue e1; throws if the two smallest magnitudes are closer
/// than 1e-12 * drive_scale (the dark state cannot be told apart).
SpectrumSample instantaneous_spectrum(const HamiltonianSample& chain);

/// Characteristic determinant of the (2m+1) chain matrix, evaluated by the
/// tridiagonal recurrence with M_1 = -E and M_2 = -E(delta - E) - lambda_b0^2.
/// `lambda_a` holds lambda_a,1..lambda_a,m and `lambda_b` lambda_b,0..b,m-1.
std::complex<double> chain_determinant(int n_quanta, std::complex<double> energy,
                                       std::complex<double> delta_tilde,
                                       std::span<const double> lambda_a,
                                       std::span<const double> lambda_b);

/// Chain couplings at time t: (lambda_a,1..m, lambda_b,0..m-1).
std::pair<std::vector<double>, std::vector<double>> chain_couplings(int n_ions, int n_quanta,
                                                                    double t,
                                                                    const DriveParams& p);

/// The m dimensionless roots z = E (E - delta) / omega0^2 extracted from the
/// 2m nonzero eigenvalues (each root accounts for an eigenvalue pair). They
/// depend only on (N, m, t, tau), not on omega0 or delta. Requires gamma = 0;
/// throws a consistency error if an eigenvalue pair maps to inconsistent z.
Eigen::VectorXcd z_roots(int n_ions, int n_quanta, double t, const DriveParams& p);

/// Gap eigenvalue from a dimensionless root gamma >= 0:
///   E1 = (delta - sqrt(delta^2 + 4 omega0^2 gamma)) / 2.
/// Reduces to -omega0 sqrt(gamma) on resonance and to about
/// -omega0^2 gamma / delta when delta >> omega0.
std::complex<double> e1_closed_form(double gamma_root, double omega0, double delta);

/// Diagnostic adiabaticity integral 0.5 * omega0 * int gamma(t) dt by
/// trapezoid rule over the sample grid.
double adiabaticity_area(const std::vector<double>& times, const std::vector<double>& gamma_roots,
                         double omega0);

}  // namespace dicke

#endif
