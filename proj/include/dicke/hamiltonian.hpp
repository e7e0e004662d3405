#ifndef DICKE_HAMILTONIAN_HPP
#define DICKE_HAMILTONIAN_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "dicke/symbasis.hpp"

namespace dicke {

/// Laser drive for one pulse pair. All frequencies are in units of 1/T and
/// times in units of T (pulse_width stays at 1 internally; physical-unit
/// conversion happens at the CLI boundary only).
struct DriveParams {
    double omega0 = 1.0;       ///< peak Rabi frequency
    double pulse_width = 1.0;  ///< Gaussian width T
    double tau = 0.0;          ///< pulse delay; tau > 0 puts pulse a first
    double delta = 0.0;        ///< single-photon detuning
    double gamma = 0.0;        ///< decay rate out of |e>, >= 0

    /// Complex detuning: decay folded into the diagonal as delta - i*gamma.
    std::complex<double> delta_tilde() const { return {delta, -gamma}; }
};

struct PulsePair {
    double omega_a;
    double omega_b;
};

/// Overlapping Gaussian envelopes:
///   omega_a(t) = omega0 * exp(-(t+tau)^2 / T^2)
///   omega_b(t) = omega0 * exp(-(t-tau)^2 / T^2)
PulsePair pulse_envelopes(double t, const DriveParams& p);

/// The four ladder couplings between symmetric states.
enum class CouplingKind { a_plus, a_minus, b_plus, b_minus };

/// Coupling matrix element between (mu, eps) and its ladder partner:
///   a+: (mu, eps) -> (mu-1, eps+1), (omega_a/2) sqrt(mu (eps+1) (N-m+mu))
///   a-: (mu, eps) -> (mu+1, eps-1), (omega_a/2) sqrt((mu+1) eps (N-m+mu+1))
///   b-: (mu, eps) -> (mu, eps-1),   (omega_b/2) sqrt(eps (m-mu-eps+1))
///   b+: (mu, eps) -> (mu, eps+1),   (omega_b/2) sqrt((eps+1) (m-mu-eps))
double coupling_lambda(CouplingKind kind, int mu, int eps, int n_ions, int n_quanta,
                       double omega_a, double omega_b);

/// Lower-manifold abbreviations used along the coupling chain.
double chain_lambda_a(int mu, int n_ions, int n_quanta, double omega_a);  ///< a+ at eps = 0
double chain_lambda_b(int mu, int n_ions, int n_quanta, double omega_b);  ///< b+ at eps = 0

enum class BasisTag { symmetric, chain, computational };

/// A Hamiltonian matrix over one of the supported bases at a fixed time.
/// `drive_scale` carries the peak Rabi frequency for near-zero thresholds.
struct HamiltonianSample {
    BasisTag basis_tag = BasisTag::symmetric;
    double time = 0.0;
    Eigen::MatrixXcd matrix;
    double drive_scale = 1.0;
};

/// Full symmetric-basis Hamiltonian at time t: ladder couplings off the
/// diagonal, eps * (delta - i gamma) on the diagonal. Real-symmetric when
/// gamma = 0.
HamiltonianSample build_symmetric_hamiltonian(const SymmetricBasis& basis, double t,
                                              const DriveParams& p);

/// Same matrix at explicitly given envelope values (no time dependence).
HamiltonianSample build_symmetric_hamiltonian_at(const SymmetricBasis& basis, double omega_a,
                                                 double omega_b, const DriveParams& p);

/// The (2m+1)-dimensional matrix over the states with at most one excited
/// ion, interleaved (c_0, upper, c_1, upper, ..., c_m) so the chain is
/// visibly tridiagonal: couplings alternate lambda_b,mu / lambda_a,mu+1 and
/// the complex detuning sits on every second diagonal entry.
HamiltonianSample build_chain_matrix(int n_ions, int n_quanta, double t, const DriveParams& p);

/// Chain matrix at explicitly given envelope values.
HamiltonianSample build_chain_matrix_at(int n_ions, int n_quanta, double omega_a, double omega_b,
                                        const DriveParams& p);

/// Index map from chain position (0..2m) to the canonical symmetric-basis
/// position: even slots are (mu, 0), odd slots are (mu, 1).
std::vector<int> chain_to_symmetric_indices(int n_quanta);

}  // namespace dicke

#endif
