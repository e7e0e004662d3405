#ifndef DICKE_DARKSTATE_HPP
#define DICKE_DARKSTATE_HPP

#include <Eigen/Dense>
#include <vector>

#include "dicke/hamiltonian.hpp"

namespace dicke {

/// The zero-eigenvalue eigenstate of the driven chain, written over the
/// decay-free states |W_{m-mu}>|mu>: coefficients c_0..c_m with alternating
/// signs and unit norm. Independent of detuning and decay rate.
struct DarkVector {
    Eigen::VectorXd coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Closed-form dark-state amplitudes at given envelope values, normalised
/// with the c_0 >= 0 sign convention. Evaluated in log-magnitude form so
/// extreme envelope ratios cannot overflow the running products.
///
/// Throws if both envelopes vanish (the dark state is then undefined and a
/// one-sided limit must be taken by the caller).
DarkVector dark_coefficients(int n_ions, int n_quanta, double omega_a, double omega_b);

/// Residual ||H v||_2 / max(||H||_F, tiny) of the dark vector embedded into
/// the symmetric basis (eps = 0 block, zeros elsewhere). Near machine zero
/// when H and d were built at the same envelopes.
double verify_dark(const HamiltonianSample& symmetric_h, const DarkVector& d);

/// Numerical nullity of the chain matrix: singular values below
/// 1e-10 * sigma_max. One when both pulses are on; m+1 when the drive is off
/// (every lower-manifold row vanishes; callers should flag that degenerate).
int dark_uniqueness(const HamiltonianSample& chain);

/// Dark vector along a time grid. Where both envelopes underflow to zero the
/// vector is filled from the asymptotic limit selected by sign(tau) and the
/// side of the pulse pair the sample sits on.
std::vector<DarkVector> dark_trajectory(int n_ions, int n_quanta, const DriveParams& p,
                                        const std::vector<double>& times);

/// Dark vector embedded into the full symmetric basis (eps = 0 block).
Eigen::VectorXcd embed_dark(const SymmetricBasis& basis, const DarkVector& d);

}  // namespace dicke

#endif
