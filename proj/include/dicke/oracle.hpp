#ifndef DICKE_ORACLE_HPP
#define DICKE_ORACLE_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "dicke/hamiltonian.hpp"
#include "dicke/propagator.hpp"
#include "dicke/symbasis.hpp"

namespace dicke {

/// Geometry and phase data for the brute-force full-space simulator. Exists
/// for verification, not production: N and the phonon cutoff are capped at 6
/// (3^6 x 7 amplitudes).
struct FullSpaceConfig {
    int n_ions = 1;
    int phonon_cutoff = 1;
    std::vector<double> positions;        ///< per-ion x_j; empty means all zero
    double wave_number_a = 0.0;
    double wave_number_b = 0.0;
    double angle_a = 0.0;                 ///< beam angle to the trap axis
    double angle_b = 0.0;
    double laser_phase_a = 0.0;           ///< phase at the trap centre at t = 0
    double laser_phase_b = 0.0;
    std::vector<double> coupling_scales;  ///< per-ion drive scale; empty = uniform
};

/// Which form of the drive Hamiltonian to assemble: the lab picture keeps
/// the explicit exp(+-i(delta t - phi_j)) factors; the transformed picture
/// is the phase-free equal-coupling form with the detuning on the diagonal.
enum class Picture { lab, transformed };

struct IonPhases {
    std::vector<double> phi_a;
    std::vector<double> phi_b;
};

/// Per-ion drive phases: phi_j = phi_L - x_j k cos(theta) - pi/2.
IonPhases compute_phases(const FullSpaceConfig& cfg);

/// 3^N * (cutoff+1); throws if the dimension guard (N, cutoff <= 6) trips.
int full_dimension(const FullSpaceConfig& cfg);

/// Dense full-space Hamiltonian at time t. `truncated` on the result is set
/// when a phonon-raising coupling fell outside the Fock cutoff during
/// assembly.
struct FullHamiltonianSample {
    HamiltonianSample sample;
    bool truncated = false;
};

FullHamiltonianSample build_full_hamiltonian(const FullSpaceConfig& cfg, double t,
                                             const DriveParams& p, Picture picture);

/// Diagonal of the phase transformation U(t): exp(i(delta t - phi_j^a)) per
/// excited ion and exp(i(phi_j^b - phi_j^a)) per ion in |1>, composed over
/// the chain. Propagating under the lab picture equals U(t) times the
/// transformed-picture propagation.
Eigen::VectorXcd phase_transform_diagonal(const FullSpaceConfig& cfg, double t,
                                          const DriveParams& p);

/// Matrix-free apply for the integrator. `parallel` switches the OpenMP
/// row-parallel kernel on; the serial path is the reference the tests pin
/// the parallel one against (both gather per row, so results are identical).
Generator full_space_generator(const FullSpaceConfig& cfg, const DriveParams& p, Picture picture,
                               bool parallel = false);

/// Overlaps of a full-space vector with every expanded symmetric state plus
/// the norm of what is left outside the symmetric subspace.
struct SymmetricProjection {
    Eigen::VectorXcd coeffs;
    double residual = 0.0;
};

SymmetricProjection project_to_symmetric(const Eigen::VectorXcd& full,
                                         const SymmetricBasis& basis, int phonon_cutoff);

/// Total excitation number (phonons + ions outside |0>) of basis state i.
int excitation_of_index(const FullSpaceConfig& cfg, int index);

/// Max_t |<N_hat>(t) - <N_hat>(0)| over a state series. With `normalized`
/// the expectation is divided by the squared norm, which stays constant even
/// under decay.
double check_excitation_conservation(const std::vector<Eigen::VectorXcd>& states,
                                     const FullSpaceConfig& cfg, bool normalized = false);

/// Population sitting at the top (guard) phonon level.
double guard_level_population(const Eigen::VectorXcd& state, const FullSpaceConfig& cfg);

}  // namespace dicke

#endif
