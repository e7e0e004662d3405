#ifndef DICKE_SYMBASIS_HPP
#define DICKE_SYMBASIS_HPP

#include <Eigen/Dense>
#include <vector>

namespace dicke {

/// One permutation-symmetric state of the ion chain plus bus mode:
/// `mu` phonons and `eps` ions in the excited internal level. The remaining
/// ions split into (m - mu - eps) in |1> and (N - m + mu) in |0>.
struct SymmetricState {
    int mu = 0;
    int eps = 0;

    friend bool operator==(const SymmetricState&, const SymmetricState&) = default;
};

/// Number of symmetric states for m shared quanta: (m+1)(m+2)/2.
int symmetric_dimension(int n_ions, int n_quanta);

/// Number of computational-basis states carrying exactly m excitations
/// (no symmetry reduction). Grows rapidly with both N and m.
long long full_coupled_dimension(int n_ions, int n_quanta);

/// Ordered index of the symmetric states for fixed (N, m).
///
/// Canonical order is eps-major, mu ascending inside each eps manifold, so
/// the decay-free eps = 0 block occupies the leading m+1 positions.
class SymmetricBasis {
public:
    SymmetricBasis(int n_ions, int n_quanta);

    int n_ions() const { return n_ions_; }
    int n_quanta() const { return n_quanta_; }
    int size() const { return static_cast<int>(states_.size()); }

    const std::vector<SymmetricState>& states() const { return states_; }
    const SymmetricState& state(int i) const { return states_[static_cast<size_t>(i)]; }

    bool contains(int mu, int eps) const;
    /// Position of (mu, eps); O(1) arithmetic, throws if outside the basis.
    int index_of(int mu, int eps) const;

private:
    int n_ions_;
    int n_quanta_;
    std::vector<SymmetricState> states_;
};

/// Normalisation coefficient of the symmetric superposition:
/// sqrt(eps! (m-mu-eps)! (N-m+mu)! / N!). Always in (0, 1].
double norm_coefficient(int n_ions, int n_quanta, SymmetricState s);

/// ln(n!) via lgamma; safe for n up to ~170 and beyond.
double log_factorial(int n);

/// Index of a computational-basis ket: ion j is base-3 digit j
/// (0 -> |0>, 1 -> |1>, 2 -> |e>), phonon number is the slowest axis.
int computational_index(const std::vector<int>& ion_levels, int phonons, int n_ions);

/// Computational dimension 3^N * (cutoff+1).
long long computational_dimension(int n_ions, int phonon_cutoff);

/// Expands a symmetric state into the full computational basis: equal real
/// amplitude norm_coefficient(...) on every distinct permutation string,
/// paired with the |mu> Fock state. Unit norm by construction.
Eigen::VectorXcd expand_to_computational(int n_ions, int n_quanta, SymmetricState s,
                                         int phonon_cutoff);

namespace detail {
void validate_basis_params(int n_ions, int n_quanta);
void validate_state(int n_ions, int n_quanta, SymmetricState s);
}  // namespace detail

}  // namespace dicke

#endif
