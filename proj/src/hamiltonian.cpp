#include "dicke/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace dicke {

PulsePair pulse_envelopes(double t, const DriveParams& p)
{
    const double T = p.pulse_width;
    const double ua = (t + p.tau) / T;
    const double ub = (t - p.tau) / T;
    return {p.omega0 * std::exp(-ua * ua), p.omega0 * std::exp(-ub * ub)};
}

double coupling_lambda(CouplingKind kind, int mu, int eps, int n_ions, int n_quanta,
                       double omega_a, double omega_b)
{
    detail::validate_state(n_ions, n_quanta, {mu, eps});
    const int N = n_ions, m = n_quanta;
    switch (kind) {
    case CouplingKind::a_plus:
        return 0.5 * omega_a * std::sqrt(double(mu) * (eps + 1) * (N - m + mu));
    case CouplingKind::a_minus:
        return 0.5 * omega_a * std::sqrt(double(mu + 1) * eps * (N - m + mu + 1));
    case CouplingKind::b_minus:
        return 0.5 * omega_b * std::sqrt(double(eps) * (m - mu - eps + 1));
    case CouplingKind::b_plus:
        return 0.5 * omega_b * std::sqrt(double(eps + 1) * (m - mu - eps));
    }
    throw std::logic_error("coupling_lambda: bad kind");
}

double chain_lambda_a(int mu, int n_ions, int n_quanta, double omega_a)
{
    return coupling_lambda(CouplingKind::a_plus, mu, 0, n_ions, n_quanta, omega_a, 0.0);
}

double chain_lambda_b(int mu, int n_ions, int n_quanta, double omega_b)
{
    return coupling_lambda(CouplingKind::b_plus, mu, 0, n_ions, n_quanta, 0.0, omega_b);
}

HamiltonianSample build_symmetric_hamiltonian_at(const SymmetricBasis& basis, double omega_a,
                                                 double omega_b, const DriveParams& p)
{
    const int N = basis.n_ions(), m = basis.n_quanta();
    const int dim = basis.size();
    HamiltonianSample out;
    out.basis_tag = BasisTag::symmetric;
    out.drive_scale = p.omega0;
    out.matrix = Eigen::MatrixXcd::Zero(dim, dim);

    for (int i = 0; i < dim; ++i) {
        const SymmetricState s = basis.state(i);
        out.matrix(i, i) = double(s.eps) * p.delta_tilde();

        // b+ raises eps at fixed mu; a+ trades one phonon for one excitation.
        // The matrix is structurally symmetric, so filling each raising
        // coupling and its transpose covers the lowering partners too.
        if (basis.contains(s.mu, s.eps + 1)) {
            const double lb =
                coupling_lambda(CouplingKind::b_plus, s.mu, s.eps, N, m, omega_a, omega_b);
            const int j = basis.index_of(s.mu, s.eps + 1);
            out.matrix(j, i) += lb;
            out.matrix(i, j) += lb;
        }
        if (s.mu >= 1 && basis.contains(s.mu - 1, s.eps + 1)) {
            const double la =
                coupling_lambda(CouplingKind::a_plus, s.mu, s.eps, N, m, omega_a, omega_b);
            const int j = basis.index_of(s.mu - 1, s.eps + 1);
            out.matrix(j, i) += la;
            out.matrix(i, j) += la;
        }
    }
    return out;
}

HamiltonianSample build_symmetric_hamiltonian(const SymmetricBasis& basis, double t,
                                              const DriveParams& p)
{
    const PulsePair env = pulse_envelopes(t, p);
    HamiltonianSample out = build_symmetric_hamiltonian_at(basis, env.omega_a, env.omega_b, p);
    out.time = t;
    return out;
}

HamiltonianSample build_chain_matrix_at(int n_ions, int n_quanta, double omega_a, double omega_b,
                                        const DriveParams& p)
{
    detail::validate_basis_params(n_ions, n_quanta);
    if (n_quanta < 1)
        throw std::domain_error("chain matrix needs m >= 1; the m = 0 chain is a single state");

    const int m = n_quanta;
    const int dim = 2 * m + 1;
    HamiltonianSample out;
    out.basis_tag = BasisTag::chain;
    out.drive_scale = p.omega0;
    out.matrix = Eigen::MatrixXcd::Zero(dim, dim);

    for (int mu = 0; mu < m; ++mu) {
        const double lb = chain_lambda_b(mu, n_ions, m, omega_b);
        const double la = chain_lambda_a(mu + 1, n_ions, m, omega_a);
        out.matrix(2 * mu, 2 * mu + 1) = lb;
        out.matrix(2 * mu + 1, 2 * mu) = lb;
        out.matrix(2 * mu + 1, 2 * mu + 2) = la;
        out.matrix(2 * mu + 2, 2 * mu + 1) = la;
        out.matrix(2 * mu + 1, 2 * mu + 1) = p.delta_tilde();
    }
    return out;
}

HamiltonianSample build_chain_matrix(int n_ions, int n_quanta, double t, const DriveParams& p)
{
    const PulsePair env = pulse_envelopes(t, p);
    HamiltonianSample out = build_chain_matrix_at(n_ions, n_quanta, env.omega_a, env.omega_b, p);
    out.time = t;
    return out;
}

std::vector<int> chain_to_symmetric_indices(int n_quanta)
{
    const int m = n_quanta;
    std::vector<int> map(static_cast<size_t>(2 * m + 1));
    for (int mu = 0; mu <= m; ++mu) {
        map[static_cast<size_t>(2 * mu)] = mu;  // (mu, 0)
        if (mu < m) map[static_cast<size_t>(2 * mu + 1)] = (m + 1) + mu;  // (mu, 1)
    }
    return map;
}

}  // namespace dicke
