#include "dicke/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dicke {

SpectrumSample instantaneous_spectrum(const HamiltonianSample& chain)
{
    if (chain.basis_tag != BasisTag::chain)
        throw std::domain_error("instantaneous_spectrum: expected a chain matrix");

    SpectrumSample out;
    out.time = chain.time;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(chain.matrix, true);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("instantaneous_spectrum: eigensolver did not converge");
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();

    const Eigen::Index n = out.eigenvalues.size();
    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return std::abs(out.eigenvalues[a]) < std::abs(out.eigenvalues[b]);
    });
    out.dark_index = static_cast<int>(order[0]);

    double max_coupling = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) max_coupling = std::max(max_coupling, std::abs(chain.matrix(i, j)));

    if (max_coupling == 0.0) {
        // Drive off: the whole lower manifold is dark. e1 is the smallest
        // clearly nonzero eigenvalue (the detuning), or zero if none exists.
        out.e1 = 0.0;
        for (Eigen::Index k = 1; k < n; ++k) {
            if (std::abs(out.eigenvalues[order[static_cast<size_t>(k)]]) >
                1e-10 * chain.drive_scale) {
                out.e1 = out.eigenvalues[order[static_cast<size_t>(k)]];
                break;
            }
        }
        return out;
    }

    const double gap = std::abs(out.eigenvalues[order[1]]) - std::abs(out.eigenvalues[order[0]]);
    if (gap < 1e-12 * chain.drive_scale)
        throw std::runtime_error(
            "instantaneous_spectrum: near-zero eigenvalues degenerate, dark state ambiguous");

    out.e1 = out.eigenvalues[order[1]];
    return out;
}

std::complex<double> chain_determinant(int n_quanta, std::complex<double> energy,
                                       std::complex<double> delta_tilde,
                                       std::span<const double> lambda_a,
                                       std::span<const double> lambda_b)
{
    if (static_cast<int>(lambda_a.size()) != n_quanta ||
        static_cast<int>(lambda_b.size()) != n_quanta)
        throw std::domain_error("chain_determinant: coupling lists must have length m");

    // Leading principal minors of the tridiagonal chain: odd orders end on a
    // zero-detuning row, even orders on a detuned row.
    std::complex<double> m_prev = 1.0;      // M_0
    std::complex<double> m_odd = -energy;   // M_1
    for (int k = 1; k <= n_quanta; ++k) {
        const double lb = lambda_b[static_cast<size_t>(k - 1)];
        const double la = lambda_a[static_cast<size_t>(k - 1)];
        const std::complex<double> m_even = (delta_tilde - energy) * m_odd - lb * lb * m_prev;
        m_prev = m_odd;
        m_odd = -energy * m_even - la * la * m_prev;
        m_prev = m_even;
    }
    return m_odd;
}

std::pair<std::vector<double>, std::vector<double>> chain_couplings(int n_ions, int n_quanta,
                                                                    double t, const DriveParams& p)
{
    const PulsePair env = pulse_envelopes(t, p);
    std::vector<double> la(static_cast<size_t>(n_quanta));
    std::vector<double> lb(static_cast<size_t>(n_quanta));
    for (int mu = 0; mu < n_quanta; ++mu) {
        lb[static_cast<size_t>(mu)] = chain_lambda_b(mu, n_ions, n_quanta, env.omega_b);
        la[static_cast<size_t>(mu)] = chain_lambda_a(mu + 1, n_ions, n_quanta, env.omega_a);
    }
    return {la, lb};
}

Eigen::VectorXcd z_roots(int n_ions, int n_quanta, double t, const DriveParams& p)
{
    if (p.gamma != 0.0)
        throw std::domain_error("z_roots: defined for the lossless chain only (gamma = 0)");
    const PulsePair env = pulse_envelopes(t, p);
    if (env.omega_a == 0.0 || env.omega_b == 0.0)
        throw std::domain_error("z_roots: both envelopes must be nonzero");

    const HamiltonianSample chain = build_chain_matrix(n_ions, n_quanta, t, p);
    const SpectrumSample spec = instantaneous_spectrum(chain);

    const int m = n_quanta;
    const double w2 = p.omega0 * p.omega0;
    std::vector<std::complex<double>> z;
    z.reserve(static_cast<size_t>(2 * m));
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        if (static_cast<int>(i) == spec.dark_index) continue;
        const std::complex<double> e = spec.eigenvalues[i];
        z.push_back(e * (e - p.delta) / w2);
    }

    // Each root shows up twice (once per eigenvalue of the pair); greedily
    // match nearest neighbours and insist the partners agree.
    std::sort(z.begin(), z.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    Eigen::VectorXcd roots(m);
    std::vector<bool> used(z.size(), false);
    int found = 0;
    for (size_t i = 0; i < z.size(); ++i) {
        if (used[i]) continue;
        size_t best = i;
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t j = i + 1; j < z.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(z[i] - z[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best == i || best_d > 1e-8 * std::max(1.0, std::abs(z[i])))
            throw std::runtime_error("z_roots: eigenvalue pair maps to inconsistent roots");
        used[i] = used[best] = true;
        roots[found++] = 0.5 * (z[i] + z[best]);
    }
    return roots;
}

std::complex<double> e1_closed_form(double gamma_root, double omega0, double delta)
{
    const std::complex<double> disc(delta * delta + 4.0 * omega0 * omega0 * gamma_root, 0.0);
    return 0.5 * (delta - std::sqrt(disc));
}

double adiabaticity_area(const std::vector<double>& times, const std::vector<double>& gamma_roots,
                         double omega0)
{
    if (times.size() != gamma_roots.size() || times.size() < 2)
        throw std::domain_error("adiabaticity_area: need matching grids with >= 2 samples");
    double integral = 0.0;
    for (size_t i = 1; i < times.size(); ++i)
        integral += 0.5 * (gamma_roots[i] + gamma_roots[i - 1]) * (times[i] - times[i - 1]);
    return 0.5 * omega0 * integral;
}

}  // namespace dicke
