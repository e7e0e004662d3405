#include "dicke/darkstate.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dicke {

DarkVector dark_coefficients(int n_ions, int n_quanta, double omega_a, double omega_b)
{
    detail::validate_basis_params(n_ions, n_quanta);
    if (n_quanta < 1) throw std::domain_error("dark_coefficients: need m >= 1");
    if (omega_a == 0.0 && omega_b == 0.0)
        throw std::domain_error("dark_coefficients: both envelopes vanish, dark state undefined");

    const int m = n_quanta;

    // c_mu = (-1)^mu prod_{k<mu} lambda_b,k * prod_{l>mu} lambda_a,l, up to
    // normalisation. Accumulate log magnitudes; a vanishing factor anywhere
    // in the product zeroes the coefficient outright.
    std::vector<double> log_mag(static_cast<size_t>(m + 1), 0.0);
    std::vector<bool> is_zero(static_cast<size_t>(m + 1), false);

    // prefix_b[mu] = sum_{k=0}^{mu-1} ln lambda_b,k
    double acc = 0.0;
    bool dead = false;
    for (int mu = 0; mu <= m; ++mu) {
        log_mag[static_cast<size_t>(mu)] = acc;
        is_zero[static_cast<size_t>(mu)] = dead;
        if (mu < m) {
            const double lb = chain_lambda_b(mu, n_ions, m, omega_b);
            if (lb == 0.0)
                dead = true;
            else
                acc += std::log(lb);
        }
    }
    // suffix_a[mu] = sum_{l=mu+1}^{m} ln lambda_a,l
    acc = 0.0;
    dead = false;
    for (int mu = m; mu >= 0; --mu) {
        log_mag[static_cast<size_t>(mu)] += acc;
        if (dead) is_zero[static_cast<size_t>(mu)] = true;
        if (mu > 0) {
            const double la = chain_lambda_a(mu, n_ions, m, omega_a);
            if (la == 0.0)
                dead = true;
            else
                acc += std::log(la);
        }
    }

    double peak = -std::numeric_limits<double>::infinity();
    for (int mu = 0; mu <= m; ++mu)
        if (!is_zero[static_cast<size_t>(mu)]) peak = std::max(peak, log_mag[static_cast<size_t>(mu)]);

    DarkVector d;
    d.coeffs = Eigen::VectorXd::Zero(m + 1);
    for (int mu = 0; mu <= m; ++mu) {
        if (is_zero[static_cast<size_t>(mu)]) continue;
        const double sign = (mu % 2 == 0) ? 1.0 : -1.0;
        d.coeffs[mu] = sign * std::exp(log_mag[static_cast<size_t>(mu)] - peak);
    }
    const double nrm = d.coeffs.norm();
    if (!(nrm > 0.0))
        throw std::domain_error("dark_coefficients: all amplitudes vanished");
    d.coeffs /= nrm;
    return d;
}

Eigen::VectorXcd embed_dark(const SymmetricBasis& basis, const DarkVector& d)
{
    if (d.order() != basis.n_quanta())
        throw std::domain_error("embed_dark: dark vector order does not match basis");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.size());
    for (int mu = 0; mu <= basis.n_quanta(); ++mu)
        v[basis.index_of(mu, 0)] = d.coeffs[mu];
    return v;
}

double verify_dark(const HamiltonianSample& symmetric_h, const DarkVector& d)
{
    if (symmetric_h.basis_tag != BasisTag::symmetric)
        throw std::domain_error("verify_dark: expected a symmetric-basis Hamiltonian");
    const int m = d.order();
    const int dim = static_cast<int>(symmetric_h.matrix.rows());
    if (dim != (m + 1) * (m + 2) / 2)
        throw std::domain_error("verify_dark: basis dimension does not match dark vector");

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (int mu = 0; mu <= m; ++mu) v[mu] = d.coeffs[mu];  // eps = 0 block leads

    const double hnorm = symmetric_h.matrix.norm();
    const double tiny = std::numeric_limits<double>::min();
    return (symmetric_h.matrix * v).norm() / std::max(hnorm, tiny);
}

int dark_uniqueness(const HamiltonianSample& chain)
{
    if (chain.basis_tag != BasisTag::chain)
        throw std::domain_error("dark_uniqueness: expected a chain matrix");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(chain.matrix);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv[0] : 0.0;
    if (smax == 0.0) return static_cast<int>(chain.matrix.rows());
    int nullity = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] < 1e-10 * smax) ++nullity;
    return nullity;
}

std::vector<DarkVector> dark_trajectory(int n_ions, int n_quanta, const DriveParams& p,
                                        const std::vector<double>& times)
{
    std::vector<DarkVector> out;
    out.reserve(times.size());
    for (double t : times) {
        const PulsePair env = pulse_envelopes(t, p);
        if (env.omega_a == 0.0 && env.omega_b == 0.0) {
            // Both tails underflowed; fall back on the asymptotic endpoint
            // the drive connects to on this side of the pulse pair.
            DarkVector d;
            d.coeffs = Eigen::VectorXd::Zero(n_quanta + 1);
            const bool pump_a_side = (p.tau < 0.0) ? (t > 0.0) : (t < 0.0);
            if (pump_a_side)
                d.coeffs[0] = 1.0;  // omega_b/omega_a -> 0: all weight on |W_m>|0>
            else
                d.coeffs[n_quanta] = (n_quanta % 2 == 0) ? 1.0 : -1.0;  // |0...0>|m>
            out.push_back(std::move(d));
        } else {
            out.push_back(dark_coefficients(n_ions, n_quanta, env.omega_a, env.omega_b));
        }
    }
    return out;
}

}  // namespace dicke
