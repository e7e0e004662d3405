#include "dicke/symbasis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dicke {

namespace detail {

void validate_basis_params(int n_ions, int n_quanta)
{
    if (n_ions < 1)
        throw std::domain_error("symbasis: need at least one ion, got N=" + std::to_string(n_ions));
    if (n_quanta < 0 || n_quanta > n_ions)
        throw std::domain_error("symbasis: need 0 <= m <= N, got m=" + std::to_string(n_quanta) +
                                ", N=" + std::to_string(n_ions));
}

void validate_state(int n_ions, int n_quanta, SymmetricState s)
{
    validate_basis_params(n_ions, n_quanta);
    if (s.mu < 0 || s.eps < 0 || s.mu + s.eps > n_quanta)
        throw std::domain_error("symbasis: state (mu=" + std::to_string(s.mu) +
                                ", eps=" + std::to_string(s.eps) + ") invalid for m=" +
                                std::to_string(n_quanta));
}

}  // namespace detail

int symmetric_dimension(int n_ions, int n_quanta)
{
    detail::validate_basis_params(n_ions, n_quanta);
    return (n_quanta + 1) * (n_quanta + 2) / 2;
}

double log_factorial(int n)
{
    return std::lgamma(static_cast<double>(n) + 1.0);
}

namespace {

// Binomial via lgamma, rounded back to the nearest integer. Exact while the
// count stays below 2^53, far beyond any simulated chain.
long long binomial_ll(int n, int k)
{
    if (k < 0 || k > n) return 0;
    double v = std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
    return static_cast<long long>(std::llround(v));
}

}  // namespace

long long full_coupled_dimension(int n_ions, int n_quanta)
{
    detail::validate_basis_params(n_ions, n_quanta);
    long long total = 0;
    for (int eps = 0; eps <= n_quanta; ++eps)
        for (int mu = 0; mu <= n_quanta - eps; ++mu)
            total += binomial_ll(n_ions, n_quanta - mu) * binomial_ll(n_quanta - mu, eps);
    return total;
}

SymmetricBasis::SymmetricBasis(int n_ions, int n_quanta)
    : n_ions_(n_ions), n_quanta_(n_quanta)
{
    detail::validate_basis_params(n_ions, n_quanta);
    states_.reserve(static_cast<size_t>(symmetric_dimension(n_ions, n_quanta)));
    for (int eps = 0; eps <= n_quanta; ++eps)
        for (int mu = 0; mu <= n_quanta - eps; ++mu)
            states_.push_back({mu, eps});
}

bool SymmetricBasis::contains(int mu, int eps) const
{
    return mu >= 0 && eps >= 0 && mu + eps <= n_quanta_;
}

int SymmetricBasis::index_of(int mu, int eps) const
{
    if (!contains(mu, eps))
        throw std::domain_error("symbasis: (mu, eps) outside basis");
    // States with eps' < eps occupy sum_{k<eps} (m+1-k) leading slots.
    const int m = n_quanta_;
    return eps * (m + 1) - eps * (eps - 1) / 2 + mu;
}

double norm_coefficient(int n_ions, int n_quanta, SymmetricState s)
{
    detail::validate_state(n_ions, n_quanta, s);
    const int ones = n_quanta - s.mu - s.eps;
    const int zeros = n_ions - n_quanta + s.mu;
    const double lg = 0.5 * (log_factorial(s.eps) + log_factorial(ones) + log_factorial(zeros) -
                             log_factorial(n_ions));
    return std::exp(lg);
}

int computational_index(const std::vector<int>& ion_levels, int phonons, int n_ions)
{
    int idx = 0;
    int stride = 1;
    for (int j = 0; j < n_ions; ++j) {
        idx += ion_levels[static_cast<size_t>(j)] * stride;
        stride *= 3;
    }
    return phonons * stride + idx;
}

long long computational_dimension(int n_ions, int phonon_cutoff)
{
    long long d = phonon_cutoff + 1;
    for (int j = 0; j < n_ions; ++j) d *= 3;
    return d;
}

Eigen::VectorXcd expand_to_computational(int n_ions, int n_quanta, SymmetricState s,
                                         int phonon_cutoff)
{
    detail::validate_state(n_ions, n_quanta, s);
    if (phonon_cutoff < s.mu)
        throw std::domain_error("symbasis: phonon cutoff below the state's phonon number");

    const double amp = norm_coefficient(n_ions, n_quanta, s);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(computational_dimension(n_ions, phonon_cutoff));

    // Walk all distinct permutations of the internal-level string.
    const int ones = n_quanta - s.mu - s.eps;
    std::vector<int> levels;
    levels.insert(levels.end(), static_cast<size_t>(n_ions - n_quanta + s.mu), 0);
    levels.insert(levels.end(), static_cast<size_t>(ones), 1);
    levels.insert(levels.end(), static_cast<size_t>(s.eps), 2);
    std::sort(levels.begin(), levels.end());
    do {
        out[computational_index(levels, s.mu, n_ions)] = amp;
    } while (std::next_permutation(levels.begin(), levels.end()));
    return out;
}

}  // namespace dicke
