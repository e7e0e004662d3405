#include "dicke/oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dicke {

namespace {

constexpr int kMaxIons = 6;
constexpr int kMaxCutoff = 6;

void validate_config(const FullSpaceConfig& cfg)
{
    if (cfg.n_ions < 1 || cfg.n_ions > kMaxIons)
        throw std::domain_error("oracle: dimension guard admits 1 <= N <= 6");
    if (cfg.phonon_cutoff < 1 || cfg.phonon_cutoff > kMaxCutoff)
        throw std::domain_error("oracle: dimension guard admits 1 <= cutoff <= 6");
    if (!cfg.positions.empty() && static_cast<int>(cfg.positions.size()) != cfg.n_ions)
        throw std::domain_error("oracle: positions must list every ion");
    if (!cfg.coupling_scales.empty() &&
        static_cast<int>(cfg.coupling_scales.size()) != cfg.n_ions)
        throw std::domain_error("oracle: coupling_scales must list every ion");
}

int pow3(int n)
{
    int r = 1;
    for (int i = 0; i < n; ++i) r *= 3;
    return r;
}

double scale_of(const FullSpaceConfig& cfg, int ion)
{
    return cfg.coupling_scales.empty() ? 1.0 : cfg.coupling_scales[static_cast<size_t>(ion)];
}

// Complex drive coefficients per ion at one instant; precomputed once per
// right-hand-side evaluation.
struct RowContext {
    std::vector<std::complex<double>> coeff_a;  // in front of a |e><0| + h.c.
    std::vector<std::complex<double>> coeff_b;  // in front of |e><1| + h.c.
    std::complex<double> diag_e;                // per excited ion
    int n_ions;
    int pow3n;
    int cutoff;
};

RowContext make_row_context(const FullSpaceConfig& cfg, double t, const DriveParams& p,
                            Picture picture)
{
    const PulsePair env = pulse_envelopes(t, p);
    const IonPhases phases = compute_phases(cfg);
    RowContext ctx;
    ctx.n_ions = cfg.n_ions;
    ctx.pow3n = pow3(cfg.n_ions);
    ctx.cutoff = cfg.phonon_cutoff;
    ctx.coeff_a.resize(static_cast<size_t>(cfg.n_ions));
    ctx.coeff_b.resize(static_cast<size_t>(cfg.n_ions));
    const std::complex<double> i1(0.0, 1.0);
    for (int q = 0; q < cfg.n_ions; ++q) {
        const double s = scale_of(cfg, q);
        if (picture == Picture::lab) {
            ctx.coeff_a[static_cast<size_t>(q)] =
                0.5 * s * env.omega_a *
                std::exp(i1 * (p.delta * t - phases.phi_a[static_cast<size_t>(q)]));
            ctx.coeff_b[static_cast<size_t>(q)] =
                0.5 * s * env.omega_b *
                std::exp(i1 * (p.delta * t - phases.phi_b[static_cast<size_t>(q)]));
        } else {
            ctx.coeff_a[static_cast<size_t>(q)] = 0.5 * s * env.omega_a;
            ctx.coeff_b[static_cast<size_t>(q)] = 0.5 * s * env.omega_b;
        }
    }
    // Decay always sits on the |e> projector; the detuning does only in the
    // transformed picture (the lab picture keeps it inside the phases).
    ctx.diag_e = picture == Picture::lab ? std::complex<double>(0.0, -p.gamma) : p.delta_tilde();
    return ctx;
}

// out_i = sum_j H_ij psi_j for one row, gathering from the coupled kets.
std::complex<double> gather_row(const RowContext& ctx, const Eigen::VectorXcd& psi, int i)
{
    const int phonon = i / ctx.pow3n;
    const int ions = i % ctx.pow3n;

    std::complex<double> acc = 0.0;
    int rem = ions;
    int stride = 1;
    for (int q = 0; q < ctx.n_ions; ++q, rem /= 3, stride *= 3) {
        const int digit = rem % 3;
        if (digit == 2) {
            acc += ctx.diag_e * psi[i];
            // <e, p| a |0, p+1> = sqrt(p+1); drop it beyond the cutoff.
            if (phonon + 1 <= ctx.cutoff)
                acc += ctx.coeff_a[static_cast<size_t>(q)] * std::sqrt(double(phonon + 1)) *
                       psi[i - 2 * stride + ctx.pow3n];
            acc += ctx.coeff_b[static_cast<size_t>(q)] * psi[i - stride];
        } else if (digit == 0) {
            if (phonon >= 1)
                acc += std::conj(ctx.coeff_a[static_cast<size_t>(q)]) * std::sqrt(double(phonon)) *
                       psi[i + 2 * stride - ctx.pow3n];
        } else {  // digit == 1
            acc += std::conj(ctx.coeff_b[static_cast<size_t>(q)]) * psi[i + stride];
        }
    }
    return acc;
}

}  // namespace

IonPhases compute_phases(const FullSpaceConfig& cfg)
{
    validate_config(cfg);
    IonPhases out;
    out.phi_a.resize(static_cast<size_t>(cfg.n_ions));
    out.phi_b.resize(static_cast<size_t>(cfg.n_ions));
    for (int j = 0; j < cfg.n_ions; ++j) {
        const double x = cfg.positions.empty() ? 0.0 : cfg.positions[static_cast<size_t>(j)];
        out.phi_a[static_cast<size_t>(j)] =
            cfg.laser_phase_a - x * cfg.wave_number_a * std::cos(cfg.angle_a) -
            std::numbers::pi / 2.0;
        out.phi_b[static_cast<size_t>(j)] =
            cfg.laser_phase_b - x * cfg.wave_number_b * std::cos(cfg.angle_b) -
            std::numbers::pi / 2.0;
    }
    return out;
}

int full_dimension(const FullSpaceConfig& cfg)
{
    validate_config(cfg);
    return pow3(cfg.n_ions) * (cfg.phonon_cutoff + 1);
}

FullHamiltonianSample build_full_hamiltonian(const FullSpaceConfig& cfg, double t,
                                             const DriveParams& p, Picture picture)
{
    const int dim = full_dimension(cfg);
    if (dim > 2048)
        throw std::domain_error(
            "build_full_hamiltonian: dense assembly capped at dim 2048; use "
            "full_space_generator for matrix-free propagation");
    const RowContext ctx = make_row_context(cfg, t, p, picture);

    FullHamiltonianSample out;
    out.sample.basis_tag = BasisTag::computational;
    out.sample.time = t;
    out.sample.drive_scale = p.omega0;
    out.sample.matrix = Eigen::MatrixXcd::Zero(dim, dim);

    // Column-by-column through unit vectors keeps this on the same code path
    // as the matrix-free apply.
    Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(dim);
    for (int j = 0; j < dim; ++j) {
        unit[j] = 1.0;
        for (int i = 0; i < dim; ++i) {
            const std::complex<double> v = gather_row(ctx, unit, i);
            if (v != 0.0) out.sample.matrix(i, j) = v;
        }
        unit[j] = 0.0;
    }

    // Any ket with an excited ion at the top phonon level lost its
    // phonon-raising partner to the cutoff. Callers pair this flag with a
    // guard-level occupancy check after propagation.
    for (int ions = 0; ions < ctx.pow3n && !out.truncated; ++ions) {
        int rem = ions;
        for (int q = 0; q < cfg.n_ions; ++q, rem /= 3)
            if (rem % 3 == 2) out.truncated = true;
    }
    return out;
}

Eigen::VectorXcd phase_transform_diagonal(const FullSpaceConfig& cfg, double t,
                                          const DriveParams& p)
{
    const int dim = full_dimension(cfg);
    const IonPhases phases = compute_phases(cfg);
    const int p3 = pow3(cfg.n_ions);
    Eigen::VectorXcd diag(dim);
    for (int i = 0; i < dim; ++i) {
        double phase = 0.0;
        int rem = i % p3;
        for (int q = 0; q < cfg.n_ions; ++q, rem /= 3) {
            const int digit = rem % 3;
            if (digit == 2)
                phase += p.delta * t - phases.phi_a[static_cast<size_t>(q)];
            else if (digit == 1)
                phase += phases.phi_b[static_cast<size_t>(q)] - phases.phi_a[static_cast<size_t>(q)];
        }
        diag[i] = std::exp(std::complex<double>(0.0, phase));
    }
    return diag;
}

Generator full_space_generator(const FullSpaceConfig& cfg, const DriveParams& p, Picture picture,
                               bool parallel)
{
    const int dim = full_dimension(cfg);
    Generator gen;
    gen.dim = dim;
    gen.apply = [cfg, p, picture, parallel, dim](double t, const Eigen::VectorXcd& psi,
                                                 Eigen::VectorXcd& out) {
        const RowContext ctx = make_row_context(cfg, t, p, picture);
        if (out.size() != dim) out.resize(dim);
        if (parallel) {
#pragma omp parallel for schedule(static)
            for (int i = 0; i < dim; ++i) out[i] = gather_row(ctx, psi, i);
        } else {
            for (int i = 0; i < dim; ++i) out[i] = gather_row(ctx, psi, i);
        }
    };
    return gen;
}

SymmetricProjection project_to_symmetric(const Eigen::VectorXcd& full, const SymmetricBasis& basis,
                                         int phonon_cutoff)
{
    SymmetricProjection proj;
    proj.coeffs.resize(basis.size());
    Eigen::VectorXcd remainder = full;
    for (int k = 0; k < basis.size(); ++k) {
        const Eigen::VectorXcd sym = expand_to_computational(basis.n_ions(), basis.n_quanta(),
                                                             basis.state(k), phonon_cutoff);
        if (sym.size() != full.size())
            throw std::domain_error("project_to_symmetric: dimension mismatch");
        proj.coeffs[k] = sym.dot(full);
        remainder -= proj.coeffs[k] * sym;
    }
    proj.residual = remainder.norm();
    return proj;
}

int excitation_of_index(const FullSpaceConfig& cfg, int index)
{
    const int p3 = pow3(cfg.n_ions);
    int exc = index / p3;  // phonons
    int rem = index % p3;
    for (int q = 0; q < cfg.n_ions; ++q, rem /= 3)
        if (rem % 3 != 0) ++exc;
    return exc;
}

double check_excitation_conservation(const std::vector<Eigen::VectorXcd>& states,
                                     const FullSpaceConfig& cfg, bool normalized)
{
    if (states.empty()) throw std::domain_error("check_excitation_conservation: empty series");
    const int dim = full_dimension(cfg);
    std::vector<double> exc(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) exc[static_cast<size_t>(i)] = excitation_of_index(cfg, i);

    auto expectation = [&](const Eigen::VectorXcd& psi) {
        double num = 0.0;
        for (int i = 0; i < dim; ++i) num += exc[static_cast<size_t>(i)] * std::norm(psi[i]);
        if (!normalized) return num;
        const double n2 = psi.squaredNorm();
        return n2 > 0.0 ? num / n2 : 0.0;
    };

    const double ref = expectation(states.front());
    double worst = 0.0;
    for (const auto& psi : states) worst = std::max(worst, std::abs(expectation(psi) - ref));
    return worst;
}

double guard_level_population(const Eigen::VectorXcd& state, const FullSpaceConfig& cfg)
{
    const int p3 = pow3(cfg.n_ions);
    const int top = cfg.phonon_cutoff;
    double pop = 0.0;
    for (int i = top * p3; i < (top + 1) * p3; ++i) pop += std::norm(state[i]);
    return pop;
}

}  // namespace dicke
