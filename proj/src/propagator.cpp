#include "dicke/propagator.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace dicke {

namespace {

using Vec = Eigen::VectorXcd;

// Dormand-Prince 5(4) tableau (FSAL) with the classic quartic interpolant.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct DenseSegment {
    double t0, h;
    Vec r1, r2, r3, r4, r5;

    Vec eval(double t) const
    {
        const double s = (t - t0) / h;
        const double s1 = 1.0 - s;
        return r1 + s * (r2 + s1 * (r3 + s * (r4 + s1 * r5)));
    }
};

}  // namespace

std::vector<Eigen::VectorXcd> integrate_schrodinger(const Generator& gen,
                                                    const Eigen::VectorXcd& psi0, double t_start,
                                                    double t_end,
                                                    const std::vector<double>& report_times,
                                                    const IntegratorOptions& opts)
{
    if (t_end <= t_start) throw std::domain_error("integrate_schrodinger: empty window");
    if (psi0.size() != gen.dim)
        throw std::domain_error("integrate_schrodinger: state dimension mismatch");
    for (size_t i = 0; i < report_times.size(); ++i) {
        const bool inside = report_times[i] >= t_start - 1e-12 && report_times[i] <= t_end + 1e-12;
        if (!inside || (i > 0 && report_times[i] < report_times[i - 1]))
            throw std::domain_error("integrate_schrodinger: report grid not ascending in window");
    }

    const std::complex<double> minus_i(0.0, -1.0);
    Vec scratch(gen.dim);
    auto rhs = [&](double t, const Vec& y, Vec& dy) {
        gen.apply(t, y, scratch);
        dy = minus_i * scratch;
    };

    std::vector<Vec> out;
    out.reserve(report_times.size());
    size_t next_report = 0;
    auto emit_through = [&](const DenseSegment& seg, double seg_end) {
        while (next_report < report_times.size() && report_times[next_report] <= seg_end + 1e-14) {
            out.push_back(seg.eval(std::min(report_times[next_report], seg_end)));
            ++next_report;
        }
    };

    double t = t_start;
    Vec y = psi0;
    Vec k1(gen.dim), k2(gen.dim), k3(gen.dim), k4(gen.dim), k5(gen.dim), k6(gen.dim), k7(gen.dim);
    Vec ytmp(gen.dim), ynew(gen.dim), yerr(gen.dim);
    rhs(t, y, k1);

    // Report samples sitting exactly on t_start before the first step.
    while (next_report < report_times.size() && report_times[next_report] <= t + 1e-14) {
        out.push_back(y);
        ++next_report;
    }

    const double tol = opts.tol;
    double h = opts.initial_step > 0.0 ? opts.initial_step
                                       : std::min(1e-3 * (t_end - t_start), 1e-2);
    const double h_min = 1e-14 * (t_end - t_start);
    long rejects_in_a_row = 0;

    for (long step = 0; step < opts.max_steps && t < t_end; ++step) {
        h = std::min(h, t_end - t);

        ytmp = y + h * (a21 * k1);
        rhs(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, ynew, k7);  // FSAL stage

        yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double err = 0.0;
        for (int i = 0; i < gen.dim; ++i) {
            const double sc = tol + tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = std::abs(yerr[i]) / sc;
            err += r * r;
        }
        err = std::sqrt(err / gen.dim);

        if (err <= 1.0) {
            DenseSegment seg;
            seg.t0 = t;
            seg.h = h;
            seg.r1 = y;
            seg.r2 = ynew - y;
            seg.r3 = h * k1 - seg.r2;
            seg.r4 = seg.r2 - h * k7 - seg.r3;
            seg.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            emit_through(seg, t + h);

            t += h;
            y.swap(ynew);
            k1.swap(k7);
            rejects_in_a_row = 0;
            const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            if (++rejects_in_a_row > 60)
                throw std::runtime_error("integrate_schrodinger: local tolerance not met");
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (h < h_min)
                throw std::runtime_error("integrate_schrodinger: step size underflow (stiff?)");
        }
    }
    if (t < t_end)
        throw std::runtime_error("integrate_schrodinger: step budget exhausted");

    // Anything left on the grid sits at t_end within rounding.
    while (next_report < report_times.size()) {
        out.push_back(y);
        ++next_report;
    }
    return out;
}

double default_window_halfwidth(const DriveParams& p)
{
    return 4.0 * p.pulse_width + std::abs(p.tau);
}

std::vector<double> uniform_grid(double a, double b, int n)
{
    if (n < 2) throw std::domain_error("uniform_grid: need at least two points");
    std::vector<double> g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<size_t>(i)] = a + (b - a) * static_cast<double>(i) / (n - 1);
    g.back() = b;
    return g;
}

Eigen::VectorXcd symmetric_unit_state(const SymmetricBasis& basis, int mu, int eps)
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.size());
    v[basis.index_of(mu, eps)] = 1.0;
    return v;
}

Trajectory propagate(const Eigen::VectorXcd& initial, int n_ions, int n_quanta,
                     const DriveParams& p, std::pair<double, double> window, double tol,
                     int n_report)
{
    const SymmetricBasis basis(n_ions, n_quanta);
    if (initial.size() != basis.size())
        throw std::domain_error("propagate: initial vector does not match the symmetric basis");

    Generator gen;
    gen.dim = basis.size();
    Eigen::MatrixXcd h_work;
    gen.apply = [&basis, &p, &h_work](double t, const Vec& psi, Vec& out) {
        h_work = build_symmetric_hamiltonian(basis, t, p).matrix;
        out.noalias() = h_work * psi;
    };

    Trajectory traj;
    traj.n_ions = n_ions;
    traj.n_quanta = n_quanta;
    traj.times = uniform_grid(window.first, window.second, n_report);

    IntegratorOptions opts;
    opts.tol = tol;
    traj.amplitudes = integrate_schrodinger(gen, initial, window.first, window.second, traj.times, opts);

    traj.norms.resize(traj.times.size());
    traj.manifold_pops.assign(traj.times.size(),
                              std::vector<double>(static_cast<size_t>(n_quanta + 1), 0.0));
    for (size_t k = 0; k < traj.times.size(); ++k) {
        traj.norms[k] = traj.amplitudes[k].norm();
        for (int i = 0; i < basis.size(); ++i) {
            const int eps = basis.state(i).eps;
            traj.manifold_pops[k][static_cast<size_t>(eps)] += std::norm(traj.amplitudes[k][i]);
        }
    }
    return traj;
}

std::vector<double> fidelity_series(const Trajectory& traj, const Eigen::VectorXcd& target)
{
    if (traj.amplitudes.empty() || target.size() != traj.amplitudes.front().size())
        throw std::domain_error("fidelity_series: basis mismatch");
    std::vector<double> f(traj.times.size());
    for (size_t k = 0; k < traj.times.size(); ++k)
        f[k] = std::norm(target.dot(traj.amplitudes[k]));
    return f;
}

std::vector<std::vector<double>> manifold_populations(const Trajectory& traj)
{
    const SymmetricBasis basis(traj.n_ions, traj.n_quanta);
    std::vector<std::vector<double>> pops(
        traj.times.size(), std::vector<double>(static_cast<size_t>(traj.n_quanta + 1), 0.0));
    for (size_t k = 0; k < traj.times.size(); ++k)
        for (int i = 0; i < basis.size(); ++i)
            pops[k][static_cast<size_t>(basis.state(i).eps)] += std::norm(traj.amplitudes[k][i]);
    return pops;
}

std::vector<double> adiabatic_projection(const Trajectory& traj,
                                         const std::vector<DarkVector>& dark_ref)
{
    if (dark_ref.size() != traj.times.size())
        throw std::domain_error("adiabatic_projection: grids not aligned");
    const SymmetricBasis basis(traj.n_ions, traj.n_quanta);
    std::vector<double> proj(traj.times.size());
    for (size_t k = 0; k < traj.times.size(); ++k) {
        std::complex<double> overlap = 0.0;
        for (int mu = 0; mu <= traj.n_quanta; ++mu)
            overlap += dark_ref[k].coeffs[mu] * traj.amplitudes[k][basis.index_of(mu, 0)];
        proj[k] = std::norm(overlap);
    }
    return proj;
}

PreparationResult prepare_dicke(int n_ions, int n_quanta, const DriveParams& p_forward,
                                const DriveParams& p_reverse, double tol, int n_report)
{
    if (n_quanta < 1 || n_quanta > n_ions)
        throw std::domain_error("prepare_dicke: need 1 <= m <= N");
    if (p_forward.tau <= 0.0)
        throw std::domain_error("prepare_dicke: stage 1 needs tau > 0 (pulse a first)");
    if (p_reverse.tau >= 0.0)
        throw std::domain_error("prepare_dicke: stage 2 needs tau < 0 (pulse b first)");

    PreparationResult res;
    const int m = n_quanta;

    // Stage 1: only the m addressed ions take part, an N' = m problem taking
    // |1...1>|0> = (mu=0, eps=0) into the m-phonon Fock state (mu=m, eps=0).
    {
        const SymmetricBasis basis(m, m);
        const double hw = default_window_halfwidth(p_forward);
        res.stage1 = propagate(symmetric_unit_state(basis, 0, 0), m, m, p_forward, {-hw, hw}, tol,
                               n_report);
        res.stage1_fidelity =
            fidelity_series(res.stage1, symmetric_unit_state(basis, m, 0)).back();
    }

    // Stage 2: all N ions, |0...0>|m> = (mu=m, eps=0) into the Dicke state
    // (mu=0, eps=0). The initial state is the exact Fock state, which the
    // dark state matches at the window edge.
    {
        const SymmetricBasis basis(n_ions, m);
        const double hw = default_window_halfwidth(p_reverse);
        res.stage2 = propagate(symmetric_unit_state(basis, m, 0), n_ions, m, p_reverse, {-hw, hw},
                               tol, n_report);
        res.stage2_fidelity =
            fidelity_series(res.stage2, symmetric_unit_state(basis, 0, 0)).back();
    }

    res.final_fidelity = res.stage1_fidelity * res.stage2_fidelity;
    res.dark_retention = res.stage1.manifold_pops.back()[0] * res.stage2.manifold_pops.back()[0];
    return res;
}

}  // namespace dicke
