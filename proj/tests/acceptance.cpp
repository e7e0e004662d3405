// Acceptance suite: end-to-end checks of the simulator, one criterion per
// entry, each with pinned tolerances and a runtime budget. Run with no
// arguments for the full list or with an index (1..9) for a single entry.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dicke/darkstate.hpp"
#include "dicke/estimates.hpp"
#include "dicke/oracle.hpp"
#include "dicke/propagator.hpp"
#include "dicke/scan.hpp"
#include "dicke/spectrum.hpp"

using namespace dicke;
using cxd = std::complex<double>;

namespace {

struct Check {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what)
    {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
    }
    void note(const std::string& what) { notes.push_back("       " + what); }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// --- 1: heavy-loss example run -------------------------------------------

Check criterion_1()
{
    Check c;
    DriveParams p;
    p.omega0 = 50.0;
    p.gamma = 2.0;
    p.delta = 0.0;
    p.tau = -0.6;
    const auto s = run_transfer(5, 2, p, 2, 0, 1e-10);
    c.note(fmt("dark retention %.6f, fidelity %.6f", s.dark_retention, s.fidelity));
    c.require(s.dark_retention >= 0.975 && s.dark_retention <= 0.995,
              "final dark-manifold retention in [0.975, 0.995]");
    c.require(std::abs(s.fidelity - s.dark_retention) <= 0.01,
              "final fidelity within 0.01 of the retention");
    return c;
}

// --- 2: dimension counts ---------------------------------------------------

Check criterion_2()
{
    Check c;
    c.require(symmetric_dimension(5, 2) == 6, "symmetric dimension (5,2) = 6");
    c.require(full_coupled_dimension(5, 2) == 51, "full coupled dimension (5,2) = 51");

    bool all = true;
    for (int N = 1; N <= 6 && all; ++N) {
        for (int m = 0; m <= std::min(N, 3) && all; ++m) {
            int pairs = 0;
            for (int mu = 0; mu <= m; ++mu)
                for (int eps = 0; mu + eps <= m; ++eps) ++pairs;
            all = all && symmetric_dimension(N, m) == pairs;
            all = all && symmetric_dimension(N, m) == (m + 1) * (m + 2) / 2;

            long long strings = 1;
            for (int i = 0; i < N; ++i) strings *= 3;
            long long count = 0;
            for (long long s = 0; s < strings; ++s) {
                int internal = 0;
                long long rem = s;
                for (int q = 0; q < N; ++q, rem /= 3)
                    if (rem % 3 != 0) ++internal;
                if (internal <= m) ++count;  // the phonon number fills the rest
            }
            all = all && full_coupled_dimension(N, m) == count;
        }
    }
    c.require(all, "exhaustive enumeration agrees for N <= 6, m <= 3");
    return c;
}

// --- 3: dark-state residuals and uniqueness --------------------------------

Check criterion_3()
{
    Check c;
    std::mt19937 rng(20240917);
    std::uniform_int_distribution<int> n_dist(1, 10);
    std::uniform_real_distribution<double> log_ratio(-3.0, 3.0);
    std::uniform_real_distribution<double> delta_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> gamma_dist(0.0, 3.0);

    double worst_residual = 0.0;
    int bad_nullity = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int N = n_dist(rng);
        std::uniform_int_distribution<int> m_dist(1, std::min(N, 5));
        const int m = m_dist(rng);
        const double wb = std::pow(10.0, log_ratio(rng));
        DriveParams p;
        p.omega0 = std::max(1.0, wb);
        p.delta = delta_dist(rng);
        p.gamma = gamma_dist(rng);

        const SymmetricBasis basis(N, m);
        const auto h = build_symmetric_hamiltonian_at(basis, 1.0, wb, p);
        worst_residual = std::max(worst_residual, verify_dark(h, dark_coefficients(N, m, 1.0, wb)));
        if (dark_uniqueness(build_chain_matrix_at(N, m, 1.0, wb, p)) != 1) ++bad_nullity;
    }
    c.note(fmt("worst residual %.3e over 200 randomized cases", worst_residual));
    c.require(worst_residual <= 1e-10, "||H phi0|| / ||H||_F <= 1e-10");
    c.require(bad_nullity == 0, "chain null space one-dimensional in every case");
    return c;
}

// --- 4: brute-force oracle equivalence -------------------------------------

Check criterion_4()
{
    Check c;
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> w_dist(5.0, 25.0);
    std::uniform_real_distribution<double> tau_dist(0.3, 0.8);
    std::uniform_real_distribution<double> delta_dist(0.0, 3.0);
    std::uniform_real_distribution<double> gamma_dist(0.0, 1.0);
    std::bernoulli_distribution sign(0.5);

    double worst_amp = 0.0, worst_cons = 0.0;
    const int N = 3;
    for (int m : {1, 2}) {
        const int cutoff = m + 1;
        const SymmetricBasis basis(N, m);
        FullSpaceConfig cfg;
        cfg.n_ions = N;
        cfg.phonon_cutoff = cutoff;

        for (int seed = 0; seed < 5; ++seed) {
            DriveParams p;
            p.omega0 = w_dist(rng);
            p.tau = (sign(rng) ? 1.0 : -1.0) * tau_dist(rng);
            p.delta = delta_dist(rng);
            p.gamma = gamma_dist(rng);

            const double hw = default_window_halfwidth(p);
            const auto times = uniform_grid(-hw, hw, 11);
            const auto reduced = propagate(symmetric_unit_state(basis, m, 0), N, m, p, {-hw, hw},
                                           1e-11, 11);
            IntegratorOptions opts;
            opts.tol = 1e-11;
            const auto full = integrate_schrodinger(
                full_space_generator(cfg, p, Picture::transformed, true),
                expand_to_computational(N, m, {m, 0}, cutoff), -hw, hw, times, opts);
            for (size_t k = 0; k < times.size(); ++k) {
                const auto proj = project_to_symmetric(full[k], basis, cutoff);
                worst_amp = std::max(worst_amp,
                                     (proj.coeffs - reduced.amplitudes[k]).cwiseAbs().maxCoeff());
            }

            DriveParams p0 = p;
            p0.gamma = 0.0;
            IntegratorOptions tight;
            tight.tol = 1e-14;
            const auto cons = integrate_schrodinger(
                full_space_generator(cfg, p0, Picture::transformed, true),
                expand_to_computational(N, m, {m, 0}, cutoff), -hw, hw, times, tight);
            worst_cons = std::max(worst_cons, check_excitation_conservation(cons, cfg, false));
        }
    }
    c.note(fmt("max amplitude deviation %.3e, conservation %.3e", worst_amp, worst_cons));
    c.require(worst_amp <= 1e-6, "reduced vs full propagation within 1e-6");
    c.require(worst_cons <= 1e-10, "excitation-number conservation within 1e-10");

    // Lab vs transformed picture through U(t), uneven chain.
    FullSpaceConfig cfg;
    cfg.n_ions = 2;
    cfg.phonon_cutoff = 2;
    cfg.positions = {0.0, 1.7};
    cfg.wave_number_a = 2.1;
    cfg.wave_number_b = 1.3;
    cfg.angle_a = 0.4;
    cfg.angle_b = 0.9;
    cfg.laser_phase_a = 0.3;
    cfg.laser_phase_b = -1.1;
    DriveParams p;
    p.omega0 = 20.0;
    p.tau = -0.5;
    p.delta = 3.0;
    p.gamma = 0.5;
    const double hw = default_window_halfwidth(p);
    const auto times = uniform_grid(-hw, hw, 15);
    IntegratorOptions opts;
    opts.tol = 1e-11;
    const Eigen::VectorXcd psi0 = expand_to_computational(2, 1, {1, 0}, 2);
    const auto transformed = integrate_schrodinger(
        full_space_generator(cfg, p, Picture::transformed, false), psi0, -hw, hw, times, opts);
    const auto lab = integrate_schrodinger(
        full_space_generator(cfg, p, Picture::lab, false),
        Eigen::VectorXcd(phase_transform_diagonal(cfg, times.front(), p).cwiseProduct(psi0)), -hw,
        hw, times, opts);
    double worst_pic = 0.0;
    for (size_t k = 0; k < times.size(); ++k) {
        const Eigen::VectorXcd mapped =
            phase_transform_diagonal(cfg, times[k], p).cwiseProduct(transformed[k]);
        worst_pic = std::max(worst_pic, (lab[k] - mapped).cwiseAbs().maxCoeff());
    }
    c.note(fmt("picture agreement deviation %.3e", worst_pic));
    c.require(worst_pic <= 1e-8, "lab and transformed pictures agree through U(t)");
    return c;
}

// --- 5: delay-scan phenomenology -------------------------------------------

Check criterion_5()
{
    Check c;
    DriveParams base;
    base.omega0 = 50.0;
    base.gamma = 2.0;

    std::vector<double> plateau;
    for (int i = 0; i <= 8; ++i) plateau.push_back(0.40 + 0.05 * i);
    const auto scan = run_delay_scan(5, 2, base, plateau, 0, 2, 1e-9);

    double mean = 0.0, lo = 1.0, hi = 0.0;
    for (double f : scan.fidelity_decay) {
        mean += f;
        lo = std::min(lo, f);
        hi = std::max(hi, f);
    }
    mean /= static_cast<double>(plateau.size());
    c.note(fmt("plateau mean %.4f, spread %.4f (min %.4f)", mean, hi - lo, lo));
    c.require(mean >= 0.95, "mean fidelity over tau in [0.4T, 0.8T] >= 0.95 at gammaT = 2");
    c.require(hi - lo < 0.02, "plateau variation < 2% at gammaT = 2");

    DriveParams intuitive = base;
    intuitive.tau = -0.6;
    const double f_int = run_transfer(5, 2, intuitive, 0, 2, 1e-9).fidelity;
    c.note(fmt("intuitive-ordering fidelity %.4f", f_int));
    c.require(f_int < 0.5, "intuitive ordering collapses under decay");

    DriveParams detuned;
    detuned.omega0 = 50.0;
    detuned.delta = 30.0;
    std::vector<double> taus;
    for (int i = 0; i <= 5; ++i) taus.push_back(0.4 + 0.1 * i);
    double worst_asym = 0.0;
    for (double tau : taus) {
        DriveParams qp = detuned;
        qp.tau = tau;
        DriveParams qm = detuned;
        qm.tau = -tau;
        const double fp = run_transfer(5, 2, qp, 0, 2, 1e-9).fidelity;
        const double fm = run_transfer(5, 2, qm, 0, 2, 1e-9).fidelity;
        worst_asym = std::max(worst_asym, std::abs(fp - fm));
    }
    c.note(fmt("max |F(tau) - F(-tau)| = %.4f at deltaT = 30", worst_asym));
    c.require(worst_asym <= 0.05, "far-detuned lossless curve nearly symmetric in tau");
    return c;
}

// --- 6: adiabatic spectrum suite --------------------------------------------

Check criterion_6()
{
    Check c;

    // Sign-conjugate pairing on resonance.
    double worst_pair = 0.0;
    for (int m : {1, 2, 3, 5}) {
        DriveParams p;
        p.omega0 = 50.0;
        p.tau = -0.6;
        const int N = m + 3;
        for (double t : {-1.0, 0.0, 0.7}) {
            const auto spec = instantaneous_spectrum(build_chain_matrix(N, m, t, p));
            for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
                if (static_cast<int>(i) == spec.dark_index) continue;
                double best = std::numeric_limits<double>::infinity();
                for (Eigen::Index j = 0; j < spec.eigenvalues.size(); ++j)
                    if (j != i)
                        best = std::min(best,
                                        std::abs(spec.eigenvalues[i] + spec.eigenvalues[j]));
                worst_pair = std::max(worst_pair, best);
            }
        }
    }
    c.note(fmt("worst pairing residual %.3e", worst_pair));
    c.require(worst_pair <= 1e-10, "sign-conjugate eigenvalue pairs at delta = gamma = 0");

    // Every dense-solver eigenvalue is a root of the determinant recurrence.
    double worst_det = 0.0;
    for (int m = 1; m <= 5; ++m) {
        DriveParams p;
        p.omega0 = 20.0;
        p.tau = 0.4;
        p.delta = 2.0;
        const int N = m + 4;
        for (double t : {-0.5, 0.15, 0.9}) {
            const auto chain = build_chain_matrix(N, m, t, p);
            const auto [la, lb] = chain_couplings(N, m, t, p);
            const auto spec = instantaneous_spectrum(chain);
            const double scale = std::pow(std::max(1.0, chain.matrix.norm()), 2.0 * m + 1.0);
            for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
                worst_det = std::max(
                    worst_det,
                    std::abs(chain_determinant(m, spec.eigenvalues[i], p.delta_tilde(), la, lb)) /
                        scale);
        }
    }
    c.note(fmt("worst scaled determinant residual %.3e", worst_det));
    c.require(worst_det <= 1e-8, "characteristic-polynomial residual <= 1e-8 x scale, m <= 5");

    // z multiset does not care about drive strength or detuning.
    double worst_z = 0.0;
    for (double t : {-0.8, 0.2, 1.0}) {
        DriveParams p1;
        p1.omega0 = 50.0;
        p1.delta = 0.0;
        p1.tau = -0.6;
        DriveParams p2;
        p2.omega0 = 20.0;
        p2.delta = 10.0;
        p2.tau = -0.6;
        auto za = z_roots(5, 2, t, p1);
        auto zb = z_roots(5, 2, t, p2);
        std::vector<cxd> a(za.data(), za.data() + za.size());
        std::vector<cxd> b(zb.data(), zb.data() + zb.size());
        auto lt = [](cxd x, cxd y) {
            return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
        };
        std::sort(a.begin(), a.end(), lt);
        std::sort(b.begin(), b.end(), lt);
        for (size_t i = 0; i < a.size(); ++i)
            worst_z = std::max(worst_z, std::abs(a[i] - b[i]));
    }
    c.note(fmt("worst z multiset deviation %.3e", worst_z));
    c.require(worst_z <= 1e-8, "z roots invariant across (omega0T, deltaT) = (50,0) vs (20,10)");

    // Three-level closed form.
    double worst_m1 = 0.0;
    for (double t : {-0.8, -0.2, 0.0, 0.3, 1.1}) {
        DriveParams p;
        p.omega0 = 50.0;
        p.tau = -0.6;
        const auto chain = build_chain_matrix(5, 1, t, p);
        const double lb0 = std::abs(chain.matrix(0, 1));
        const double la1 = std::abs(chain.matrix(1, 2));
        const double e = std::sqrt(lb0 * lb0 + la1 * la1);
        const auto spec = instantaneous_spectrum(chain);
        std::vector<cxd> ev(spec.eigenvalues.data(), spec.eigenvalues.data() + 3);
        std::sort(ev.begin(), ev.end(), [](cxd x, cxd y) { return x.real() < y.real(); });
        worst_m1 = std::max({worst_m1, std::abs(ev[0] - cxd(-e, 0.0)), std::abs(ev[1]),
                             std::abs(ev[2] - cxd(e, 0.0))});
    }
    c.note(fmt("worst m=1 closed-form deviation %.3e", worst_m1));
    c.require(worst_m1 <= 1e-12, "m = 1 eigenvalues exact to 1e-12");
    return c;
}

// --- 7: engineering estimates ----------------------------------------------

Check criterion_7()
{
    Check c;
    const double gamma = 2.0 * std::numbers::pi * 22e6;
    const double omega0 = 2.0 * std::numbers::pi * 4e6 / 10.0;
    const double t_min = min_pulse_time(gamma, omega0, 0.01);
    c.note(fmt("min pulse time %.6g s", t_min));
    c.require(std::abs(t_min - 80e-6) <= 0.05 * 80e-6, "minimum pulse time 80 us within 5%");

    const auto heat = heating_events(10, 5.0, 6.0 * 80e-6);
    c.note(fmt("heating events %.17g", heat.events));
    c.require(std::abs(heat.events - 2.4e-2) <= 1e-12, "heating events 2.4e-2 exact to 1e-12");

    double worst_rt = 0.0;
    for (double x : {0.3, 0.1, 0.01, 1e-4})
        worst_rt = std::max(worst_rt,
                            std::abs(transfer_efficiency(omega0, min_pulse_time(gamma, omega0, x),
                                                         gamma) -
                                     (1.0 - x)));
    c.note(fmt("round-trip deviation %.3e", worst_rt));
    c.require(worst_rt <= 1e-12, "efficiency/timescale round trip exact to 1e-12");
    return c;
}

// --- 8: adiabatic-limit convergence -----------------------------------------

Check criterion_8()
{
    Check c;
    DriveParams p;
    p.tau = -0.6;
    std::vector<double> infid;
    for (double w : {10.0, 20.0, 50.0}) {
        DriveParams q = p;
        q.omega0 = w;
        infid.push_back(1.0 - run_transfer(5, 2, q, 2, 0, 1e-11).fidelity);
    }
    c.note(fmt("infidelity %.3e / %.3e / %.3e at omega0T = 10/20/50", infid[0], infid[1],
               infid[2]));
    c.require(infid[0] > infid[1] && infid[1] > infid[2],
              "infidelity decreases monotonically across omega0T in {10, 20, 50}");
    c.require(infid[2] < 1e-3, "infidelity < 1e-3 at omega0T = 50");
    if (!c.pass)
        c.note("known model property: two exactly degenerate zero modes at delta = 0 leave a "
               "drive-independent geometric leakage floor here (see the project notes)");
    return c;
}

// --- 9: no phase on the transfer state --------------------------------------

Check criterion_9()
{
    Check c;
    DriveParams p;
    p.omega0 = 50.0;
    p.tau = -0.6;
    const int N = 5, m = 2;
    const SymmetricBasis basis(N, m);
    const double hw = default_window_halfwidth(p);
    const auto traj =
        propagate(symmetric_unit_state(basis, m, 0), N, m, p, {-hw, hw}, 1e-11, 201);
    const auto dark = dark_trajectory(N, m, p, traj.times);
    cxd overlap = 0.0;
    for (int mu = 0; mu <= m; ++mu)
        overlap += dark.back().coeffs[mu] * traj.amplitudes.back()[basis.index_of(mu, 0)];
    const double phase = std::abs(std::arg(overlap));
    c.note(fmt("relative phase %.3e rad", phase));
    c.require(phase < 1e-3, "transfer state acquires no dynamical or geometric phase");
    return c;
}

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::function<Check()>, double>> criteria = {
        {criterion_1, 10.0}, {criterion_2, 1.0},  {criterion_3, 5.0},
        {criterion_4, 60.0}, {criterion_5, 120.0}, {criterion_6, 5.0},
        {criterion_7, 1.0},  {criterion_8, 30.0}, {criterion_9, 10.0},
    };

    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "usage: %s [1..%zu]\n", argv[0], criteria.size());
            return 2;
        }
    }

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<int>(i) + 1 != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Check c = criteria[i].first();
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > criteria[i].second) {
            c.pass = false;
            c.notes.push_back(fmt("  FAIL runtime %.1f s over the %.0f s budget", elapsed,
                                  criteria[i].second));
        }
        std::printf("[%s] criterion %zu (%.2f s)\n", c.pass ? "PASS" : "FAIL", i + 1, elapsed);
        for (const auto& line : c.notes) std::printf("%s\n", line.c_str());
        if (!c.pass) ++failures;
    }
    return failures;
}
