// Scenario runner for the collective-STIRAP Dicke-state simulator: traces,
// parameter scans, adiabatic spectra, brute-force cross-checks and
// experimental estimates, driven by a JSON config.

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dicke/darkstate.hpp"
#include "dicke/estimates.hpp"
#include "dicke/io.hpp"
#include "dicke/oracle.hpp"
#include "dicke/parallel.hpp"
#include "dicke/propagator.hpp"
#include "dicke/scan.hpp"
#include "dicke/spectrum.hpp"
#include "dicke/version.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace dicke;

namespace {

constexpr int kExitPhysics = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PhysicsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config must be a JSON object");
    return cfg;
}

template <typename T>
T field(const json& cfg, const std::string& key, T fallback)
{
    if (!cfg.contains(key)) return fallback;
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError("config field '" + key + "' has the wrong type");
    }
}

template <typename T>
T required_field(const json& cfg, const std::string& key)
{
    if (!cfg.contains(key)) throw UsageError("config field '" + key + "' is required");
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError("config field '" + key + "' has the wrong type");
    }
}

DriveParams drive_from(const json& cfg)
{
    DriveParams p;
    p.omega0 = field<double>(cfg, "omega0T", 50.0);
    p.delta = field<double>(cfg, "deltaT", 0.0);
    p.gamma = field<double>(cfg, "gammaT", 0.0);
    p.tau = field<double>(cfg, "tau_over_T", -0.6);
    if (p.omega0 < 0.0 || p.gamma < 0.0) throw UsageError("omega0T and gammaT must be >= 0");
    return p;
}

struct RunContext {
    json resolved;       // config echoed into every output
    fs::path out_dir;
    double tol = 1e-10;
    std::string command;

    std::vector<std::pair<std::string, std::string>> metadata(double window_halfwidth) const
    {
        return {{"generator", std::string("dicke ") + kVersion},
                {"command", command},
                {"config_hash", std::to_string(fnv1a64(resolved.dump()))},
                {"tol", format_g17(tol)},
                {"window", "[" + format_g17(-window_halfwidth) + ", " +
                               format_g17(window_halfwidth) + "]"}};
    }

    json summary_metadata(double window_halfwidth) const
    {
        json meta;
        for (const auto& [k, v] : metadata(window_halfwidth)) meta[k] = v;
        meta["config"] = resolved;
        return meta;
    }

    void write_summary(const std::string& name, json summary) const
    {
        std::ofstream out(out_dir / name);
        if (!out) throw PhysicsError("cannot write " + (out_dir / name).string());
        out << summary.dump(2) << "\n";
    }
};

RunContext make_context(const std::string& command, json cfg, const std::string& out_dir,
                        double tol_override, int threads)
{
    if (cfg.contains("command") && cfg.at("command").get<std::string>() != command)
        throw UsageError("config 'command' field does not match the subcommand");
    if (tol_override > 0.0) cfg["tol"] = tol_override;

    // The thread cap is an execution resource, not physics: it must not
    // reach the hashed config echo, or reruns with a different --threads
    // would look like different runs despite identical outputs.
    if (threads <= 0) threads = field<int>(cfg, "threads", 0);
    cfg.erase("threads");
    set_thread_count(threads);

    RunContext ctx;
    ctx.command = command;
    ctx.resolved = std::move(cfg);
    ctx.resolved["command"] = command;
    ctx.tol = field<double>(ctx.resolved, "tol", 1e-10);
    if (ctx.tol <= 0.0 || ctx.tol > 1e-2) throw UsageError("tol must lie in (0, 1e-2]");
    ctx.out_dir = out_dir;
    fs::create_directories(ctx.out_dir);
    return ctx;
}

std::pair<int, int> transfer_states(const json& cfg, int n_quanta)
{
    const std::string dir = field<std::string>(cfg, "direction", "auto");
    const double tau = field<double>(cfg, "tau_over_T", -0.6);
    bool reverse;
    if (dir == "auto")
        reverse = tau < 0.0;
    else if (dir == "reverse")
        reverse = true;
    else if (dir == "forward")
        reverse = false;
    else
        throw UsageError("direction must be auto, forward or reverse");
    return reverse ? std::pair{n_quanta, 0} : std::pair{0, n_quanta};
}

std::vector<double> grid_from(const json& cfg, const std::string& key, double fb_from,
                              double fb_to, int fb_steps)
{
    double from = fb_from, to = fb_to;
    int steps = fb_steps;
    if (cfg.contains(key)) {
        const json& g = cfg.at(key);
        from = required_field<double>(g, "from");
        to = required_field<double>(g, "to");
        steps = required_field<int>(g, "steps");
    }
    if (steps < 1 || to < from) throw UsageError("bad grid spec for " + key);
    if (steps == 1) return {from};
    std::vector<double> out(static_cast<size_t>(steps));
    for (int i = 0; i < steps; ++i)
        out[static_cast<size_t>(i)] = from + (to - from) * i / (steps - 1);
    return out;
}

// ---------------------------------------------------------------- trace ----

int cmd_trace(const RunContext& ctx)
{
    const json& cfg = ctx.resolved;
    const int N = required_field<int>(cfg, "n_ions");
    const int m = required_field<int>(cfg, "n_quanta");
    const DriveParams p = drive_from(cfg);
    const int n_report = field<int>(cfg, "grid_points", 601);
    const auto [init_mu, target_mu] = transfer_states(cfg, m);

    const SymmetricBasis basis(N, m);
    const double hw = default_window_halfwidth(p);
    const Trajectory traj = propagate(symmetric_unit_state(basis, init_mu, 0), N, m, p,
                                      {-hw, hw}, ctx.tol, n_report);
    const Eigen::VectorXcd target = symmetric_unit_state(basis, target_mu, 0);
    const auto fid = fidelity_series(traj, target);
    const auto dark = dark_trajectory(N, m, p, traj.times);
    const auto proj = adiabatic_projection(traj, dark);

    std::vector<std::string> cols = {"time", "norm", "fidelity", "fidelity_renormalized",
                                     "dark_projection"};
    for (int eps = 0; eps <= m; ++eps) cols.push_back("pop_eps" + std::to_string(eps));
    for (int i = 0; i < basis.size(); ++i)
        cols.push_back("pop_mu" + std::to_string(basis.state(i).mu) + "_eps" +
                       std::to_string(basis.state(i).eps));

    CsvWriter csv((ctx.out_dir / "trace_timeseries.csv").string(), ctx.metadata(hw), cols);
    for (size_t k = 0; k < traj.times.size(); ++k) {
        std::vector<double> row = {traj.times[k], traj.norms[k], fid[k],
                                   traj.norms[k] > 0.0 ? fid[k] / (traj.norms[k] * traj.norms[k])
                                                       : 0.0,
                                   proj[k]};
        for (double v : traj.manifold_pops[k]) row.push_back(v);
        for (int i = 0; i < basis.size(); ++i) row.push_back(std::norm(traj.amplitudes[k][i]));
        csv.row(row);
    }

    json summary;
    summary["final_fidelity"] = fid.back();
    summary["final_fidelity_renormalized"] =
        fid.back() / (traj.norms.back() * traj.norms.back());
    summary["dark_retention"] = traj.manifold_pops.back()[0];
    summary["min_norm"] = *std::min_element(traj.norms.begin(), traj.norms.end());
    summary["min_dark_projection"] = *std::min_element(proj.begin(), proj.end());
    summary["metadata"] = ctx.summary_metadata(hw);
    ctx.write_summary("trace_summary.json", summary);

    std::printf("trace: final fidelity %.6f, dark retention %.6f\n", fid.back(),
                traj.manifold_pops.back()[0]);
    return 0;
}

// ----------------------------------------------------------- delay scan ----

int cmd_delay_scan(const RunContext& ctx)
{
    const json& cfg = ctx.resolved;
    const int N = required_field<int>(cfg, "n_ions");
    const int m = required_field<int>(cfg, "n_quanta");
    DriveParams base = drive_from(cfg);

    const auto taus = grid_from(cfg, "tau_grid", -1.2, 1.2, 49);
    const std::string dir = field<std::string>(cfg, "direction", "forward");
    const auto [init_mu, target_mu] =
        dir == "reverse" ? std::pair{m, 0} : std::pair{0, m};

    const auto res = run_delay_scan(N, m, base, taus, init_mu, target_mu, ctx.tol);

    const double hw_max = 4.0 * base.pulse_width +
                          std::max(std::abs(taus.front()), std::abs(taus.back()));
    CsvWriter csv((ctx.out_dir / "delay_scan.csv").string(), ctx.metadata(hw_max),
                  {"tau_over_T", "fidelity_lossless", "fidelity_decay"});
    for (size_t i = 0; i < taus.size(); ++i)
        csv.row({taus[i], res.fidelity_lossless[i], res.fidelity_decay[i]});

    json summary;
    summary["n_points"] = taus.size();
    summary["max_fidelity_lossless"] =
        *std::max_element(res.fidelity_lossless.begin(), res.fidelity_lossless.end());
    summary["max_fidelity_decay"] =
        *std::max_element(res.fidelity_decay.begin(), res.fidelity_decay.end());
    summary["metadata"] = ctx.summary_metadata(hw_max);
    ctx.write_summary("delay_scan_summary.json", summary);
    std::printf("delay-scan: %zu points written\n", taus.size());
    return 0;
}

// -------------------------------------------------------------- contour ----

int cmd_contour(const RunContext& ctx)
{
    const json& cfg = ctx.resolved;
    const int N = required_field<int>(cfg, "n_ions");
    const int m = required_field<int>(cfg, "n_quanta");
    DriveParams base = drive_from(cfg);
    const auto [init_mu, target_mu] = transfer_states(cfg, m);

    const auto omegas = grid_from(cfg, "omega0_grid", 5.0, 50.0, 10);
    const auto deltas = grid_from(cfg, "delta_grid", 0.0, 30.0, 7);
    const int budget = field<int>(cfg, "max_points", 2048);
    const long points = static_cast<long>(omegas.size()) * static_cast<long>(deltas.size());
    if (points > budget)
        throw PhysicsError("contour grid has " + std::to_string(points) +
                           " points, over the budget of " + std::to_string(budget) +
                           "; coarsen the grids or raise 'max_points'");

    const auto res = run_contour(N, m, base, omegas, deltas, init_mu, target_mu, ctx.tol);

    const double hw = default_window_halfwidth(base);
    CsvWriter csv((ctx.out_dir / "contour.csv").string(), ctx.metadata(hw),
                  {"omega0T", "deltaT", "fidelity"});
    for (size_t i = 0; i < omegas.size(); ++i)
        for (size_t j = 0; j < deltas.size(); ++j)
            csv.row({omegas[i], deltas[j], res.fidelity[i * deltas.size() + j]});

    json summary;
    summary["n_points"] = points;
    summary["max_fidelity"] = *std::max_element(res.fidelity.begin(), res.fidelity.end());
    summary["metadata"] = ctx.summary_metadata(hw);
    ctx.write_summary("contour_summary.json", summary);
    std::printf("contour: %ld points written\n", points);
    return 0;
}

// ------------------------------------------------------------- spectrum ----

int cmd_spectrum(const RunContext& ctx)
{
    const json& cfg = ctx.resolved;
    const int N = required_field<int>(cfg, "n_ions");
    const int m = required_field<int>(cfg, "n_quanta");
    const DriveParams p = drive_from(cfg);
    const int n_report = field<int>(cfg, "grid_points", 201);
    const bool lossless = p.gamma == 0.0;

    const double hw = default_window_halfwidth(p);
    const auto times = uniform_grid(-hw, hw, n_report);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<std::string> cols = {"time"};
    for (int k = 0; k < 2 * m + 1; ++k) {
        cols.push_back("eig" + std::to_string(k) + "_re");
        cols.push_back("eig" + std::to_string(k) + "_im");
    }
    cols.insert(cols.end(), {"e1_re", "e1_im", "pairing_residual"});
    for (int k = 0; k < m; ++k) {
        cols.push_back("z" + std::to_string(k) + "_re");
        cols.push_back("z" + std::to_string(k) + "_im");
    }
    cols.push_back("gamma_root");

    CsvWriter csv((ctx.out_dir / "spectrum.csv").string(), ctx.metadata(hw), cols);
    std::vector<double> gamma_series(times.size(), nan);
    for (size_t k = 0; k < times.size(); ++k) {
        const auto chain = build_chain_matrix(N, m, times[k], p);
        SpectrumSample spec;
        bool identified = true;
        try {
            spec = instantaneous_spectrum(chain);
        } catch (const std::runtime_error&) {
            // Overdamped tails can squeeze an eigenvalue under the dark-state
            // threshold; keep the eigenvalues, drop the identification.
            identified = false;
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(chain.matrix, false);
            spec.eigenvalues = solver.eigenvalues();
            spec.e1 = std::complex<double>(nan, nan);
        }

        // Sorted by (re, im) so rows are stable across eigensolver orderings.
        std::vector<std::complex<double>> ev(spec.eigenvalues.data(),
                                             spec.eigenvalues.data() + spec.eigenvalues.size());
        std::sort(ev.begin(), ev.end(), [](auto a, auto b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });

        double pairing = 0.0;
        for (const auto e : ev) {
            if (std::abs(e) < 1e-10 * p.omega0) continue;
            double best = std::numeric_limits<double>::infinity();
            for (const auto f : ev) best = std::min(best, std::abs(e + f));
            pairing = std::max(pairing, best);
        }

        std::vector<double> row = {times[k]};
        for (const auto e : ev) {
            row.push_back(e.real());
            row.push_back(e.imag());
        }
        row.insert(row.end(), {spec.e1.real(), spec.e1.imag(), pairing});

        if (lossless && identified) {
            const auto z = z_roots(N, m, times[k], p);
            std::vector<std::complex<double>> zs(z.data(), z.data() + z.size());
            std::sort(zs.begin(), zs.end(), [](auto a, auto b) {
                return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
            });
            double smallest = std::numeric_limits<double>::infinity();
            for (const auto zv : zs) {
                row.push_back(zv.real());
                row.push_back(zv.imag());
                smallest = std::min(smallest, zv.real());
            }
            row.push_back(smallest);
            gamma_series[k] = smallest;
        } else {
            for (int i = 0; i < 2 * m + 1; ++i) row.push_back(nan);
        }
        csv.row(row);
    }

    json summary;
    if (lossless)
        summary["adiabaticity_area"] = adiabaticity_area(times, gamma_series, p.omega0);
    else
        summary["adiabaticity_area"] = nullptr;
    summary["metadata"] = ctx.summary_metadata(hw);
    ctx.write_summary("spectrum_summary.json", summary);
    std::printf("spectrum: %zu samples written\n", times.size());
    return 0;
}

// --------------------------------------------------------- oracle check ----

int cmd_oracle_check(const RunContext& ctx)
{
    const json& cfg = ctx.resolved;
    const int N = field<int>(cfg, "n_ions", 3);
    const int n_seeds = field<int>(cfg, "seeds", 5);
    const std::vector<int> quanta = field<std::vector<int>>(cfg, "quanta", {1, 2});

    json report;
    bool all_ok = true;
    double worst_amp = 0.0, worst_cons = 0.0, worst_guard = 0.0;

    std::mt19937 rng(field<unsigned>(cfg, "seed_base", 2024));
    std::uniform_real_distribution<double> w_dist(5.0, 25.0);
    std::uniform_real_distribution<double> tau_dist(0.3, 0.8);
    std::uniform_real_distribution<double> delta_dist(0.0, 3.0);
    std::uniform_real_distribution<double> gamma_dist(0.0, 1.0);
    std::bernoulli_distribution sign(0.5);

    for (int m : quanta) {
        if (m > N) throw UsageError("oracle-check: n_quanta exceeds n_ions");
        const int cutoff = m + 1;
        FullSpaceConfig fcfg;
        fcfg.n_ions = N;
        fcfg.phonon_cutoff = cutoff;
        const SymmetricBasis basis(N, m);

        for (int s = 0; s < n_seeds; ++s) {
            DriveParams p;
            p.omega0 = w_dist(rng);
            p.tau = (sign(rng) ? 1.0 : -1.0) * tau_dist(rng);
            p.delta = delta_dist(rng);
            p.gamma = gamma_dist(rng);

            const double hw = default_window_halfwidth(p);
            const auto times = uniform_grid(-hw, hw, 11);
            const auto reduced = propagate(symmetric_unit_state(basis, m, 0), N, m, p,
                                           {-hw, hw}, ctx.tol, 11);
            const Generator gen = full_space_generator(fcfg, p, Picture::transformed, true);
            IntegratorOptions opts;
            opts.tol = ctx.tol;
            const auto full = integrate_schrodinger(
                gen, expand_to_computational(N, m, {m, 0}, cutoff), -hw, hw, times, opts);

            for (size_t k = 0; k < times.size(); ++k) {
                const auto proj = project_to_symmetric(full[k], basis, cutoff);
                worst_amp = std::max(
                    worst_amp, (proj.coeffs - reduced.amplitudes[k]).cwiseAbs().maxCoeff());
            }
            worst_guard = std::max(worst_guard, guard_level_population(full.back(), fcfg));

            // Conservation only deviates through norm drift, so this run
            // needs the integrator at its tightest.
            DriveParams p0 = p;
            p0.gamma = 0.0;
            IntegratorOptions tight;
            tight.tol = std::min(ctx.tol, 1e-14);
            const auto cons_states = integrate_schrodinger(
                full_space_generator(fcfg, p0, Picture::transformed, true),
                expand_to_computational(N, m, {m, 0}, cutoff), -hw, hw, times, tight);
            worst_cons = std::max(worst_cons,
                                  check_excitation_conservation(cons_states, fcfg, false));
        }
    }
    report["reduction_max_amplitude_deviation"] = worst_amp;
    report["excitation_conservation_deviation"] = worst_cons;
    report["guard_level_population"] = worst_guard;
    const bool red_ok = worst_amp <= 1e-6 && worst_cons <= 1e-10 && worst_guard < 1e-8;
    report["reduction_equivalence_ok"] = red_ok;
    all_ok = all_ok && red_ok;

    // Lab vs transformed picture through the diagonal phase map.
    {
        FullSpaceConfig fcfg;
        fcfg.n_ions = 2;
        fcfg.phonon_cutoff = 2;
        fcfg.positions = {0.0, 1.7};
        fcfg.wave_number_a = 2.1;
        fcfg.wave_number_b = 1.3;
        fcfg.angle_a = 0.4;
        fcfg.angle_b = 0.9;
        fcfg.laser_phase_a = 0.3;
        fcfg.laser_phase_b = -1.1;
        DriveParams p;
        p.omega0 = 20.0;
        p.tau = -0.5;
        p.delta = 3.0;
        p.gamma = 0.5;

        const double hw = default_window_halfwidth(p);
        const auto times = uniform_grid(-hw, hw, 15);
        const Eigen::VectorXcd psi0 = expand_to_computational(2, 1, {1, 0}, 2);
        IntegratorOptions opts;
        opts.tol = std::min(ctx.tol, 1e-11);
        const auto transformed = integrate_schrodinger(
            full_space_generator(fcfg, p, Picture::transformed, false), psi0, -hw, hw, times,
            opts);
        const auto lab = integrate_schrodinger(
            full_space_generator(fcfg, p, Picture::lab, false),
            Eigen::VectorXcd(phase_transform_diagonal(fcfg, times.front(), p).cwiseProduct(psi0)),
            -hw, hw, times, opts);
        double worst = 0.0;
        for (size_t k = 0; k < times.size(); ++k) {
            const Eigen::VectorXcd mapped =
                phase_transform_diagonal(fcfg, times[k], p).cwiseProduct(transformed[k]);
            worst = std::max(worst, (lab[k] - mapped).cwiseAbs().maxCoeff());
        }
        report["picture_equivalence_deviation"] = worst;
        report["picture_equivalence_ok"] = worst <= 1e-8;
        all_ok = all_ok && worst <= 1e-8;

        // Final-state phases on the single-excitation components follow the
        // per-ion phase differences.
        DriveParams clean = p;
        clean.gamma = 0.0;
        clean.omega0 = 50.0;
        const auto lab2 = integrate_schrodinger(
            full_space_generator(fcfg, clean, Picture::lab, false),
            expand_to_computational(2, 1, {1, 0}, 2), -hw, hw, times, opts);
        const IonPhases ph = compute_phases(fcfg);
        std::vector<double> resid;
        for (int j = 0; j < 2; ++j) {
            std::vector<int> levels(2, 0);
            levels[static_cast<size_t>(j)] = 1;
            const std::complex<double> amp =
                lab2.back()[computational_index(levels, 0, 2)];
            resid.push_back(std::arg(
                amp * std::exp(std::complex<double>(
                          0.0, -(ph.phi_b[static_cast<size_t>(j)] -
                                 ph.phi_a[static_cast<size_t>(j)])))));
        }
        const double wrap = std::abs(
            std::arg(std::exp(std::complex<double>(0.0, resid[0] - resid[1]))));
        report["final_phase_pattern_deviation_rad"] = wrap;
        report["final_phase_pattern_ok"] = wrap < 1e-2;
        all_ok = all_ok && wrap < 1e-2;
    }

    report["all_ok"] = all_ok;
    report["metadata"] = ctx.summary_metadata(0.0);
    ctx.write_summary("oracle_check.json", report);
    std::printf("oracle-check: %s (amp dev %.2e, conservation %.2e)\n",
                all_ok ? "PASS" : "FAIL", worst_amp, worst_cons);
    if (!all_ok) throw PhysicsError("oracle cross-checks failed");
    return 0;
}

// ------------------------------------------------------------- estimate ----

int cmd_estimate(const RunContext& ctx)
{
    const json& cfg = ctx.resolved;
    if (!cfg.contains("physical")) throw UsageError("estimate needs a 'physical' block");
    const json& ph = cfg.at("physical");

    const double gamma = 2.0 * std::numbers::pi * required_field<double>(ph, "gamma_over_2pi_hz");
    const double trap = 2.0 * std::numbers::pi * required_field<double>(ph, "trap_freq_over_2pi_hz");
    const double omega0 = field<double>(ph, "omega0_fraction_of_trap", 0.1) * trap;
    const double x = field<double>(ph, "infidelity_x", 0.01);
    const double heating = field<double>(ph, "heating_rate_hz", 5.0);
    const int n_ions = field<int>(ph, "n_ions", 10);
    const double stage_factor = field<double>(ph, "stage_time_factor", 6.0);

    const double t_min = min_pulse_time(gamma, omega0, x);
    const auto heat = heating_events(n_ions, heating, stage_factor * t_min);

    json out;
    out["omega0_rad_per_s"] = omega0;
    out["min_pulse_time_s"] = t_min;
    out["transfer_efficiency"] = transfer_efficiency(omega0, t_min, gamma);
    out["total_time_s"] = stage_factor * t_min;
    out["heating_events"] = heat.events;
    out["heating_fidelity_estimate"] = heat.fidelity_estimate;
    out["rabi_exceeds_sideband_limit"] = rabi_exceeds_sideband_limit(omega0, trap);
    if (rabi_exceeds_sideband_limit(omega0, trap))
        std::fprintf(stderr,
                     "warning: omega0 above a tenth of the trap frequency; off-resonant "
                     "sideband excitation is not negligible there\n");
    out["metadata"] = ctx.summary_metadata(0.0);
    ctx.write_summary("estimate.json", out);
    std::printf("estimate: T >= %.3g s, efficiency %.4f, heating events %.3g\n", t_min,
                transfer_efficiency(omega0, t_min, gamma), heat.events);
    return 0;
}

// -------------------------------------------------------- spatial profile --

int cmd_spatial_profile(const RunContext& ctx)
{
    const json& cfg = ctx.resolved;
    const int N = field<int>(cfg, "n_ions", 3);
    const int m = field<int>(cfg, "n_quanta", 2);
    const double variation = field<double>(cfg, "intensity_variation", 0.1);
    if (variation < 0.0 || variation >= 1.0)
        throw UsageError("intensity_variation must lie in [0, 1)");
    const DriveParams p = drive_from(cfg);

    const int cutoff = m + 1;
    FullSpaceConfig fcfg;
    fcfg.n_ions = N;
    fcfg.phonon_cutoff = cutoff;

    // Gaussian beam: intensity center-to-edge ratio 1 - variation, so the
    // per-ion Rabi scale is (1-v)^(x^2 / 2 x_edge^2) on equally spaced ions.
    fcfg.coupling_scales.assign(static_cast<size_t>(N), 1.0);
    if (variation > 0.0 && N > 1) {
        for (int j = 0; j < N; ++j) {
            const double x = -1.0 + 2.0 * j / (N - 1);  // x_edge = 1
            fcfg.coupling_scales[static_cast<size_t>(j)] =
                std::pow(1.0 - variation, 0.5 * x * x);
        }
    }

    const SymmetricBasis basis(N, m);
    const double hw = default_window_halfwidth(p);
    const auto times = uniform_grid(-hw, hw, 2);
    IntegratorOptions opts;
    opts.tol = ctx.tol;

    auto final_fidelity = [&](const FullSpaceConfig& c) {
        const auto states = integrate_schrodinger(
            full_space_generator(c, p, Picture::transformed, true),
            expand_to_computational(N, m, {m, 0}, cutoff), -hw, hw, times, opts);
        const Eigen::VectorXcd target = expand_to_computational(N, m, {0, 0}, cutoff);
        return std::norm(target.dot(states.back()));
    };

    const double scaled = final_fidelity(fcfg);
    FullSpaceConfig uniform = fcfg;
    uniform.coupling_scales.assign(static_cast<size_t>(N), 1.0);
    const double flat = final_fidelity(uniform);

    json out;
    out["fidelity_uniform"] = flat;
    out["fidelity_scaled"] = scaled;
    out["degradation"] = flat - scaled;
    out["coupling_scales"] = fcfg.coupling_scales;
    out["metadata"] = ctx.summary_metadata(hw);
    ctx.write_summary("spatial_profile.json", out);
    std::printf("spatial-profile: uniform %.6f, scaled %.6f\n", flat, scaled);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Collective-STIRAP Dicke-state preparation simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    double tol_override = 0.0;
    int threads = 0;
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--tol", tol_override, "integrator tolerance override");
    app.add_option("--threads", threads, "worker thread cap for scans");

    const std::vector<std::pair<std::string, int (*)(const RunContext&)>> commands = {
        {"trace", cmd_trace},
        {"delay-scan", cmd_delay_scan},
        {"contour", cmd_contour},
        {"spectrum", cmd_spectrum},
        {"oracle-check", cmd_oracle_check},
        {"estimate", cmd_estimate},
        {"spatial-profile", cmd_spatial_profile},
    };
    for (const auto& [name, fn] : commands) app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;  // --help is not a usage error
    }

    try {
        const json cfg = load_config(config_path);
        for (const auto& [name, fn] : commands) {
            if (app.got_subcommand(name))
                return fn(make_context(name, cfg, out_dir, tol_override, threads));
        }
        throw UsageError("no subcommand selected");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitPhysics;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPhysics;
    }
}
