// Timing comparison between the serial reference kernels and their OpenMP
// counterparts: the full-space Hamiltonian apply and the scan engine.

#include <chrono>
#include <cstdio>
#include <random>

#include "dicke/oracle.hpp"
#include "dicke/parallel.hpp"
#include "dicke/scan.hpp"

using namespace dicke;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double bench_apply(bool parallel, int repeats)
{
    FullSpaceConfig cfg;
    cfg.n_ions = 6;
    cfg.phonon_cutoff = 6;  // 5103 amplitudes
    DriveParams p;
    p.omega0 = 30.0;
    p.tau = -0.5;
    p.delta = 1.0;
    p.gamma = 0.5;

    const Generator gen = full_space_generator(cfg, p, Picture::lab, parallel);
    std::mt19937 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd psi(gen.dim), out(gen.dim);
    for (int i = 0; i < gen.dim; ++i) psi[i] = std::complex<double>(g(rng), g(rng));

    const auto t0 = clock_type::now();
    for (int r = 0; r < repeats; ++r) gen.apply(0.1 * r, psi, out);
    const double dt = seconds_since(t0);
    psi.swap(out);  // keep the optimizer honest
    return dt;
}

double bench_scan(bool parallel)
{
    DriveParams base;
    base.omega0 = 40.0;
    base.gamma = 1.5;
    std::vector<double> taus;
    for (int i = 0; i < 24; ++i) taus.push_back(-0.9 + 1.8 * i / 23.0);

    const auto t0 = clock_type::now();
    run_delay_scan(5, 2, base, taus, 0, 2, 1e-9, parallel);
    return seconds_since(t0);
}

}  // namespace

int main()
{
    std::printf("threads available: %d\n\n", hardware_threads());

    const int repeats = 400;
    const double serial_apply = bench_apply(false, repeats);
    const double parallel_apply = bench_apply(true, repeats);
    std::printf("full-space apply, dim 5103, %d repeats\n", repeats);
    std::printf("  serial   %8.3f s  (%7.1f applies/s)\n", serial_apply, repeats / serial_apply);
    std::printf("  openmp   %8.3f s  (%7.1f applies/s)  speedup %.2fx\n\n", parallel_apply,
                repeats / parallel_apply, serial_apply / parallel_apply);

    const double serial_scan = bench_scan(false);
    const double parallel_scan = bench_scan(true);
    std::printf("delay scan, 24 points x 2 loss settings\n");
    std::printf("  serial   %8.3f s\n", serial_scan);
    std::printf("  openmp   %8.3f s  speedup %.2fx\n", parallel_scan,
                serial_scan / parallel_scan);
    return 0;
}
