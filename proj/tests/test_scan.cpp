#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dicke/io.hpp"
#include "dicke/scan.hpp"

using namespace dicke;

TEST_CASE("parallel scans reproduce the serial reference bit for bit")
{
    DriveParams base;
    base.omega0 = 30.0;
    base.gamma = 1.0;

    const std::vector<double> taus = {-0.6, -0.3, 0.3, 0.45, 0.6, 0.75};
    const auto serial = run_delay_scan(5, 2, base, taus, 0, 2, 1e-9, false);
    const auto parallel = run_delay_scan(5, 2, base, taus, 0, 2, 1e-9, true);

    REQUIRE(serial.taus == parallel.taus);
    for (size_t i = 0; i < taus.size(); ++i) {
        CHECK(serial.fidelity_lossless[i] == parallel.fidelity_lossless[i]);
        CHECK(serial.fidelity_decay[i] == parallel.fidelity_decay[i]);
    }

    const std::vector<double> omegas = {20.0, 35.0, 50.0};
    const std::vector<double> deltas = {0.0, 10.0};
    const auto cs = run_contour(5, 2, base, omegas, deltas, 2, 0, 1e-9, false);
    const auto cp = run_contour(5, 2, base, omegas, deltas, 2, 0, 1e-9, true);
    REQUIRE(cs.fidelity.size() == 6);
    for (size_t i = 0; i < cs.fidelity.size(); ++i) CHECK(cs.fidelity[i] == cp.fidelity[i]);
}

TEST_CASE("single-point scans agree with a direct run")
{
    DriveParams base;
    base.omega0 = 50.0;
    base.gamma = 2.0;
    base.tau = -0.6;

    const auto direct = run_transfer(5, 2, base, 2, 0, 1e-10);
    const auto scan = run_delay_scan(5, 2, base, {-0.6}, 2, 0, 1e-10);
    CHECK(scan.fidelity_decay[0] == direct.fidelity);

    const auto contour = run_contour(5, 2, base, {50.0}, {0.0}, 2, 0, 1e-10);
    CHECK(contour.fidelity[0] == direct.fidelity);
}

TEST_CASE("counter-intuitive plateau without decay")
{
    DriveParams base;
    base.omega0 = 50.0;
    const std::vector<double> taus = {0.4, 0.5, 0.6, 0.7, 0.8};
    const auto res = run_delay_scan(5, 2, base, taus, 0, 2, 1e-10);

    double lo = 1.0, hi = 0.0;
    for (double f : res.fidelity_lossless) {
        lo = std::min(lo, f);
        hi = std::max(hi, f);
    }
    CHECK(lo > 0.95);
    CHECK(hi - lo < 0.02);
}

TEST_CASE("detuning costs fidelity at fixed drive")
{
    DriveParams base;
    base.omega0 = 50.0;
    base.gamma = 2.0;
    base.tau = -0.6;
    const auto res = run_contour(5, 2, base, {50.0}, {0.0, 30.0}, 2, 0, 1e-10);
    CHECK(res.fidelity[0] > res.fidelity[1]);
}

TEST_CASE("csv cells and hashing")
{
    CHECK(format_g17(0.1) == "0.10000000000000001");
    CHECK(format_g17(1.0) == "1");
    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") == 12638187200555641996ull);
    CHECK(fnv1a64("config") != fnv1a64("confih"));
}
