#ifndef DICKE_ESTIMATES_HPP
#define DICKE_ESTIMATES_HPP

namespace dicke {

/// Physical-unit inputs for the engineering estimates. Rates in rad/s,
/// heating in events per second per ion.
struct PhysicalParams {
    double gamma_phys = 0.0;
    double omega0_phys = 0.0;
    double trap_freq = 0.0;
    double heating_rate = 0.0;
    int n_ions = 1;
    double stage_time_factor = 6.0;  ///< protocol duration as a multiple of T
};

/// Population transferred through an overdamped passage:
/// 1 - exp(-sqrt(pi/2) omega0^2 T / gamma). An optimistic bound derived for
/// decay into the computational states; report it next to the simulated
/// fidelity, never instead of it.
double transfer_efficiency(double omega0, double pulse_width, double gamma);

/// Shortest pulse timescale reaching transfer efficiency 1 - x:
/// T = sqrt(2/pi) gamma ln(1/x) / omega0^2. Requires 0 < x < 1.
double min_pulse_time(double gamma, double omega0, double infidelity_x);

struct HeatingEstimate {
    double events = 0.0;
    double fidelity_estimate = 1.0;
};

/// Expected heating events n_ions * rate * total_time and the first-order
/// fidelity bound 1 - events (clamped to [0, 1]).
HeatingEstimate heating_events(int n_ions, double heating_rate, double total_time);

/// Drive strength beyond a tenth of the trap frequency risks off-resonant
/// sideband excitation; the CLI warns when this trips.
bool rabi_exceeds_sideband_limit(double omega0_phys, double trap_freq);

}  // namespace dicke

#endif
