#include "dicke/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dicke {

double transfer_efficiency(double omega0, double pulse_width, double gamma)
{
    if (omega0 <= 0.0 || pulse_width <= 0.0 || gamma < 0.0)
        throw std::domain_error("transfer_efficiency: need positive omega0, T and gamma >= 0");
    if (gamma == 0.0) return 1.0;
    const double arg = std::sqrt(std::numbers::pi / 2.0) * omega0 * omega0 * pulse_width / gamma;
    return 1.0 - std::exp(-arg);
}

double min_pulse_time(double gamma, double omega0, double infidelity_x)
{
    if (gamma <= 0.0 || omega0 <= 0.0)
        throw std::domain_error("min_pulse_time: need positive gamma and omega0");
    if (!(infidelity_x > 0.0 && infidelity_x < 1.0))
        throw std::domain_error("min_pulse_time: infidelity must sit in (0, 1)");
    return std::sqrt(2.0 / std::numbers::pi) * gamma * std::log(1.0 / infidelity_x) /
           (omega0 * omega0);
}

HeatingEstimate heating_events(int n_ions, double heating_rate, double total_time)
{
    if (n_ions < 0 || heating_rate < 0.0 || total_time < 0.0)
        throw std::domain_error("heating_events: negative inputs");
    HeatingEstimate est;
    est.events = static_cast<double>(n_ions) * heating_rate * total_time;
    est.fidelity_estimate = std::clamp(1.0 - est.events, 0.0, 1.0);
    return est;
}

bool rabi_exceeds_sideband_limit(double omega0_phys, double trap_freq)
{
    return omega0_phys > trap_freq / 10.0;
}

}  // namespace dicke
