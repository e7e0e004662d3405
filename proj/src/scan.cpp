#include "dicke/scan.hpp"

#include <algorithm>
#include <stdexcept>

#include "dicke/parallel.hpp"

namespace dicke {

TransferSummary run_transfer(int n_ions, int n_quanta, const DriveParams& p, int init_mu,
                             int target_mu, double tol, int n_report)
{
    const SymmetricBasis basis(n_ions, n_quanta);
    const double hw = default_window_halfwidth(p);
    const Trajectory traj = propagate(symmetric_unit_state(basis, init_mu, 0), n_ions, n_quanta,
                                      p, {-hw, hw}, tol, n_report);
    TransferSummary out;
    out.fidelity = fidelity_series(traj, symmetric_unit_state(basis, target_mu, 0)).back();
    out.dark_retention = traj.manifold_pops.back()[0];
    out.min_norm = *std::min_element(traj.norms.begin(), traj.norms.end());
    return out;
}

DelayScanResult run_delay_scan(int n_ions, int n_quanta, DriveParams base,
                               const std::vector<double>& taus, int init_mu, int target_mu,
                               double tol, bool parallel)
{
    DelayScanResult res;
    res.taus = taus;
    res.fidelity_lossless.resize(taus.size());
    res.fidelity_decay.resize(taus.size());

    parallel_for_indexed(static_cast<int>(taus.size()), [&](int i) {
        DriveParams p = base;
        p.tau = taus[static_cast<size_t>(i)];
        DriveParams p0 = p;
        p0.gamma = 0.0;
        res.fidelity_lossless[static_cast<size_t>(i)] =
            run_transfer(n_ions, n_quanta, p0, init_mu, target_mu, tol).fidelity;
        res.fidelity_decay[static_cast<size_t>(i)] =
            run_transfer(n_ions, n_quanta, p, init_mu, target_mu, tol).fidelity;
    }, parallel);
    return res;
}

ContourResult run_contour(int n_ions, int n_quanta, DriveParams base,
                          const std::vector<double>& omega0s, const std::vector<double>& deltas,
                          int init_mu, int target_mu, double tol, bool parallel)
{
    if (omega0s.empty() || deltas.empty())
        throw std::domain_error("run_contour: empty parameter grid");

    ContourResult res;
    res.omega0s = omega0s;
    res.deltas = deltas;
    res.fidelity.resize(omega0s.size() * deltas.size());

    const int n = static_cast<int>(res.fidelity.size());
    const int nd = static_cast<int>(deltas.size());
    parallel_for_indexed(n, [&](int idx) {
        DriveParams p = base;
        p.omega0 = omega0s[static_cast<size_t>(idx / nd)];
        p.delta = deltas[static_cast<size_t>(idx % nd)];
        res.fidelity[static_cast<size_t>(idx)] =
            run_transfer(n_ions, n_quanta, p, init_mu, target_mu, tol).fidelity;
    }, parallel);
    return res;
}

}  // namespace dicke
