#ifndef DICKE_SCAN_HPP
#define DICKE_SCAN_HPP

#include <vector>

#include "dicke/propagator.hpp"

namespace dicke {

/// Endpoint summary of a single lower-manifold transfer run.
struct TransferSummary {
    double fidelity = 0.0;       ///< final |<target|psi>|^2, decay included
    double dark_retention = 0.0; ///< final population of the eps = 0 manifold
    double min_norm = 1.0;       ///< smallest state norm along the run
};

/// Propagates (init_mu, eps=0) -> (target_mu, eps=0) across the default
/// window and reports endpoint figures. The workhorse behind all scans.
TransferSummary run_transfer(int n_ions, int n_quanta, const DriveParams& p, int init_mu,
                             int target_mu, double tol, int n_report = 201);

/// Fidelity vs pulse delay, with and without decay. Points run concurrently;
/// row order follows the tau grid regardless of the execution order.
struct DelayScanResult {
    std::vector<double> taus;
    std::vector<double> fidelity_lossless;
    std::vector<double> fidelity_decay;
};

DelayScanResult run_delay_scan(int n_ions, int n_quanta, DriveParams base,
                               const std::vector<double>& taus, int init_mu, int target_mu,
                               double tol, bool parallel = true);

/// Fidelity over an (omega0, delta) grid, row-major with delta fastest.
struct ContourResult {
    std::vector<double> omega0s;
    std::vector<double> deltas;
    std::vector<double> fidelity;
};

ContourResult run_contour(int n_ions, int n_quanta, DriveParams base,
                          const std::vector<double>& omega0s, const std::vector<double>& deltas,
                          int init_mu, int target_mu, double tol, bool parallel = true);

}  // namespace dicke

#endif
