#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dephase/env_model.hpp"
#include "dephase/kernels.hpp"

namespace dephase {

struct QuadratureConfig {
    double relative_tolerance = 1e-8;  // in (0, 1e-2]
    double omega_max_factor = 30.0;    // upper limit = factor * omega_c * max(1, n); >= 10
    long max_panels = 1L << 20;

    void validate() const;
};

struct DecoherenceResult {
    double gamma_total = 0.0;
    double gamma_vacuum = 0.0;
    double gamma_thermal = 0.0;
    double coherence = 1.0;  // exp(-gamma_total)
    double quadrature_error_estimate = 0.0;
};

// Panel cap reached before the tolerance was met; `partial` holds the best
// values computed so far together with the achieved error estimate.
struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, DecoherenceResult partial_result)
        : std::runtime_error(what), partial(partial_result) {}
    DecoherenceResult partial;
};

// Closed form used for the pulsed integrand. Both evaluate Gamma_P; the
// Dirichlet form is the production path, the interference form routes
// through |1 - f|^2 * xi_sq_norm and exists as an independent cross-check.
enum class PulsedForm { dirichlet, interference };

/// Gamma_0(t): integral of I(w) * 4 coth(w/2T) (1 - cos wt) / w^2, with the
/// vacuum (factor 1) and thermal (factor 2 n_bar) parts integrated
/// separately. Returns the exact zero result at t = 0.
DecoherenceResult gamma_unperturbed(const EnvironmentSpec& env, double t,
                                    const QuadratureConfig& cfg = {});

/// Gamma_P(N, dt): same spectral integral with eta_sq_norm in place of the
/// free kernel; the implicit evaluation time is 2*N*dt.
DecoherenceResult gamma_pulsed(const EnvironmentSpec& env, const PulseSequence& seq,
                               const QuadratureConfig& cfg = {},
                               PulsedForm form = PulsedForm::dirichlet);

struct PulseScanPoint {
    long cycles = 1;
    double delta_t = 0.0;
    double tau_c_over_dt = 0.0;  // 1 / (omega_c * delta_t)
    DecoherenceResult result;
    bool converged = true;  // false when the quadrature hit the panel cap
};

/// Divides the fixed interval t into N cycles (delta_t = t/2N) for each N in
/// n_list, in order. Quadrature failures are recorded per entry rather than
/// aborting the scan.
std::vector<PulseScanPoint> pulse_frequency_scan(const EnvironmentSpec& env, double t,
                                                 const std::vector<long>& n_list,
                                                 const QuadratureConfig& cfg = {});

struct CurvePoint {
    double t = 0.0;
    DecoherenceResult result;
    bool converged = true;
};

/// Gamma_0 evaluated on a strictly increasing time grid.
std::vector<CurvePoint> decoherence_curve(const EnvironmentSpec& env,
                                          const std::vector<double>& t_grid,
                                          const QuadratureConfig& cfg = {});

}  // namespace dephase
