#pragma once

#include <iosfwd>

#include "dephase/config.hpp"

namespace dephase {

// Process exit codes shared by the library entry points and the CLI.
enum ExitCode {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitConfigError = 2,
    kExitNumericalFailure = 3,
    kExitPlanInfeasible = 4,
};

/// Gamma_0 over the configured time grid as CSV (or JSON): columns
/// t, omega_c_t, gamma_total, gamma_vacuum, gamma_thermal, coherence, quad_err.
int run_curve(const ExperimentConfig& config, std::ostream& out, std::ostream& diag);

/// Pulse-frequency scan at fixed t: N, delta_t, tau_c_over_dt, gamma_total,
/// coherence, quad_err, with the unperturbed reference in a comment line.
int run_pulse_scan(const ExperimentConfig& config, std::ostream& out, std::ostream& diag);

/// Three-way agreement suite (quadrature vs mode-sum vs Fock, plus the
/// Heisenberg single-cycle route); prints one PASS/FAIL line per check.
int run_verify(const ExperimentConfig& config, std::ostream& report);

/// Regime report plus minimal cycle count for the target coherence, as JSON.
int run_plan(const ExperimentConfig& config, std::ostream& out);

/// Dispatches on config.task.
int run_task(const ExperimentConfig& config, std::ostream& out, std::ostream& diag);

}  // namespace dephase
