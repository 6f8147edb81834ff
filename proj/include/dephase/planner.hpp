#pragma once

#include <optional>
#include <stdexcept>

#include "dephase/decoherence.hpp"
#include "dephase/env_model.hpp"

namespace dephase {

enum class BathRegime { classical_high_t, quantum_low_t, crossover };

struct RegimeReport {
    BathRegime regime = BathRegime::crossover;
    double tau_c = 0.0;                // 1/omega_c
    std::optional<double> tau_beta;    // 1/T, absent at T = 0
    double t_dec_estimate = 0.0;
    bool order_of_magnitude_only = false;  // set at T = 0 where tau_beta is absent
};

// Reporting convention, not physics: classical below, quantum above.
inline constexpr double kClassicalRatioThreshold = 0.1;  // omega_c/T
inline constexpr double kQuantumRatioThreshold = 10.0;

/// Labels the bath by the omega_c/T ratio and attaches the order-of-magnitude
/// decoherence-time estimate tau_c/alpha (classical), tau_beta/alpha
/// (quantum), or the smaller of the two (crossover).
RegimeReport classify_regime(const EnvironmentSpec& env);

struct PlannerOptions {
    long n_limit = 1000000;            // give up beyond this many cycles
    long exhaustive_scan_limit = 256;  // linear re-scan window when the
                                       // coherence profile is non-monotone
};

// No cycle count up to n_limit reaches the target; carries the best value seen.
struct PlanInfeasibleError : std::runtime_error {
    PlanInfeasibleError(const std::string& what, double best, long best_n)
        : std::runtime_error(what), best_coherence(best), best_cycles(best_n) {}
    double best_coherence;
    long best_cycles;
};

/// Smallest N with exp(-Gamma_P(N, t/2N)) >= target_coherence. Exponential
/// bracketing plus bisection; when the sampled profile is non-monotone the
/// region below the found candidate is re-scanned linearly (up to
/// exhaustive_scan_limit) so the returned N is minimal within that window.
long min_cycles_for_target(const EnvironmentSpec& env, double t, double target_coherence,
                           const QuadratureConfig& cfg = {}, const PlannerOptions& opts = {});

}  // namespace dephase
