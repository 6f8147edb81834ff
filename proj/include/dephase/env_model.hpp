#pragma once

namespace dephase {

// Bosonic dephasing bath with a power-law spectral density under an
// exponential cutoff,
//
//   I(w) = (alpha/4) * w^n * exp(-w/omega_c),
//
// held at temperature T in units with hbar = k_B = 1. T = 0 selects the
// vacuum branch explicitly; no limits are taken at runtime.
struct EnvironmentSpec {
    double alpha = 0.25;       // dimensionless coupling strength, > 0
    double omega_c = 1.0;      // cutoff frequency, > 0
    double ohmicity_n = 1.0;   // spectral exponent, > 0 (n = 1 is Ohmic)
    double temperature = 0.0;  // >= 0

    void validate() const;  // throws std::invalid_argument on a bad field

    static EnvironmentSpec ohmic(double alpha, double omega_c, double temperature);
    // Convenience for the usual parametrization by the ratio omega_c/T.
    static EnvironmentSpec ohmic_ratio(double alpha, double omega_c, double omega_c_over_temperature);
};

/// I(w) evaluated at w >= 0; exactly 0 at w = 0.
double spectral_density(const EnvironmentSpec& env, double omega);

/// coth(w/2T) for w > 0; exactly 1 at T = 0. Uses the series
/// 2T/w + w/6T below w/2T = 1e-8 where the direct form loses precision.
double thermal_factor(const EnvironmentSpec& env, double omega);

/// Bose occupation 1/(exp(w/T) - 1) for w > 0; 0 at T = 0.
/// Satisfies 2*bose_occupation + 1 == thermal_factor identically.
double bose_occupation(const EnvironmentSpec& env, double omega);

namespace detail {
// Same as thermal_factor but parametrized by a bare temperature.
double coth_half_ratio(double omega, double temperature);
double bose_mean(double omega, double temperature);
}  // namespace detail

}  // namespace dephase
