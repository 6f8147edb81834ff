#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dephase/env_model.hpp"
#include "dephase/kernels.hpp"

namespace dephase {

// Discrete bath {(w_k, |g_k|^2)} for the exact mode-sum route.
struct BathMode {
    double omega = 0.0;
    double g_sq = 0.0;  // |g_k|^2
};

struct ModeGrid {
    std::vector<BathMode> modes;

    void validate() const;  // nonempty, omega strictly increasing and > 0

    /// Uniform midpoint discretization of env's spectral density on
    /// [0, omega_max]: w_k = (k + 1/2) dw, |g_k|^2 = I(w_k) dw.
    static ModeGrid uniform(const EnvironmentSpec& env, double omega_max, std::size_t count);
};

/// Gamma as a finite sum: sum_k (4 g_sq_k / w_k^2) * kernel/2 * coth(w_k/2T),
/// with the free kernel for a duration argument.
double mode_sum_gamma(const ModeGrid& grid, double temperature, double t);
/// Same with the pulsed kernel for a sequence argument.
double mode_sum_gamma(const ModeGrid& grid, double temperature, const PulseSequence& seq);

// Exactly simulated bath for the truncated-Fock-space oracle.
struct FockMode {
    double omega = 0.0;
    std::complex<double> g;  // complex coupling
    int cutoff = 2;          // Fock levels kept for this mode, >= 2
};

struct FockBath {
    std::vector<FockMode> modes;
    double temperature = 0.0;
    long max_dimension = 4096;  // cap on 2 * prod(cutoffs)

    void validate() const;
};

// Truncation cannot represent the evolved state accurately enough
// (thermal tail or displacement tail exceeds its budget).
struct FockTruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested Hilbert space exceeds the configured dimension cap.
struct FockDimensionError : std::length_error {
    using std::length_error::length_error;
};

struct FockEvolution {
    std::complex<double> coherence;     // <0| Tr_B rho |1> at the final time
    double trace_error = 0.0;           // max |Tr rho - 1| over checkpoints
    double population_drift = 0.0;      // max |rho_ii - 1/2| over checkpoints
    double hermiticity_error = 0.0;     // max |rho_10 - rho_01^dagger| entry
};

/// Evolves rho(0) = |+><+| (x) prod_k rho_th exactly in the truncated space:
/// each free segment applies the displacement propagator per spin sector,
/// each pulse conjugates by sigma_x. The overloads evolve for a plain
/// duration (no pulses) or through a complete pulse sequence.
FockEvolution fock_evolve(const FockBath& bath, double t);
FockEvolution fock_evolve(const FockBath& bath, const PulseSequence& seq);

std::complex<double> fock_evolve_coherence(const FockBath& bath, double t);
std::complex<double> fock_evolve_coherence(const FockBath& bath, const PulseSequence& seq);

struct CyclePhases {
    double phi_1 = 0.0;  // 4 sum_k (g_sq_k/w_k) (dt - sin(w_k dt)/w_k)
    double phi_2 = 0.0;  // 8 sum_k (g_sq_k/w_k^2) sin(w_k dt) (1 - cos(w_k dt))
};

/// Phase sums of the Heisenberg-picture single-cycle propagator.
CyclePhases heisenberg_cycle_phases(const ModeGrid& grid, double delta_t);

/// e^{-Gamma_P(N=1, dt)} through the Heisenberg route: |eta_k|^2 built by
/// complex arithmetic from first principles (no Dirichlet form), folded with
/// the thermal displacement expectation per mode.
double heisenberg_cycle_coherence(const ModeGrid& grid, double temperature, double delta_t);

}  // namespace dephase
