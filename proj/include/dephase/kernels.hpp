#pragma once

#include <complex>
#include <stdexcept>

namespace dephase {

// Train of ideal pi-pulse spin-flip cycles: 2*cycles kicks applied at
// t0 + n*delta_t, the n-th cycle closing at t0 + 2*n*delta_t. Pulses are
// instantaneous (zero-width kicks).
struct PulseSequence {
    long cycles = 1;       // complete spin-flip cycles, >= 1
    double delta_t = 1.0;  // inter-pulse interval, > 0
    double t0 = 0.0;       // sequence start time

    double total_duration() const { return 2.0 * static_cast<double>(cycles) * delta_t; }
    void validate() const;
};

// Thrown by interference_factor where its denominator vanishes; the point
// is removable and callers must evaluate eta_sq_norm directly instead.
struct RemovablePointError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Coupling-stripped squared magnitude of the free-evolution kernel:
/// |xi(w,t)|^2 / (4|g|^2/w^2) = 2(1 - cos wt). Bounded by [0,4].
double xi_sq_norm(double omega, double t);

/// sin^2(Nx)/sin^2(x), the squared N-term geometric phase sum. Near
/// x = m*pi the ratio is replaced by its second-order expansion
/// N^2 (1 - (N^2-1)(x - m*pi)^2 / 3), so the removable limit N^2 is
/// returned exactly at the singular points.
double dirichlet_kernel(long cycles, double x);

/// Coupling-stripped |eta(N, x)|^2 with x = w*delta_t:
/// 4(1 - cos x)^2 * dirichlet_kernel(N, x). Peaks at 16 N^2 for x = pi.
double eta_sq_norm(double omega, const PulseSequence& seq);

/// Interference factor f(w, N, dt) = 2 xi(dt)/xi(2N dt) * sum_n e^{2i(n-1)w dt},
/// satisfying |1 - f|^2 * xi_sq_norm(w, 2N dt) = eta_sq_norm(w, seq).
/// Throws RemovablePointError when |xi(2N dt)| < 1e-14.
std::complex<double> interference_factor(double omega, const PulseSequence& seq);

/// Checks the sign-flip identity behind the recovery of unperturbed
/// evolution: |1-e^{ix}|^2 |1+e^{ix}|^2 D_N(x) == 2(1 - cos 2Nx) at
/// x = w*delta_t, within mixed tolerance 1e-12.
bool unperturbed_recovery_check(double omega, const PulseSequence& seq);

}  // namespace dephase
