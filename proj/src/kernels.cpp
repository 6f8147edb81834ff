#include "dephase/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dephase {

namespace {

constexpr double kSingularSinThreshold = 1e-7;

void check_omega(double omega) {
    if (!(omega > 0.0)) throw std::domain_error("kernel: omega must be > 0");
}

// Distance from the nearest multiple of pi, with the multiple index.
double reduce_mod_pi(double x, double& multiple) {
    multiple = std::round(x / M_PI);
    return x - multiple * M_PI;
}

}  // namespace

void PulseSequence::validate() const {
    if (cycles < 1)
        throw std::invalid_argument("PulseSequence: cycles must be >= 1, got " + std::to_string(cycles));
    if (!(delta_t > 0.0) || !std::isfinite(delta_t))
        throw std::invalid_argument("PulseSequence: delta_t must be > 0, got " + std::to_string(delta_t));
    if (!std::isfinite(t0)) throw std::invalid_argument("PulseSequence: t0 must be finite");
}

double xi_sq_norm(double omega, double t) {
    check_omega(omega);
    if (t < 0.0) throw std::domain_error("xi_sq_norm: t must be >= 0");
    const double s = std::sin(0.5 * omega * t);
    return 4.0 * s * s;  // == 2(1 - cos wt), cancellation-free
}

double dirichlet_kernel(long cycles, double x) {
    if (cycles < 1) throw std::domain_error("dirichlet_kernel: cycles must be >= 1");
    const double n = static_cast<double>(cycles);
    double m;
    const double delta = reduce_mod_pi(x, m);
    const double sx = std::sin(x);
    if (std::fabs(sx) < kSingularSinThreshold) {
        // Second-order expansion about the removable point x = m*pi.
        return n * n * (1.0 - (n * n - 1.0) * delta * delta / 3.0);
    }
    const double r = std::sin(n * x) / sx;
    return r * r;
}

double eta_sq_norm(double omega, const PulseSequence& seq) {
    check_omega(omega);
    seq.validate();
    const double x = omega * seq.delta_t;
    const double h = std::sin(0.5 * x);
    const double one_minus_cos_sq = 4.0 * h * h * h * h;  // (1 - cos x)^2
    return 4.0 * one_minus_cos_sq * dirichlet_kernel(seq.cycles, x);
}

std::complex<double> interference_factor(double omega, const PulseSequence& seq) {
    check_omega(omega);
    seq.validate();
    using namespace std::complex_literals;
    const double x = omega * seq.delta_t;
    const double n = static_cast<double>(seq.cycles);
    const double nx = n * x;

    const std::complex<double> xi_dt = 1.0 - std::exp(1i * x);
    const std::complex<double> xi_total = 1.0 - std::exp(2i * nx);
    if (std::abs(xi_total) < 1e-14)
        throw RemovablePointError("interference_factor: xi(2N dt) vanishes at omega*dt = " + std::to_string(x));

    // Geometric sum over e^{2i(n-1)x}, evaluated through the reduced angle so
    // the ratio stays finite next to x = m*pi.
    double m;
    const double delta = reduce_mod_pi(x, m);
    std::complex<double> geometric;
    if (std::fabs(std::sin(delta)) < kSingularSinThreshold) {
        geometric = n * std::exp(1i * (n - 1.0) * delta);
    } else {
        geometric = std::exp(1i * (n - 1.0) * x) * (std::sin(nx) / std::sin(x));
    }
    return 2.0 * xi_dt * geometric / xi_total;
}

bool unperturbed_recovery_check(double omega, const PulseSequence& seq) {
    check_omega(omega);
    seq.validate();
    using namespace std::complex_literals;
    const double x = omega * seq.delta_t;
    const std::complex<double> z = std::exp(1i * x);
    const double lhs = std::norm(1.0 - z) * std::norm(1.0 + z) * dirichlet_kernel(seq.cycles, x);
    const double rhs = xi_sq_norm(omega, seq.total_duration());
    const double scale = std::max({1.0, lhs, rhs});
    return std::fabs(lhs - rhs) <= 1e-12 * scale;
}

}  // namespace dephase
