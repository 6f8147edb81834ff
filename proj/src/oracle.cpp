#include "dephase/oracle.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dephase {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;

void ModeGrid::validate() const {
    if (modes.empty()) throw std::invalid_argument("ModeGrid: no modes");
    double previous = 0.0;
    for (const BathMode& mode : modes) {
        if (!(mode.omega > previous))
            throw std::invalid_argument("ModeGrid: omegas must be strictly increasing and > 0");
        if (!(mode.g_sq >= 0.0) || !std::isfinite(mode.g_sq))
            throw std::invalid_argument("ModeGrid: weights must be finite and >= 0");
        previous = mode.omega;
    }
}

ModeGrid ModeGrid::uniform(const EnvironmentSpec& env, double omega_max, std::size_t count) {
    env.validate();
    if (count == 0 || !(omega_max > 0.0)) throw std::invalid_argument("ModeGrid::uniform: bad grid");
    const double dw = omega_max / static_cast<double>(count);
    ModeGrid grid;
    grid.modes.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double omega = (static_cast<double>(k) + 0.5) * dw;
        grid.modes.push_back({omega, spectral_density(env, omega) * dw});
    }
    return grid;
}

double mode_sum_gamma(const ModeGrid& grid, double temperature, double t) {
    grid.validate();
    if (t < 0.0) throw std::domain_error("mode_sum_gamma: t must be >= 0");
    double gamma = 0.0;
    for (const BathMode& mode : grid.modes) {
        gamma += (4.0 * mode.g_sq / (mode.omega * mode.omega)) * 0.5 * xi_sq_norm(mode.omega, t) *
                 detail::coth_half_ratio(mode.omega, temperature);
    }
    return gamma;
}

double mode_sum_gamma(const ModeGrid& grid, double temperature, const PulseSequence& seq) {
    grid.validate();
    seq.validate();
    double gamma = 0.0;
    for (const BathMode& mode : grid.modes) {
        gamma += (4.0 * mode.g_sq / (mode.omega * mode.omega)) * 0.5 * eta_sq_norm(mode.omega, seq) *
                 detail::coth_half_ratio(mode.omega, temperature);
    }
    return gamma;
}

namespace {

// One bath interval: free system+bath evolution over [start, start + length],
// optionally closed by an instantaneous sigma_x kick.
struct Segment {
    double start = 0.0;
    double length = 0.0;
    bool pulse_after = false;
};

Complex xi_amplitude(const FockMode& mode, double duration) {
    using namespace std::complex_literals;
    return 2.0 * mode.g / mode.omega * (1.0 - std::exp(1i * mode.omega * duration));
}

double poisson_tail(double amplitude, long level) {
    // sum_{j >= level} e^{-A^2} A^{2j} / j!
    if (amplitude == 0.0) return 0.0;
    if (level <= 0) return 1.0;
    const double a2 = amplitude * amplitude;
    const double log_first = -a2 + level * std::log(a2) - std::lgamma(level + 1.0);
    if (log_first > 700.0) return 1.0;
    double term = std::exp(log_first);
    double sum = term;
    for (long j = level; j < level + 10000; ++j) {
        term *= a2 / static_cast<double>(j + 1);
        sum += term;
        if (term < 1e-30 * sum) break;
    }
    return std::min(sum, 1.0);
}

// Both the thermal state and the displaced states must fit under the cutoff:
// geometric thermal tail below 1e-6 and a Poisson bound on the worst-case
// accumulated displacement below 1e-8 above the thermal quantile.
void check_cutoff_adequacy(const FockBath& bath, const std::vector<Segment>& segments) {
    for (std::size_t k = 0; k < bath.modes.size(); ++k) {
        const FockMode& mode = bath.modes[k];
        long thermal_quantile = 0;
        if (bath.temperature > 0.0) {
            const double q = std::exp(-mode.omega / bath.temperature);
            const double thermal_tail = std::pow(q, mode.cutoff);
            if (!(thermal_tail < 1e-6))
                throw FockTruncationError("fock mode " + std::to_string(k) +
                                          ": thermal tail above cutoff is " + std::to_string(thermal_tail));
            thermal_quantile = static_cast<long>(std::ceil(std::log(1e-8) / std::log(q)));
        }
        double amplitude = 0.0;
        for (const Segment& segment : segments) amplitude += 0.5 * std::abs(xi_amplitude(mode, segment.length));
        const long headroom = mode.cutoff - thermal_quantile;
        if (headroom < 1 || !(poisson_tail(amplitude, headroom) < 1e-8))
            throw FockTruncationError("fock mode " + std::to_string(k) +
                                      ": displacement amplitude " + std::to_string(amplitude) +
                                      " does not fit under cutoff " + std::to_string(mode.cutoff));
    }
}

Matrix lowering_operator(int cutoff) {
    Matrix b = Matrix::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return b;
}

Vector thermal_populations(double omega, double temperature, int cutoff) {
    Vector p = Vector::Zero(cutoff);
    if (temperature == 0.0) {
        p(0) = 1.0;
        return p;
    }
    const double q = std::exp(-omega / temperature);
    double norm = 0.0;
    for (int n = 0; n < cutoff; ++n) {
        p(n) = std::pow(q, n);
        norm += p(n);
    }
    p /= norm;  // trace-one on the truncated space
    return p;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Spin-up propagator for one free segment: the per-mode generator
// (c b^dag - c^* b)/2 with c = e^{i w t_start} xi(length) is exponentiated by
// scaling-and-squaring and the factors joined by Kronecker products (modes
// commute). The spin-down propagator is the adjoint.
Matrix segment_propagator_up(const FockBath& bath, const Segment& segment) {
    using namespace std::complex_literals;
    Matrix u;
    for (const FockMode& mode : bath.modes) {
        const Complex c = std::exp(1i * mode.omega * segment.start) * xi_amplitude(mode, segment.length);
        const Matrix b = lowering_operator(mode.cutoff);
        const Matrix generator = 0.5 * (c * b.adjoint() - std::conj(c) * b);
        const Matrix u_mode = generator.exp();
        u = (u.size() == 0) ? u_mode : kron(u, u_mode);
    }
    return u;
}

FockEvolution evolve(const FockBath& bath, const std::vector<Segment>& segments) {
    bath.validate();
    check_cutoff_adequacy(bath, segments);

    Matrix rho_thermal;
    for (const FockMode& mode : bath.modes) {
        const Vector p = thermal_populations(mode.omega, bath.temperature, mode.cutoff);
        const Matrix diag = p.cast<Complex>().asDiagonal();
        rho_thermal = (rho_thermal.size() == 0) ? diag : kron(rho_thermal, diag);
    }

    // Initial qubit state |+><+|: every spin block starts as rho_th / 2.
    Matrix r00 = 0.5 * rho_thermal;
    Matrix r01 = r00, r10 = r00, r11 = r00;

    FockEvolution report;
    auto checkpoint = [&]() {
        const double trace = (r00.trace() + r11.trace()).real();
        report.trace_error = std::max(report.trace_error, std::fabs(trace - 1.0));
        report.population_drift = std::max({report.population_drift,
                                            std::fabs(r00.trace().real() - 0.5),
                                            std::fabs(r11.trace().real() - 0.5)});
        const double herm = (r10 - r01.adjoint()).cwiseAbs().maxCoeff();
        report.hermiticity_error = std::max(report.hermiticity_error, herm);
    };
    checkpoint();

    for (const Segment& segment : segments) {
        const Matrix u = segment_propagator_up(bath, segment);
        const Matrix ud = u.adjoint();
        r00 = u * r00 * ud;
        r01 = u * r01 * u;    // U_- = U_+^dag, so the right factor is U_-^dag = U_+
        r10 = ud * r10 * ud;
        r11 = ud * r11 * u;
        checkpoint();
        if (segment.pulse_after) {
            r00.swap(r11);
            r01.swap(r10);
            checkpoint();
        }
    }

    report.coherence = r01.trace();
    return report;
}

std::vector<Segment> free_segments(double t) {
    if (t < 0.0) throw std::domain_error("fock_evolve: t must be >= 0");
    return {Segment{0.0, t, false}};
}

std::vector<Segment> sequence_segments(const PulseSequence& seq) {
    seq.validate();
    std::vector<Segment> segments;
    segments.reserve(2 * static_cast<std::size_t>(seq.cycles));
    for (long j = 0; j < 2 * seq.cycles; ++j) {
        segments.push_back(Segment{seq.t0 + static_cast<double>(j) * seq.delta_t, seq.delta_t, true});
    }
    return segments;
}

}  // namespace

void FockBath::validate() const {
    if (modes.empty()) throw std::invalid_argument("FockBath: no modes");
    if (temperature < 0.0) throw std::invalid_argument("FockBath: temperature must be >= 0");
    long dim = 2;
    for (const FockMode& mode : modes) {
        if (!(mode.omega > 0.0)) throw std::invalid_argument("FockBath: omega must be > 0");
        if (mode.cutoff < 2) throw std::invalid_argument("FockBath: cutoff must be >= 2");
        if (dim > max_dimension / mode.cutoff)
            throw FockDimensionError("FockBath: Hilbert dimension exceeds cap of " +
                                     std::to_string(max_dimension));
        dim *= mode.cutoff;
    }
}

FockEvolution fock_evolve(const FockBath& bath, double t) { return evolve(bath, free_segments(t)); }

FockEvolution fock_evolve(const FockBath& bath, const PulseSequence& seq) {
    return evolve(bath, sequence_segments(seq));
}

std::complex<double> fock_evolve_coherence(const FockBath& bath, double t) {
    return fock_evolve(bath, t).coherence;
}

std::complex<double> fock_evolve_coherence(const FockBath& bath, const PulseSequence& seq) {
    return fock_evolve(bath, seq).coherence;
}

CyclePhases heisenberg_cycle_phases(const ModeGrid& grid, double delta_t) {
    grid.validate();
    if (delta_t < 0.0) throw std::domain_error("heisenberg_cycle_phases: delta_t must be >= 0");
    CyclePhases phases;
    for (const BathMode& mode : grid.modes) {
        const double w = mode.omega;
        phases.phi_1 += 4.0 * mode.g_sq / w * (delta_t - std::sin(w * delta_t) / w);
        phases.phi_2 += 8.0 * mode.g_sq / (w * w) * std::sin(w * delta_t) * (1.0 - std::cos(w * delta_t));
    }
    return phases;
}

double heisenberg_cycle_coherence(const ModeGrid& grid, double temperature, double delta_t) {
    grid.validate();
    if (!(delta_t > 0.0)) throw std::domain_error("heisenberg_cycle_coherence: delta_t must be > 0");
    using namespace std::complex_literals;
    // |eta_k|^2 assembled by complex arithmetic (no trig closed form), then
    // the thermal expectation of the cycle displacement, mode by mode.
    double gamma = 0.0;
    for (const BathMode& mode : grid.modes) {
        const Complex z = 1.0 - std::exp(1i * mode.omega * delta_t);
        const double eta_sq = 4.0 * mode.g_sq / (mode.omega * mode.omega) * std::norm(z * z);
        gamma += 0.5 * eta_sq * detail::coth_half_ratio(mode.omega, temperature);
    }
    return std::exp(-gamma);
}

}  // namespace dephase
