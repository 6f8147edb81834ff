#include "dephase/decoherence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace dephase {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on the
// Legendre recurrence. Computed once; deterministic.
struct GaussRule {
    std::array<double, 16> node{};
    std::array<double, 16> weight{};
};

GaussRule make_gauss16() {
    GaussRule rule;
    const int n = 16;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        rule.node[i] = x;
        rule.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const GaussRule& gauss16() {
    static const GaussRule rule = make_gauss16();
    return rule;
}

enum class ThermalWeight { total, vacuum, thermal };

double weight_factor(ThermalWeight kind, double omega, double temperature) {
    switch (kind) {
        case ThermalWeight::total:
            return detail::coth_half_ratio(omega, temperature);
        case ThermalWeight::vacuum:
            return 1.0;
        case ThermalWeight::thermal:
            return 2.0 * detail::bose_mean(omega, temperature);
    }
    return 0.0;
}

// Exponent p of the integrand as omega -> 0: I ~ w^n, the stripped kernel
// contributes w^0 (free) or w^2 (pulsed), a T>0 coth/thermal weight w^-1.
double small_omega_exponent(const EnvironmentSpec& env, ThermalWeight kind, bool pulsed) {
    double p = env.ohmicity_n + (pulsed ? 2.0 : 0.0);
    if (kind != ThermalWeight::vacuum && env.temperature > 0.0) p -= 1.0;
    return p;
}

template <class F>
double panel_sum(F&& integrand, double lo, double hi) {
    const GaussRule& g = gauss16();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) acc += g.weight[i] * integrand(mid + half * g.node[i]);
    return half * acc;
}

// First panel with a power-law substitution w = h v^{1/s}, s = p + 1, which
// maps an integrable w^p endpoint onto a smooth integrand in v.
template <class F>
double panel_sum_power(F&& integrand, double h, double s) {
    const GaussRule& g = gauss16();
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double v = 0.5 * (1.0 + g.node[i]);
        const double omega = h * std::pow(v, 1.0 / s);
        acc += g.weight[i] * integrand(omega) * std::pow(v, 1.0 / s - 1.0);
    }
    return 0.5 * acc * h / s;
}

struct SpectralIntegral {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    long panels = 0;
};

// Fixed-order panels over [0, omega_max], doubling the partition until two
// successive refinements agree to the relative tolerance. Summation runs in
// panel order with compensation, so results are bit-stable across runs.
template <class F>
SpectralIntegral integrate_spectral(F&& integrand, double omega_max, double exponent,
                                    long initial_panels, const QuadratureConfig& cfg) {
    const double s = exponent + 1.0;
    const bool power_first = std::fabs(s - std::round(s)) > 1e-9;

    auto evaluate = [&](long panels) {
        const double width = omega_max / static_cast<double>(panels);
        double sum = 0.0, comp = 0.0;
        for (long i = 0; i < panels; ++i) {
            const double lo = width * static_cast<double>(i);
            const double hi = (i + 1 == panels) ? omega_max : width * static_cast<double>(i + 1);
            const double part = (i == 0 && power_first) ? panel_sum_power(integrand, hi, s)
                                                        : panel_sum(integrand, lo, hi);
            const double y = part - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        return sum;
    };

    long panels = std::max<long>(4, initial_panels);
    double previous = evaluate(panels);
    while (true) {
        if (panels > cfg.max_panels / 2) {
            return {previous, std::numeric_limits<double>::infinity(), false, panels};
        }
        panels *= 2;
        const double current = evaluate(panels);
        const double diff = std::fabs(current - previous);
        if (diff <= cfg.relative_tolerance * std::fabs(current) || diff < 1e-300) {
            return {current, diff, true, panels};
        }
        previous = current;
    }
}

// Bound on the neglected tail: kernel and thermal factors frozen at their
// maxima, spectral tail integral bounded through the incomplete-gamma
// asymptotics (z >= 10 max(1,n) makes the correction factor < 1.2).
double tail_bound(const EnvironmentSpec& env, double kernel_max, ThermalWeight kind, double omega_max) {
    const double z = omega_max / env.omega_c;
    const double n = env.ohmicity_n;
    const double spectral_tail = 0.25 * env.alpha * env.omega_c * std::pow(omega_max, n) *
                                 std::exp(-z) / (1.0 - n / z);
    return kernel_max * (2.0 / (omega_max * omega_max)) *
           weight_factor(kind, omega_max, env.temperature) * spectral_tail;
}

struct IntegralSetup {
    double omega_max = 0.0;
    long initial_panels = 0;
};

IntegralSetup make_setup(const EnvironmentSpec& env, double oscillation_time, const QuadratureConfig& cfg) {
    IntegralSetup setup;
    setup.omega_max = cfg.omega_max_factor * env.omega_c * std::max(1.0, env.ohmicity_n);
    double width = 0.5 * env.omega_c * std::max(1.0, env.ohmicity_n);
    if (oscillation_time > 0.0) width = std::min(width, 0.25 * M_PI / oscillation_time);
    setup.initial_panels = static_cast<long>(std::ceil(setup.omega_max / width));
    return setup;
}

// Runs the vacuum/thermal/total triple for a stripped kernel K(w); the
// integrand is I(w) * (2/w^2) * theta(w) * K(w).
template <class Kernel>
DecoherenceResult assemble_result(const EnvironmentSpec& env, Kernel&& kernel, bool pulsed,
                                  double oscillation_time, double kernel_max,
                                  const QuadratureConfig& cfg, const char* label) {
    const IntegralSetup setup = make_setup(env, oscillation_time, cfg);

    auto run_part = [&](ThermalWeight kind) {
        auto integrand = [&](double omega) {
            return spectral_density(env, omega) * (2.0 / (omega * omega)) *
                   weight_factor(kind, omega, env.temperature) * kernel(omega);
        };
        SpectralIntegral part = integrate_spectral(integrand, setup.omega_max,
                                                   small_omega_exponent(env, kind, pulsed),
                                                   setup.initial_panels, cfg);
        part.error += tail_bound(env, kernel_max, kind, setup.omega_max);
        return part;
    };

    DecoherenceResult result;
    if (env.temperature == 0.0) {
        const SpectralIntegral vac = run_part(ThermalWeight::vacuum);
        result.gamma_vacuum = vac.value;
        result.gamma_thermal = 0.0;
        result.gamma_total = vac.value;
        result.quadrature_error_estimate = vac.error;
        result.coherence = std::exp(-result.gamma_total);
        if (!vac.converged)
            throw QuadratureError(std::string(label) + ": quadrature hit the panel cap", result);
        return result;
    }

    const SpectralIntegral total = run_part(ThermalWeight::total);
    const SpectralIntegral vac = run_part(ThermalWeight::vacuum);
    const SpectralIntegral thermal = run_part(ThermalWeight::thermal);
    result.gamma_total = total.value;
    result.gamma_vacuum = vac.value;
    result.gamma_thermal = thermal.value;
    result.quadrature_error_estimate = total.error + vac.error + thermal.error;
    result.coherence = std::exp(-result.gamma_total);
    if (!total.converged || !vac.converged || !thermal.converged)
        throw QuadratureError(std::string(label) + ": quadrature hit the panel cap", result);
    return result;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(relative_tolerance > 0.0) || relative_tolerance > 1e-2)
        throw std::invalid_argument("QuadratureConfig: relative_tolerance must lie in (0, 1e-2]");
    if (!(omega_max_factor >= 10.0))
        throw std::invalid_argument("QuadratureConfig: omega_max_factor must be >= 10");
    if (max_panels < 8) throw std::invalid_argument("QuadratureConfig: max_panels too small");
}

DecoherenceResult gamma_unperturbed(const EnvironmentSpec& env, double t, const QuadratureConfig& cfg) {
    env.validate();
    cfg.validate();
    if (t < 0.0 || !std::isfinite(t)) throw std::domain_error("gamma_unperturbed: t must be >= 0");
    if (t == 0.0) return {};

    auto kernel = [t](double omega) { return xi_sq_norm(omega, t); };
    return assemble_result(env, kernel, false, t, 4.0, cfg, "gamma_unperturbed");
}

DecoherenceResult gamma_pulsed(const EnvironmentSpec& env, const PulseSequence& seq,
                               const QuadratureConfig& cfg, PulsedForm form) {
    env.validate();
    cfg.validate();
    seq.validate();

    const double total_time = seq.total_duration();
    const double n = static_cast<double>(seq.cycles);
    const double kernel_max = 16.0 * n * n;

    if (form == PulsedForm::dirichlet) {
        auto kernel = [&seq](double omega) { return eta_sq_norm(omega, seq); };
        return assemble_result(env, kernel, true, total_time, kernel_max, cfg, "gamma_pulsed");
    }
    auto kernel = [&seq, total_time](double omega) {
        try {
            const std::complex<double> f = interference_factor(omega, seq);
            return std::norm(1.0 - f) * xi_sq_norm(omega, total_time);
        } catch (const RemovablePointError&) {
            return eta_sq_norm(omega, seq);
        }
    };
    return assemble_result(env, kernel, true, total_time, kernel_max, cfg, "gamma_pulsed");
}

std::vector<PulseScanPoint> pulse_frequency_scan(const EnvironmentSpec& env, double t,
                                                 const std::vector<long>& n_list,
                                                 const QuadratureConfig& cfg) {
    env.validate();
    cfg.validate();
    if (!(t > 0.0)) throw std::domain_error("pulse_frequency_scan: t must be > 0");

    std::vector<PulseScanPoint> points;
    points.reserve(n_list.size());
    for (long n : n_list) {
        if (n < 1) throw std::domain_error("pulse_frequency_scan: every N must be >= 1");
        PulseScanPoint point;
        point.cycles = n;
        point.delta_t = t / (2.0 * static_cast<double>(n));
        point.tau_c_over_dt = 1.0 / (env.omega_c * point.delta_t);
        const PulseSequence seq{n, point.delta_t, 0.0};
        try {
            point.result = gamma_pulsed(env, seq, cfg);
            point.converged = true;
        } catch (const QuadratureError& failure) {
            point.result = failure.partial;
            point.converged = false;
        }
        points.push_back(point);
    }
    return points;
}

std::vector<CurvePoint> decoherence_curve(const EnvironmentSpec& env, const std::vector<double>& t_grid,
                                          const QuadratureConfig& cfg) {
    env.validate();
    cfg.validate();
    if (t_grid.empty()) throw std::domain_error("decoherence_curve: empty time grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] < 0.0) throw std::domain_error("decoherence_curve: times must be >= 0");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
            throw std::domain_error("decoherence_curve: time grid must be strictly increasing");
    }

    std::vector<CurvePoint> points;
    points.reserve(t_grid.size());
    for (double t : t_grid) {
        CurvePoint point;
        point.t = t;
        try {
            point.result = gamma_unperturbed(env, t, cfg);
            point.converged = true;
        } catch (const QuadratureError& failure) {
            point.result = failure.partial;
            point.converged = false;
        }
        points.push_back(point);
    }
    return points;
}

}  // namespace dephase
