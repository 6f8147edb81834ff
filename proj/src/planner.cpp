#include "dephase/planner.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace dephase {

RegimeReport classify_regime(const EnvironmentSpec& env) {
    env.validate();
    RegimeReport report;
    report.tau_c = 1.0 / env.omega_c;

    if (env.temperature == 0.0) {
        report.regime = BathRegime::quantum_low_t;
        report.tau_beta.reset();
        report.t_dec_estimate = report.tau_c / env.alpha;
        report.order_of_magnitude_only = true;
        return report;
    }

    const double tau_beta = 1.0 / env.temperature;
    report.tau_beta = tau_beta;
    const double ratio = env.omega_c / env.temperature;
    if (ratio < kClassicalRatioThreshold) {
        report.regime = BathRegime::classical_high_t;
        report.t_dec_estimate = report.tau_c / env.alpha;
    } else if (ratio > kQuantumRatioThreshold) {
        report.regime = BathRegime::quantum_low_t;
        report.t_dec_estimate = tau_beta / env.alpha;
    } else {
        report.regime = BathRegime::crossover;
        report.t_dec_estimate = std::min(report.tau_c, tau_beta) / env.alpha;
    }
    return report;
}

long min_cycles_for_target(const EnvironmentSpec& env, double t, double target_coherence,
                           const QuadratureConfig& cfg, const PlannerOptions& opts) {
    env.validate();
    cfg.validate();
    if (!(t > 0.0)) throw std::domain_error("min_cycles_for_target: t must be > 0");
    if (!(target_coherence > 0.0) || !(target_coherence < 1.0))
        throw std::domain_error("min_cycles_for_target: target must lie in (0, 1)");
    if (opts.n_limit < 1) throw std::domain_error("min_cycles_for_target: n_limit must be >= 1");

    std::map<long, double> cache;
    auto coherence_at = [&](long n) {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        const PulseSequence seq{n, t / (2.0 * static_cast<double>(n)), 0.0};
        const double value = std::exp(-gamma_pulsed(env, seq, cfg).gamma_total);
        cache.emplace(n, value);
        return value;
    };
    auto qualifies = [&](long n) { return coherence_at(n) >= target_coherence; };

    auto fail = [&]() -> long {
        double best = 0.0;
        long best_n = 1;
        for (const auto& [n, value] : cache) {
            if (value > best) {
                best = value;
                best_n = n;
            }
        }
        throw PlanInfeasibleError("min_cycles_for_target: no N <= " + std::to_string(opts.n_limit) +
                                      " reaches the target; best coherence " + std::to_string(best) +
                                      " at N = " + std::to_string(best_n),
                                  best, best_n);
    };

    if (qualifies(1)) return 1;

    // Exponential bracket: first qualifying power of two (n_limit included as
    // a final probe when the doubling overshoots it).
    long lo = 1, hi = 0;
    for (long n = 2;; n *= 2) {
        if (n > opts.n_limit) {
            if (opts.n_limit > lo && qualifies(opts.n_limit)) {
                hi = opts.n_limit;
                break;
            }
            return fail();
        }
        if (qualifies(n)) {
            hi = n;
            break;
        }
        lo = n;
    }

    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (qualifies(mid))
            hi = mid;
        else
            lo = mid;
    }
    long candidate = hi;

    // Bisection assumes the profile rises through the bracket; make the
    // result locally minimal regardless.
    while (candidate > 1 && qualifies(candidate - 1)) --candidate;

    // Pulsing can worsen before it helps, so the sampled profile may dip; if
    // an inversion was observed, re-scan the region below the candidate.
    bool inverted = false;
    double previous = -1.0;
    for (const auto& [n, value] : cache) {
        if (n < candidate && value < previous) inverted = true;
        previous = value;
    }
    if (inverted && candidate - 1 <= opts.exhaustive_scan_limit) {
        for (long n = 1; n < candidate; ++n) {
            if (qualifies(n)) return n;
        }
    }
    return candidate;
}

}  // namespace dephase
