#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dephase/planner.hpp"

using namespace dephase;

namespace {
const EnvironmentSpec kLowT = EnvironmentSpec::ohmic_ratio(0.25, 1.0, 1e2);
const EnvironmentSpec kHighT = EnvironmentSpec::ohmic_ratio(0.25, 1.0, 1e-2);

double pulsed_coherence(const EnvironmentSpec& env, double t, long n) {
    const PulseSequence seq{n, t / (2.0 * static_cast<double>(n)), 0.0};
    return std::exp(-gamma_pulsed(env, seq).gamma_total);
}
}  // namespace

TEST_CASE("regime classification") {
    const RegimeReport classical = classify_regime(kHighT);
    CHECK(classical.regime == BathRegime::classical_high_t);
    CHECK(classical.tau_c == doctest::Approx(1.0));
    REQUIRE(classical.tau_beta.has_value());
    CHECK(*classical.tau_beta == doctest::Approx(0.01));
    CHECK(classical.t_dec_estimate == doctest::Approx(4.0));
    CHECK_FALSE(classical.order_of_magnitude_only);

    const RegimeReport quantum = classify_regime(kLowT);
    CHECK(quantum.regime == BathRegime::quantum_low_t);
    REQUIRE(quantum.tau_beta.has_value());
    CHECK(*quantum.tau_beta == doctest::Approx(100.0));
    CHECK(quantum.t_dec_estimate == doctest::Approx(400.0));

    const RegimeReport middle = classify_regime(EnvironmentSpec::ohmic_ratio(0.25, 1.0, 1.0));
    CHECK(middle.regime == BathRegime::crossover);
    CHECK(middle.t_dec_estimate == doctest::Approx(4.0));  // min(tau_c, tau_beta)/alpha

    const RegimeReport vacuum = classify_regime(EnvironmentSpec::ohmic(0.5, 2.0, 0.0));
    CHECK(vacuum.regime == BathRegime::quantum_low_t);
    CHECK_FALSE(vacuum.tau_beta.has_value());
    CHECK(vacuum.t_dec_estimate == doctest::Approx(1.0));  // tau_c/alpha = 0.5/0.5
    CHECK(vacuum.order_of_magnitude_only);
}

TEST_CASE("regime classification is scale invariant") {
    for (double scale : {1e-3, 1.0, 1e4}) {
        EnvironmentSpec scaled = kLowT;
        scaled.omega_c *= scale;
        scaled.temperature *= scale;
        CHECK(classify_regime(scaled).regime == BathRegime::quantum_low_t);

        EnvironmentSpec scaled_hot = kHighT;
        scaled_hot.omega_c *= scale;
        scaled_hot.temperature *= scale;
        CHECK(classify_regime(scaled_hot).regime == BathRegime::classical_high_t);
    }
}

TEST_CASE("minimal cycles satisfies the target and is locally minimal") {
    const double t = 10.0;
    const double target = 0.8;
    const long n = min_cycles_for_target(kLowT, t, target);
    CHECK(pulsed_coherence(kLowT, t, n) >= target);
    if (n > 1) CHECK(pulsed_coherence(kLowT, t, n - 1) < target);
}

TEST_CASE("minimal cycles through the non-monotone worsening region") {
    // At omega_c t = 100 in the low-T bath the small-N profile dips well below
    // the unpulsed coherence before recovering; frozen regression value from
    // the converged engine.
    const double t = 100.0;
    const long n = min_cycles_for_target(kLowT, t, 0.9);
    CHECK(n == 126);
    CHECK(pulsed_coherence(kLowT, t, n) >= 0.9);
    CHECK(pulsed_coherence(kLowT, t, n - 1) < 0.9);
    // Rapid-flipping condition: the answer sits at omega_c * dt of order one.
    const double omega_c_dt = kLowT.omega_c * t / (2.0 * static_cast<double>(n));
    CHECK(omega_c_dt < 1.0);
    CHECK(omega_c_dt > 0.05);
}

TEST_CASE("a target below the unpulsed coherence still returns a minimal qualifying N") {
    const double t = 1.0;
    const double unpulsed = std::exp(-gamma_unperturbed(kLowT, t).gamma_total);
    const double target = 0.5 * unpulsed;  // far below what no pulses already achieve
    const long n = min_cycles_for_target(kLowT, t, target);
    CHECK(n >= 1);
    CHECK(pulsed_coherence(kLowT, t, n) >= target);
    if (n > 1) CHECK(pulsed_coherence(kLowT, t, n - 1) < target);
}

TEST_CASE("infeasible targets fail cleanly with the best value") {
    PlannerOptions tight;
    tight.n_limit = 8;
    const double t = 100.0;
    try {
        min_cycles_for_target(kLowT, t, 0.999999, {}, tight);
        FAIL("expected PlanInfeasibleError");
    } catch (const PlanInfeasibleError& error) {
        CHECK(error.best_coherence > 0.0);
        CHECK(error.best_coherence < 0.999999);
        CHECK(error.best_cycles >= 1);
        CHECK(error.best_cycles <= 8);
    }
}

TEST_CASE("planner input validation") {
    CHECK_THROWS_AS(min_cycles_for_target(kLowT, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(min_cycles_for_target(kLowT, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(min_cycles_for_target(kLowT, 1.0, 1.0), std::domain_error);
}
