#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dephase/env_model.hpp"

using namespace dephase;

namespace {
const EnvironmentSpec kOhmicVacuum{0.25, 1.0, 1.0, 0.0};
}

TEST_CASE("spectral density matches direct evaluation") {
    CHECK(spectral_density(kOhmicVacuum, 0.0) == 0.0);
    // 0.25/4 * e^-1 and 2 e^-1, frozen from an arbitrary-precision evaluation
    CHECK(spectral_density(kOhmicVacuum, 1.0) == doctest::Approx(0.0229924650732151451).epsilon(1e-14));
    const EnvironmentSpec wide{4.0, 2.0, 1.0, 0.0};
    CHECK(spectral_density(wide, 2.0) == doctest::Approx(0.7357588823428846432).epsilon(1e-14));
    CHECK_THROWS_AS(spectral_density(kOhmicVacuum, -0.1), std::domain_error);
}

TEST_CASE("spectral density peaks at n*omega_c and decays hard past the cutoff") {
    for (double n : {0.5, 1.0, 2.0}) {
        EnvironmentSpec env{0.3, 1.7, n, 0.0};
        const double peak_omega = n * env.omega_c;
        const double peak = spectral_density(env, peak_omega);
        CHECK(spectral_density(env, 0.9 * peak_omega) < peak);
        CHECK(spectral_density(env, 1.1 * peak_omega) < peak);
        const double edge = env.omega_c * std::max(1.0, n);
        for (double factor : {33.0, 40.0, 60.0, 100.0}) {
            CHECK(spectral_density(env, factor * edge) / peak < 1e-12);
        }
        // At exactly 30x the decay is within an order of that level.
        CHECK(spectral_density(env, 30.0 * edge) / peak < 1e-11);
    }
}

TEST_CASE("thermal factor limits and series switchover") {
    CHECK(thermal_factor(kOhmicVacuum, 0.5) == 1.0);
    CHECK(thermal_factor(kOhmicVacuum, 123.0) == 1.0);

    EnvironmentSpec warm = kOhmicVacuum;
    warm.temperature = 1.0;
    CHECK(thermal_factor(warm, 2.0) == doctest::Approx(1.3130352854993312).epsilon(1e-14));

    EnvironmentSpec hot = kOhmicVacuum;
    hot.temperature = 1e6;
    CHECK(thermal_factor(hot, 1.0) == doctest::Approx(2e6).epsilon(1e-6));

    CHECK_THROWS_AS(thermal_factor(warm, 0.0), std::domain_error);
    CHECK_THROWS_AS(thermal_factor(warm, -1.0), std::domain_error);
}

TEST_CASE("bose occupation and the coth identity") {
    CHECK(bose_occupation(kOhmicVacuum, 1.0) == 0.0);

    EnvironmentSpec warm = kOhmicVacuum;
    warm.temperature = 1.0;
    CHECK(bose_occupation(warm, 1.0) == doctest::Approx(0.5819767068693265).epsilon(1e-14));

    // 2 n_bar + 1 == coth(w/2T) across many decades of w/T.
    std::mt19937 rng(20260810);
    std::uniform_real_distribution<double> log_range(-7.0, 7.0);
    for (int i = 0; i < 2000; ++i) {
        EnvironmentSpec env = kOhmicVacuum;
        env.temperature = std::pow(10.0, log_range(rng));
        const double omega = std::pow(10.0, log_range(rng));
        const double lhs = 2.0 * bose_occupation(env, omega) + 1.0;
        const double rhs = thermal_factor(env, omega);
        CHECK(std::fabs(lhs - rhs) / rhs < 1e-12);
    }
}

TEST_CASE("thermal factor is monotone in omega and temperature") {
    std::vector<double> omegas{0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0};
    std::vector<double> temperatures{0.05, 0.3, 1.0, 4.0, 20.0};
    for (double T : temperatures) {
        EnvironmentSpec env = kOhmicVacuum;
        env.temperature = T;
        for (std::size_t i = 1; i < omegas.size(); ++i)
            CHECK(thermal_factor(env, omegas[i]) < thermal_factor(env, omegas[i - 1]));
    }
    for (double omega : omegas) {
        double previous = 0.0;
        for (double T : temperatures) {
            EnvironmentSpec env = kOhmicVacuum;
            env.temperature = T;
            const double value = thermal_factor(env, omega);
            CHECK(value > previous);
            previous = value;
        }
    }
}

TEST_CASE("invalid environments are rejected") {
    CHECK_THROWS_AS(EnvironmentSpec{0.0, 1.0, 1.0, 0.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(EnvironmentSpec{0.25, -1.0, 1.0, 0.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(EnvironmentSpec{0.25, 1.0, 0.0, 0.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(EnvironmentSpec{0.25, 1.0, 1.0, -2.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(EnvironmentSpec::ohmic_ratio(0.25, 1.0, 0.0), std::invalid_argument);
    CHECK_NOTHROW(EnvironmentSpec::ohmic(0.25, 1.0, 0.0).validate());
}
