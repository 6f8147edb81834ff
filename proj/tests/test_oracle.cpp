#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "dephase/decoherence.hpp"
#include "dephase/oracle.hpp"

using namespace dephase;

namespace {

const EnvironmentSpec kHighT = EnvironmentSpec::ohmic_ratio(0.25, 1.0, 1e-2);
const EnvironmentSpec kLowT = EnvironmentSpec::ohmic_ratio(0.25, 1.0, 1e2);

double gamma_from(const std::complex<double>& coherence) { return -std::log(std::abs(coherence) / 0.5); }

}  // namespace

TEST_CASE("mode grid construction and validation") {
    const ModeGrid grid = ModeGrid::uniform(kLowT, 30.0, 100);
    REQUIRE(grid.modes.size() == 100);
    CHECK(grid.modes.front().omega == doctest::Approx(0.15));
    CHECK(grid.modes.back().omega == doctest::Approx(29.85));
    const double dw = 0.3;
    CHECK(grid.modes[10].g_sq ==
          doctest::Approx(spectral_density(kLowT, grid.modes[10].omega) * dw).epsilon(1e-13));

    ModeGrid bad;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.modes = {{1.0, 0.1}, {0.5, 0.1}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("single mode at a full period contributes nothing") {
    ModeGrid grid;
    grid.modes = {{1.0, 0.04}};
    CHECK(mode_sum_gamma(grid, 0.7, 2.0 * M_PI) == doctest::Approx(0.0).epsilon(1e-24));
}

TEST_CASE("dense mode sum reproduces the continuum quadrature") {
    const std::size_t count = 2000;
    const double t = 1.0;
    for (const EnvironmentSpec& env : {kHighT, kLowT}) {
        const ModeGrid grid = ModeGrid::uniform(env, 30.0 * env.omega_c, count);
        const double quad = gamma_unperturbed(env, t).gamma_total;
        const double discrete = mode_sum_gamma(grid, env.temperature, t);
        CHECK(std::fabs(quad - discrete) / quad < 1e-3);

        for (long n : {1L, 20L}) {
            const PulseSequence seq{n, t / (2.0 * static_cast<double>(n)), 0.0};
            const double quad_p = gamma_pulsed(env, seq).gamma_total;
            const double discrete_p = mode_sum_gamma(grid, env.temperature, seq);
            CHECK(std::fabs(quad_p - discrete_p) / quad_p < 1e-3);
        }
    }
}

TEST_CASE("pulsed gamma against a one-term mode sum") {
    ModeGrid grid;
    grid.modes = {{1.3, 0.02}};
    const PulseSequence seq{3, 0.45, 0.0};
    const double expected = (4.0 * 0.02 / (1.3 * 1.3)) * 0.5 * eta_sq_norm(1.3, seq) *
                            (1.0 / std::tanh(1.3 / (2.0 * 0.7)));
    CHECK(mode_sum_gamma(grid, 0.7, seq) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("zero coupling leaves the coherence untouched") {
    FockBath bath;
    bath.modes = {FockMode{1.0, {0.0, 0.0}, 8}};
    bath.temperature = 0.3;
    const FockEvolution run = fock_evolve(bath, 2.0);
    CHECK(std::abs(run.coherence) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("single-mode Fock evolution matches the analytic damping") {
    for (double temperature : {0.0, 0.5}) {
        FockBath bath;
        bath.temperature = temperature;
        bath.modes = {FockMode{1.0, {0.2, 0.0}, 40}};
        ModeGrid grid;
        grid.modes = {{1.0, 0.04}};

        const double t = 2.3;
        const double gamma_free = gamma_from(fock_evolve_coherence(bath, t));
        CHECK(std::fabs(gamma_free - mode_sum_gamma(grid, temperature, t)) < 1e-6);

        const PulseSequence cycle{1, 1.1, 0.0};
        const double gamma_cycle = gamma_from(fock_evolve_coherence(bath, cycle));
        CHECK(std::fabs(gamma_cycle - mode_sum_gamma(grid, temperature, cycle)) < 1e-6);
    }
}

TEST_CASE("multi-cycle Fock evolution matches the analytic damping") {
    FockBath bath;
    bath.temperature = 0.4;
    bath.modes = {FockMode{1.0, {0.15, 0.05}, 30}};
    ModeGrid grid;
    grid.modes = {{1.0, std::norm(std::complex<double>(0.15, 0.05))}};
    const PulseSequence seq{3, 0.8, 0.0};
    const double gamma_fock = gamma_from(fock_evolve_coherence(bath, seq));
    CHECK(std::fabs(gamma_fock - mode_sum_gamma(grid, 0.4, seq)) < 1e-6);
}

TEST_CASE("two-mode Fock evolution with complex couplings") {
    FockBath bath;
    bath.temperature = 0.5;
    bath.modes = {FockMode{1.0, {0.2, 0.0}, 18}, FockMode{2.2, {0.0, 0.15}, 14}};
    ModeGrid grid;
    grid.modes = {{1.0, 0.04}, {2.2, 0.0225}};
    const PulseSequence cycle{1, 1.1, 0.0};
    const double gamma_fock = gamma_from(fock_evolve_coherence(bath, cycle));
    CHECK(std::fabs(gamma_fock - mode_sum_gamma(grid, 0.5, cycle)) < 1e-6);
}

TEST_CASE("Fock invariants: trace, populations, hermiticity") {
    FockBath bath;
    bath.temperature = 0.5;
    bath.modes = {FockMode{1.0, {0.2, 0.0}, 25}, FockMode{1.9, {0.1, 0.1}, 16}};
    const FockEvolution run = fock_evolve(bath, PulseSequence{2, 0.9, 0.0});
    CHECK(run.trace_error < 1e-10);
    CHECK(run.population_drift < 1e-10);
    CHECK(run.hermiticity_error < 1e-10);
}

TEST_CASE("coupling phases do not affect the coherence magnitude") {
    const PulseSequence seq{2, 0.7, 0.0};
    FockBath bath;
    bath.temperature = 0.3;
    bath.modes = {FockMode{1.0, {0.2, 0.0}, 25}, FockMode{1.7, {0.12, 0.0}, 20}};
    const double reference = std::abs(fock_evolve_coherence(bath, seq));

    FockBath rotated = bath;
    rotated.modes[0].g = std::polar(0.2, 0.813);
    rotated.modes[1].g = std::polar(0.12, -2.1);
    CHECK(std::fabs(std::abs(fock_evolve_coherence(rotated, seq)) - reference) < 1e-10);
}

TEST_CASE("inadequate cutoffs are rejected with the offending mode") {
    FockBath bath;
    bath.temperature = 0.0;
    bath.modes = {FockMode{1.0, {0.9, 0.0}, 2}};
    CHECK_THROWS_WITH_AS(fock_evolve(bath, 2.0), doctest::Contains("mode 0"), FockTruncationError);

    FockBath warm;
    warm.temperature = 5.0;  // thermal occupation far beyond a cutoff of 3
    warm.modes = {FockMode{1.0, {0.1, 0.0}, 3}};
    CHECK_THROWS_AS(fock_evolve(warm, 1.0), FockTruncationError);
}

TEST_CASE("dimension cap is enforced") {
    FockBath bath;
    bath.modes = {FockMode{1.0, {0.1, 0.0}, 64}, FockMode{2.0, {0.1, 0.0}, 64}};
    CHECK_THROWS_AS(bath.validate(), FockDimensionError);
    bath.max_dimension = 16384;
    CHECK_NOTHROW(bath.validate());
}

TEST_CASE("Heisenberg cycle phases") {
    ModeGrid single;
    single.modes = {{1.0, 0.01}};
    const CyclePhases at_pi = heisenberg_cycle_phases(single, M_PI);
    CHECK(at_pi.phi_1 == doctest::Approx(0.04 * M_PI).epsilon(1e-12));
    CHECK(at_pi.phi_2 == doctest::Approx(0.0).epsilon(1e-15));

    const CyclePhases at_zero = heisenberg_cycle_phases(single, 0.0);
    CHECK(at_zero.phi_1 == 0.0);
    CHECK(at_zero.phi_2 == 0.0);

    // phi_1 = O(dt^3) per mode for small dt.
    const double small = heisenberg_cycle_phases(single, 1e-3).phi_1;
    const double smaller = heisenberg_cycle_phases(single, 1e-4).phi_1;
    const double slope = std::log(small / smaller) / std::log(10.0);
    CHECK(slope == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("Heisenberg route equals the mode-sum route for one cycle") {
    ModeGrid grid;
    grid.modes = {{0.7, 0.01}, {1.3, 0.02}, {2.9, 0.005}};
    const double delta_t = 0.4;
    for (double temperature : {0.0, 0.5, 3.0}) {
        const double heis = heisenberg_cycle_coherence(grid, temperature, delta_t);
        const double direct = std::exp(-mode_sum_gamma(grid, temperature, PulseSequence{1, delta_t, 0.0}));
        CHECK(std::fabs(heis - direct) / direct < 1e-12);
    }
}

TEST_CASE("Heisenberg coherence is exactly one at full periods") {
    ModeGrid grid;
    grid.modes = {{1.0, 0.02}, {2.0, 0.01}, {3.0, 0.005}};
    // All omega_k * dt equal to multiples of 2 pi: eta vanishes identically.
    const double coherence = heisenberg_cycle_coherence(grid, 0.8, 2.0 * M_PI);
    CHECK(coherence == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("T = 0 single-mode Heisenberg coherence by hand") {
    ModeGrid grid;
    grid.modes = {{1.0, 0.04}};
    const double dt = 0.9;
    const std::complex<double> z = 1.0 - std::exp(std::complex<double>(0.0, dt));
    const double eta_sq = 4.0 * 0.04 * std::norm(z * z);
    CHECK(heisenberg_cycle_coherence(grid, 0.0, dt) ==
          doctest::Approx(std::exp(-0.5 * eta_sq)).epsilon(1e-13));
}
