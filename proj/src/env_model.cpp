#include "dephase/env_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dephase {

void EnvironmentSpec::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("EnvironmentSpec: alpha must be positive, got " + std::to_string(alpha));
    if (!(omega_c > 0.0) || !std::isfinite(omega_c))
        throw std::invalid_argument("EnvironmentSpec: omega_c must be positive, got " + std::to_string(omega_c));
    if (!(ohmicity_n > 0.0) || !std::isfinite(ohmicity_n))
        throw std::invalid_argument("EnvironmentSpec: ohmicity_n must be positive, got " + std::to_string(ohmicity_n));
    if (temperature < 0.0 || !std::isfinite(temperature))
        throw std::invalid_argument("EnvironmentSpec: temperature must be >= 0, got " + std::to_string(temperature));
}

EnvironmentSpec EnvironmentSpec::ohmic(double alpha, double omega_c, double temperature) {
    EnvironmentSpec env{alpha, omega_c, 1.0, temperature};
    env.validate();
    return env;
}

EnvironmentSpec EnvironmentSpec::ohmic_ratio(double alpha, double omega_c, double omega_c_over_temperature) {
    if (!(omega_c_over_temperature > 0.0))
        throw std::invalid_argument("EnvironmentSpec: omega_c/T ratio must be positive");
    return ohmic(alpha, omega_c, omega_c / omega_c_over_temperature);
}

double spectral_density(const EnvironmentSpec& env, double omega) {
    if (omega < 0.0) throw std::domain_error("spectral_density: omega must be >= 0");
    if (omega == 0.0) return 0.0;
    const double power = env.ohmicity_n == 1.0 ? omega : std::pow(omega, env.ohmicity_n);
    return 0.25 * env.alpha * power * std::exp(-omega / env.omega_c);
}

namespace detail {

double coth_half_ratio(double omega, double temperature) {
    if (temperature == 0.0) return 1.0;
    const double y = 0.5 * omega / temperature;
    if (y < 1e-8) return 1.0 / y + y / 3.0;  // series: avoids 1/tanh blowup
    return 1.0 / std::tanh(y);
}

double bose_mean(double omega, double temperature) {
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

}  // namespace detail

double thermal_factor(const EnvironmentSpec& env, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("thermal_factor: omega must be > 0");
    return detail::coth_half_ratio(omega, env.temperature);
}

double bose_occupation(const EnvironmentSpec& env, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("bose_occupation: omega must be > 0");
    return detail::bose_mean(omega, env.temperature);
}

}  // namespace dephase
