#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dephase/decoherence.hpp"
#include "dephase/env_model.hpp"

namespace dephase {

enum class TaskKind { curve, pulse_scan, verify, plan };
enum class OutputFormat { csv, json };
enum class GridScale { log, linear };

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& what, int line_number = 0, std::string field_name = {})
        : std::runtime_error(what), line(line_number), field(std::move(field_name)) {}
    int line;           // 1-based line of the offending entry, 0 if N/A
    std::string field;  // offending key, empty if N/A
};

// Flat `key = value` file with [section] headers; sections: environment,
// task, quadrature, output. Exactly one of omega_c_over_T / temperature /
// zero_temperature selects the bath temperature.
struct ExperimentConfig {
    // [environment]
    double alpha = 0.25;
    double omega_c = 1.0;
    bool omega_c_explicit = false;  // user supplied omega_c: echo absolute units
    double ohmicity_n = 1.0;
    std::optional<double> omega_c_over_temperature;
    std::optional<double> temperature;
    bool zero_temperature = false;

    // [task]
    TaskKind task = TaskKind::curve;
    double t_start = 0.01;  // curve grid
    double t_stop = 100.0;
    long t_count = 25;
    GridScale t_scale = GridScale::log;
    double time = 1.0;          // fixed t for pulse-scan / plan
    std::vector<long> n_list;   // pulse-scan cycle counts
    double target_coherence = 0.9;
    long n_limit = 1000000;
    // verify scale knobs
    long mode_count = 2000;
    int fock_cutoff = 40;
    double fock_coupling = 0.2;
    bool fast = false;

    // [quadrature]
    QuadratureConfig quadrature;

    // [output]
    std::string out_path;  // empty = stdout
    OutputFormat format = OutputFormat::csv;
    int precision = 12;

    EnvironmentSpec environment() const;     // resolves the temperature choice
    std::vector<double> time_grid() const;   // curve grid from start/stop/count
    void validate() const;                   // throws ConfigError
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

/// Canonical serialization; parse(serialize(c)) == c for a valid c.
std::string serialize_config(const ExperimentConfig& config);

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

/// Locale-independent shortest-faithful formatting with a significant-digit
/// cap; always uses '.' as the decimal separator.
std::string format_number(double value, int precision);

}  // namespace dephase
