#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "dephase/config.hpp"
#include "dephase/oracle.hpp"
#include "dephase/runner.hpp"

namespace {

// Output sink: file when a path is configured, stdout otherwise.
struct Sink {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    int open(const std::string& path) {
        if (path.empty()) return dephase::kExitOk;
        file.open(path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file '" << path << "'\n";
            return dephase::kExitConfigError;
        }
        stream = &file;
        return dephase::kExitOk;
    }
};

int dispatch(const dephase::ExperimentConfig& config) {
    Sink sink;
    if (int rc = sink.open(config.out_path); rc != dephase::kExitOk) return rc;
    return dephase::run_task(config, *sink.stream, std::cerr);
}

dephase::ExperimentConfig load(const std::string& path) { return dephase::parse_config_file(path); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decoherence of a dephasing qubit under bang-bang pulse control"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::string format_override;
    bool fast = false;

    CLI::App* run = app.add_subcommand("run", "Execute the task described by a config file");
    run->add_option("--config", config_path, "Config file path")->required();
    run->add_option("--out", out_override, "Output file (default: stdout or config path)");
    run->add_option("--format", format_override, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* verify = app.add_subcommand("verify", "Run the oracle agreement suite");
    verify->add_flag("--fast", fast, "Reduced grid and Fock cutoffs");
    verify->add_option("--config", config_path, "Optional config with verify-scale knobs");

    CLI::App* plan = app.add_subcommand("plan", "Minimal pulse rate for a target coherence");
    plan->add_option("--config", config_path, "Config file path")->required();
    plan->add_option("--out", out_override, "Output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        dephase::ExperimentConfig config;
        if (app.got_subcommand(verify)) {
            if (!config_path.empty()) {
                config = load(config_path);
                if (config.task != dephase::TaskKind::verify)
                    throw dephase::ConfigError("verify requires a config with task type = verify");
            } else {
                config.task = dephase::TaskKind::verify;
                config.zero_temperature = true;  // placeholder; verify builds its own baths
            }
            config.fast = config.fast || fast;
            return dephase::run_verify(config, std::cout);
        }

        config = load(config_path);
        if (!out_override.empty()) config.out_path = out_override;
        if (format_override == "csv") config.format = dephase::OutputFormat::csv;
        if (format_override == "json") config.format = dephase::OutputFormat::json;

        if (app.got_subcommand(plan)) {
            if (config.task != dephase::TaskKind::plan)
                throw dephase::ConfigError("plan requires a config with task type = plan");
            Sink sink;
            if (int rc = sink.open(config.out_path); rc != dephase::kExitOk) return rc;
            return dephase::run_plan(config, *sink.stream);
        }
        return dispatch(config);
    } catch (const dephase::ConfigError& error) {
        std::cerr << "config error";
        if (error.line > 0) std::cerr << " (line " << error.line << ")";
        if (!error.field.empty()) std::cerr << " [" << error.field << "]";
        std::cerr << ": " << error.what() << "\n";
        return dephase::kExitConfigError;
    } catch (const dephase::QuadratureError& error) {
        std::cerr << "numerical failure: " << error.what() << "\n";
        return dephase::kExitNumericalFailure;
    } catch (const dephase::FockDimensionError& error) {
        std::cerr << "resource limit: " << error.what() << "\n";
        return dephase::kExitNumericalFailure;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return dephase::kExitNumericalFailure;
    }
}
