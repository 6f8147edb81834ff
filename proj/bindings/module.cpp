#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dephase/config.hpp"
#include "dephase/decoherence.hpp"
#include "dephase/env_model.hpp"
#include "dephase/kernels.hpp"
#include "dephase/oracle.hpp"
#include "dephase/planner.hpp"
#include "dephase/runner.hpp"

namespace py = pybind11;
using namespace dephase;

namespace {

std::string run_task_to_string(const std::string& config_text) {
    std::istringstream in(config_text);
    const ExperimentConfig config = parse_config(in);
    std::ostringstream out, diag;
    const int rc = run_task(config, out, diag);
    if (rc != kExitOk && rc != kExitVerifyFailed && rc != kExitPlanInfeasible)
        throw std::runtime_error("task failed with exit code " + std::to_string(rc) + ": " + diag.str());
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact dephasing of a qubit in a bosonic bath, with and without bang-bang pulse control";

    py::register_exception<RemovablePointError>(m, "RemovablePointError", PyExc_ValueError);
    py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);
    py::register_exception<FockTruncationError>(m, "FockTruncationError", PyExc_RuntimeError);
    py::register_exception<FockDimensionError>(m, "FockDimensionError", PyExc_RuntimeError);
    py::register_exception<PlanInfeasibleError>(m, "PlanInfeasibleError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<EnvironmentSpec>(m, "EnvironmentSpec")
        .def(py::init<>())
        .def(py::init([](double alpha, double omega_c, double ohmicity_n, double temperature) {
                 EnvironmentSpec env{alpha, omega_c, ohmicity_n, temperature};
                 env.validate();
                 return env;
             }),
             py::arg("alpha"), py::arg("omega_c"), py::arg("ohmicity_n"), py::arg("temperature"))
        .def_readwrite("alpha", &EnvironmentSpec::alpha)
        .def_readwrite("omega_c", &EnvironmentSpec::omega_c)
        .def_readwrite("ohmicity_n", &EnvironmentSpec::ohmicity_n)
        .def_readwrite("temperature", &EnvironmentSpec::temperature)
        .def("validate", &EnvironmentSpec::validate)
        .def_static("ohmic", &EnvironmentSpec::ohmic, py::arg("alpha"), py::arg("omega_c"),
                    py::arg("temperature"))
        .def_static("ohmic_ratio", &EnvironmentSpec::ohmic_ratio, py::arg("alpha"), py::arg("omega_c"),
                    py::arg("omega_c_over_temperature"));

    py::class_<PulseSequence>(m, "PulseSequence")
        .def(py::init([](long cycles, double delta_t, double t0) {
                 PulseSequence seq{cycles, delta_t, t0};
                 seq.validate();
                 return seq;
             }),
             py::arg("cycles"), py::arg("delta_t"), py::arg("t0") = 0.0)
        .def_readwrite("cycles", &PulseSequence::cycles)
        .def_readwrite("delta_t", &PulseSequence::delta_t)
        .def_readwrite("t0", &PulseSequence::t0)
        .def("total_duration", &PulseSequence::total_duration);

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("relative_tolerance", &QuadratureConfig::relative_tolerance)
        .def_readwrite("omega_max_factor", &QuadratureConfig::omega_max_factor)
        .def_readwrite("max_panels", &QuadratureConfig::max_panels);

    py::class_<DecoherenceResult>(m, "DecoherenceResult")
        .def_readonly("gamma_total", &DecoherenceResult::gamma_total)
        .def_readonly("gamma_vacuum", &DecoherenceResult::gamma_vacuum)
        .def_readonly("gamma_thermal", &DecoherenceResult::gamma_thermal)
        .def_readonly("coherence", &DecoherenceResult::coherence)
        .def_readonly("quadrature_error_estimate", &DecoherenceResult::quadrature_error_estimate)
        .def("__repr__", [](const DecoherenceResult& r) {
            return "DecoherenceResult(gamma_total=" + format_number(r.gamma_total, 12) +
                   ", coherence=" + format_number(r.coherence, 12) + ")";
        });

    m.def("spectral_density", &spectral_density, py::arg("env"), py::arg("omega"));
    m.def("thermal_factor", &thermal_factor, py::arg("env"), py::arg("omega"));
    m.def("bose_occupation", &bose_occupation, py::arg("env"), py::arg("omega"));

    m.def("xi_sq_norm", &xi_sq_norm, py::arg("omega"), py::arg("t"));
    m.def("dirichlet_kernel", &dirichlet_kernel, py::arg("cycles"), py::arg("x"));
    m.def("eta_sq_norm", &eta_sq_norm, py::arg("omega"), py::arg("seq"));
    m.def("interference_factor", &interference_factor, py::arg("omega"), py::arg("seq"));
    m.def("unperturbed_recovery_check", &unperturbed_recovery_check, py::arg("omega"), py::arg("seq"));

    py::enum_<PulsedForm>(m, "PulsedForm")
        .value("dirichlet", PulsedForm::dirichlet)
        .value("interference", PulsedForm::interference);

    m.def("gamma_unperturbed", &gamma_unperturbed, py::arg("env"), py::arg("t"),
          py::arg("cfg") = QuadratureConfig{});
    m.def("gamma_pulsed", &gamma_pulsed, py::arg("env"), py::arg("seq"), py::arg("cfg") = QuadratureConfig{},
          py::arg("form") = PulsedForm::dirichlet);

    py::class_<PulseScanPoint>(m, "PulseScanPoint")
        .def_readonly("cycles", &PulseScanPoint::cycles)
        .def_readonly("delta_t", &PulseScanPoint::delta_t)
        .def_readonly("tau_c_over_dt", &PulseScanPoint::tau_c_over_dt)
        .def_readonly("result", &PulseScanPoint::result)
        .def_readonly("converged", &PulseScanPoint::converged);
    m.def("pulse_frequency_scan", &pulse_frequency_scan, py::arg("env"), py::arg("t"), py::arg("n_list"),
          py::arg("cfg") = QuadratureConfig{});

    py::class_<CurvePoint>(m, "CurvePoint")
        .def_readonly("t", &CurvePoint::t)
        .def_readonly("result", &CurvePoint::result)
        .def_readonly("converged", &CurvePoint::converged);
    m.def("decoherence_curve", &decoherence_curve, py::arg("env"), py::arg("t_grid"),
          py::arg("cfg") = QuadratureConfig{});

    py::class_<BathMode>(m, "BathMode")
        .def(py::init([](double omega, double g_sq) { return BathMode{omega, g_sq}; }), py::arg("omega"),
             py::arg("g_sq"))
        .def_readwrite("omega", &BathMode::omega)
        .def_readwrite("g_sq", &BathMode::g_sq);

    py::class_<ModeGrid>(m, "ModeGrid")
        .def(py::init([](std::vector<BathMode> modes) {
                 ModeGrid grid{std::move(modes)};
                 grid.validate();
                 return grid;
             }),
             py::arg("modes"))
        .def_readwrite("modes", &ModeGrid::modes)
        .def_static("uniform", &ModeGrid::uniform, py::arg("env"), py::arg("omega_max"), py::arg("count"));

    m.def("mode_sum_gamma",
          py::overload_cast<const ModeGrid&, double, double>(&mode_sum_gamma), py::arg("grid"),
          py::arg("temperature"), py::arg("t"));
    m.def("mode_sum_gamma",
          py::overload_cast<const ModeGrid&, double, const PulseSequence&>(&mode_sum_gamma),
          py::arg("grid"), py::arg("temperature"), py::arg("seq"));

    py::class_<FockMode>(m, "FockMode")
        .def(py::init([](double omega, std::complex<double> g, int cutoff) {
                 return FockMode{omega, g, cutoff};
             }),
             py::arg("omega"), py::arg("g"), py::arg("cutoff"))
        .def_readwrite("omega", &FockMode::omega)
        .def_readwrite("g", &FockMode::g)
        .def_readwrite("cutoff", &FockMode::cutoff);

    py::class_<FockBath>(m, "FockBath")
        .def(py::init([](std::vector<FockMode> modes, double temperature, long max_dimension) {
                 FockBath bath{std::move(modes), temperature, max_dimension};
                 bath.validate();
                 return bath;
             }),
             py::arg("modes"), py::arg("temperature") = 0.0, py::arg("max_dimension") = 4096)
        .def_readwrite("modes", &FockBath::modes)
        .def_readwrite("temperature", &FockBath::temperature)
        .def_readwrite("max_dimension", &FockBath::max_dimension);

    py::class_<FockEvolution>(m, "FockEvolution")
        .def_readonly("coherence", &FockEvolution::coherence)
        .def_readonly("trace_error", &FockEvolution::trace_error)
        .def_readonly("population_drift", &FockEvolution::population_drift)
        .def_readonly("hermiticity_error", &FockEvolution::hermiticity_error);

    m.def("fock_evolve", py::overload_cast<const FockBath&, double>(&fock_evolve), py::arg("bath"),
          py::arg("t"));
    m.def("fock_evolve", py::overload_cast<const FockBath&, const PulseSequence&>(&fock_evolve),
          py::arg("bath"), py::arg("seq"));
    m.def("fock_evolve_coherence",
          py::overload_cast<const FockBath&, double>(&fock_evolve_coherence), py::arg("bath"), py::arg("t"));
    m.def("fock_evolve_coherence",
          py::overload_cast<const FockBath&, const PulseSequence&>(&fock_evolve_coherence), py::arg("bath"),
          py::arg("seq"));

    py::class_<CyclePhases>(m, "CyclePhases")
        .def_readonly("phi_1", &CyclePhases::phi_1)
        .def_readonly("phi_2", &CyclePhases::phi_2);
    m.def("heisenberg_cycle_phases", &heisenberg_cycle_phases, py::arg("grid"), py::arg("delta_t"));
    m.def("heisenberg_cycle_coherence", &heisenberg_cycle_coherence, py::arg("grid"),
          py::arg("temperature"), py::arg("delta_t"));

    py::enum_<BathRegime>(m, "BathRegime")
        .value("classical_high_t", BathRegime::classical_high_t)
        .value("quantum_low_t", BathRegime::quantum_low_t)
        .value("crossover", BathRegime::crossover);

    py::class_<RegimeReport>(m, "RegimeReport")
        .def_readonly("regime", &RegimeReport::regime)
        .def_readonly("tau_c", &RegimeReport::tau_c)
        .def_readonly("tau_beta", &RegimeReport::tau_beta)
        .def_readonly("t_dec_estimate", &RegimeReport::t_dec_estimate)
        .def_readonly("order_of_magnitude_only", &RegimeReport::order_of_magnitude_only);
    m.def("classify_regime", &classify_regime, py::arg("env"));

    py::class_<PlannerOptions>(m, "PlannerOptions")
        .def(py::init<>())
        .def_readwrite("n_limit", &PlannerOptions::n_limit)
        .def_readwrite("exhaustive_scan_limit", &PlannerOptions::exhaustive_scan_limit);
    m.def("min_cycles_for_target", &min_cycles_for_target, py::arg("env"), py::arg("t"),
          py::arg("target_coherence"), py::arg("cfg") = QuadratureConfig{},
          py::arg("opts") = PlannerOptions{});

    m.def("run_task", &run_task_to_string, py::arg("config_text"),
          "Parse a config file body, execute its task, and return the CSV/JSON/report text");

    m.attr("__version__") = "0.1.0";
}
