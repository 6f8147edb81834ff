#include "dephase/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <system_error>

namespace dephase {

std::string format_number(double value, int precision) {
    char buffer[64];
    const auto [end, ec] =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, precision);
    if (ec != std::errc{}) return "nan";
    return std::string(buffer, end);
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, int line, const std::string& key) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("invalid number '" + value + "' for key '" + key + "'", line, key);
    return out;
}

long parse_long(const std::string& value, int line, const std::string& key) {
    long out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("invalid integer '" + value + "' for key '" + key + "'", line, key);
    return out;
}

bool parse_bool(const std::string& value, int line, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("invalid boolean '" + value + "' for key '" + key + "'", line, key);
}

// Comma list of entries, each an integer or an inclusive range `a..b`.
std::vector<long> parse_n_list(const std::string& value, int line, const std::string& key) {
    std::vector<long> out;
    std::stringstream stream(value);
    std::string token;
    while (std::getline(stream, token, ',')) {
        token = trim(token);
        if (token.empty()) throw ConfigError("empty entry in n_list", line, key);
        const auto dots = token.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_long(token, line, key));
        } else {
            const long first = parse_long(trim(token.substr(0, dots)), line, key);
            const long last = parse_long(trim(token.substr(dots + 2)), line, key);
            if (last < first) throw ConfigError("descending range in n_list", line, key);
            for (long n = first; n <= last; ++n) out.push_back(n);
        }
    }
    if (out.empty()) throw ConfigError("n_list is empty", line, key);
    return out;
}

std::string n_list_to_string(const std::vector<long>& list) {
    std::string out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(list[i]);
    }
    return out;
}

}  // namespace

EnvironmentSpec ExperimentConfig::environment() const {
    EnvironmentSpec env;
    env.alpha = alpha;
    env.omega_c = omega_c;
    env.ohmicity_n = ohmicity_n;
    if (zero_temperature)
        env.temperature = 0.0;
    else if (temperature)
        env.temperature = *temperature;
    else if (omega_c_over_temperature)
        env.temperature = omega_c / *omega_c_over_temperature;
    env.validate();
    return env;
}

std::vector<double> ExperimentConfig::time_grid() const {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(t_count));
    if (t_count == 1) {
        grid.push_back(t_start);
        return grid;
    }
    if (t_scale == GridScale::log) {
        const double ratio = std::log(t_stop / t_start);
        for (long i = 0; i < t_count; ++i)
            grid.push_back(t_start * std::exp(ratio * static_cast<double>(i) / static_cast<double>(t_count - 1)));
        grid.back() = t_stop;
    } else {
        const double step = (t_stop - t_start) / static_cast<double>(t_count - 1);
        for (long i = 0; i < t_count; ++i) grid.push_back(t_start + step * static_cast<double>(i));
        grid.back() = t_stop;
    }
    return grid;
}

void ExperimentConfig::validate() const {
    const int temperature_choices =
        (omega_c_over_temperature ? 1 : 0) + (temperature ? 1 : 0) + (zero_temperature ? 1 : 0);
    if (temperature_choices != 1)
        throw ConfigError("exactly one of omega_c_over_T / temperature / zero_temperature must be set", 0,
                          "environment");
    try {
        environment();
    } catch (const std::invalid_argument& error) {
        throw ConfigError(error.what(), 0, "environment");
    }
    if (task == TaskKind::curve) {
        if (t_count < 1) throw ConfigError("t_count must be >= 1", 0, "t_count");
        if (!(t_start >= 0.0)) throw ConfigError("t_start must be >= 0", 0, "t_start");
        if (t_count > 1 && !(t_stop > t_start))
            throw ConfigError("t_stop must exceed t_start", 0, "t_stop");
        if (t_scale == GridScale::log && !(t_start > 0.0))
            throw ConfigError("log grid requires t_start > 0", 0, "t_start");
    }
    if (task == TaskKind::pulse_scan) {
        if (!(time > 0.0)) throw ConfigError("pulse-scan requires t > 0", 0, "t");
        if (n_list.empty()) throw ConfigError("pulse-scan requires n_list", 0, "n_list");
        for (long n : n_list)
            if (n < 1) throw ConfigError("n_list entries must be >= 1", 0, "n_list");
    }
    if (task == TaskKind::plan) {
        if (!(time > 0.0)) throw ConfigError("plan requires t > 0", 0, "t");
        if (!(target_coherence > 0.0) || !(target_coherence < 1.0))
            throw ConfigError("target_coherence must lie in (0, 1)", 0, "target_coherence");
        if (n_limit < 1) throw ConfigError("n_limit must be >= 1", 0, "n_limit");
    }
    if (task == TaskKind::verify) {
        if (mode_count < 10) throw ConfigError("mode_count must be >= 10", 0, "mode_count");
        if (fock_cutoff < 2) throw ConfigError("fock_cutoff must be >= 2", 0, "fock_cutoff");
        if (!(fock_coupling > 0.0)) throw ConfigError("fock_coupling must be > 0", 0, "fock_coupling");
    }
    try {
        quadrature.validate();
    } catch (const std::invalid_argument& error) {
        throw ConfigError(error.what(), 0, "quadrature");
    }
    if (precision < 2 || precision > 17) throw ConfigError("precision must lie in [2, 17]", 0, "precision");
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    std::string section;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(raw);
        if (text.empty() || text[0] == '#') continue;
        if (text.front() == '[') {
            if (text.back() != ']') throw ConfigError("unterminated section header", line);
            section = trim(text.substr(1, text.size() - 2));
            if (section != "environment" && section != "task" && section != "quadrature" &&
                section != "output")
                throw ConfigError("unknown section '" + section + "'", line, section);
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError("expected 'key = value'", line, key);

        if (section == "environment") {
            if (key == "alpha")
                config.alpha = parse_double(value, line, key);
            else if (key == "omega_c") {
                config.omega_c = parse_double(value, line, key);
                config.omega_c_explicit = true;
            } else if (key == "ohmicity_n")
                config.ohmicity_n = parse_double(value, line, key);
            else if (key == "omega_c_over_T")
                config.omega_c_over_temperature = parse_double(value, line, key);
            else if (key == "temperature")
                config.temperature = parse_double(value, line, key);
            else if (key == "zero_temperature")
                config.zero_temperature = parse_bool(value, line, key);
            else
                throw ConfigError("unknown key '" + key + "' in [environment]", line, key);
        } else if (section == "task") {
            if (key == "type") {
                if (value == "curve")
                    config.task = TaskKind::curve;
                else if (value == "pulse-scan")
                    config.task = TaskKind::pulse_scan;
                else if (value == "verify")
                    config.task = TaskKind::verify;
                else if (value == "plan")
                    config.task = TaskKind::plan;
                else
                    throw ConfigError("unknown task type '" + value + "'", line, key);
            } else if (key == "t_start")
                config.t_start = parse_double(value, line, key);
            else if (key == "t_stop")
                config.t_stop = parse_double(value, line, key);
            else if (key == "t_count")
                config.t_count = parse_long(value, line, key);
            else if (key == "t_scale") {
                if (value == "log")
                    config.t_scale = GridScale::log;
                else if (value == "linear")
                    config.t_scale = GridScale::linear;
                else
                    throw ConfigError("t_scale must be log or linear", line, key);
            } else if (key == "t")
                config.time = parse_double(value, line, key);
            else if (key == "n_list")
                config.n_list = parse_n_list(value, line, key);
            else if (key == "target_coherence")
                config.target_coherence = parse_double(value, line, key);
            else if (key == "n_limit")
                config.n_limit = parse_long(value, line, key);
            else if (key == "mode_count")
                config.mode_count = parse_long(value, line, key);
            else if (key == "fock_cutoff")
                config.fock_cutoff = static_cast<int>(parse_long(value, line, key));
            else if (key == "fock_coupling")
                config.fock_coupling = parse_double(value, line, key);
            else if (key == "fast")
                config.fast = parse_bool(value, line, key);
            else
                throw ConfigError("unknown key '" + key + "' in [task]", line, key);
        } else if (section == "quadrature") {
            if (key == "tolerance")
                config.quadrature.relative_tolerance = parse_double(value, line, key);
            else if (key == "omega_max_factor")
                config.quadrature.omega_max_factor = parse_double(value, line, key);
            else if (key == "max_panels")
                config.quadrature.max_panels = parse_long(value, line, key);
            else
                throw ConfigError("unknown key '" + key + "' in [quadrature]", line, key);
        } else if (section == "output") {
            if (key == "path")
                config.out_path = value;
            else if (key == "format") {
                if (value == "csv")
                    config.format = OutputFormat::csv;
                else if (value == "json")
                    config.format = OutputFormat::json;
                else
                    throw ConfigError("format must be csv or json", line, key);
            } else if (key == "precision")
                config.precision = static_cast<int>(parse_long(value, line, key));
            else
                throw ConfigError("unknown key '" + key + "' in [output]", line, key);
        } else {
            throw ConfigError("key '" + key + "' outside any section", line, key);
        }
    }
    config.validate();
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream out;
    const int p = 17;  // round-trip exact
    out << "[environment]\n";
    out << "alpha = " << format_number(c.alpha, p) << "\n";
    if (c.omega_c_explicit) out << "omega_c = " << format_number(c.omega_c, p) << "\n";
    out << "ohmicity_n = " << format_number(c.ohmicity_n, p) << "\n";
    if (c.zero_temperature) out << "zero_temperature = true\n";
    if (c.temperature) out << "temperature = " << format_number(*c.temperature, p) << "\n";
    if (c.omega_c_over_temperature)
        out << "omega_c_over_T = " << format_number(*c.omega_c_over_temperature, p) << "\n";

    out << "\n[task]\n";
    switch (c.task) {
        case TaskKind::curve:
            out << "type = curve\n";
            out << "t_start = " << format_number(c.t_start, p) << "\n";
            out << "t_stop = " << format_number(c.t_stop, p) << "\n";
            out << "t_count = " << c.t_count << "\n";
            out << "t_scale = " << (c.t_scale == GridScale::log ? "log" : "linear") << "\n";
            break;
        case TaskKind::pulse_scan:
            out << "type = pulse-scan\n";
            out << "t = " << format_number(c.time, p) << "\n";
            out << "n_list = " << n_list_to_string(c.n_list) << "\n";
            break;
        case TaskKind::plan:
            out << "type = plan\n";
            out << "t = " << format_number(c.time, p) << "\n";
            out << "target_coherence = " << format_number(c.target_coherence, p) << "\n";
            out << "n_limit = " << c.n_limit << "\n";
            break;
        case TaskKind::verify:
            out << "type = verify\n";
            out << "mode_count = " << c.mode_count << "\n";
            out << "fock_cutoff = " << c.fock_cutoff << "\n";
            out << "fock_coupling = " << format_number(c.fock_coupling, p) << "\n";
            out << "fast = " << (c.fast ? "true" : "false") << "\n";
            break;
    }

    out << "\n[quadrature]\n";
    out << "tolerance = " << format_number(c.quadrature.relative_tolerance, p) << "\n";
    out << "omega_max_factor = " << format_number(c.quadrature.omega_max_factor, p) << "\n";
    out << "max_panels = " << c.quadrature.max_panels << "\n";

    out << "\n[output]\n";
    if (!c.out_path.empty()) out << "path = " << c.out_path << "\n";
    out << "format = " << (c.format == OutputFormat::csv ? "csv" : "json") << "\n";
    out << "precision = " << c.precision << "\n";
    return out.str();
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.alpha == b.alpha && a.omega_c == b.omega_c && a.omega_c_explicit == b.omega_c_explicit &&
           a.ohmicity_n == b.ohmicity_n && a.omega_c_over_temperature == b.omega_c_over_temperature &&
           a.temperature == b.temperature && a.zero_temperature == b.zero_temperature && a.task == b.task &&
           a.t_start == b.t_start && a.t_stop == b.t_stop && a.t_count == b.t_count &&
           a.t_scale == b.t_scale && a.time == b.time && a.n_list == b.n_list &&
           a.target_coherence == b.target_coherence && a.n_limit == b.n_limit &&
           a.mode_count == b.mode_count && a.fock_cutoff == b.fock_cutoff &&
           a.fock_coupling == b.fock_coupling && a.fast == b.fast &&
           a.quadrature.relative_tolerance == b.quadrature.relative_tolerance &&
           a.quadrature.omega_max_factor == b.quadrature.omega_max_factor &&
           a.quadrature.max_panels == b.quadrature.max_panels && a.out_path == b.out_path &&
           a.format == b.format && a.precision == b.precision;
}

}  // namespace dephase
