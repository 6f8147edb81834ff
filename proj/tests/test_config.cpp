#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dephase/config.hpp"

using namespace dephase;

namespace {

ExperimentConfig parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

const char* kCurveConfig = R"(# Fig-1 style curve
[environment]
alpha = 0.25
omega_c_over_T = 100
[task]
type = curve
t_start = 0.01
t_stop = 100
t_count = 5
t_scale = log
[output]
format = csv
precision = 12
)";

}  // namespace

TEST_CASE("curve config parses with defaults") {
    const ExperimentConfig config = parse_text(kCurveConfig);
    CHECK(config.task == TaskKind::curve);
    CHECK(config.alpha == 0.25);
    CHECK_FALSE(config.omega_c_explicit);
    REQUIRE(config.omega_c_over_temperature.has_value());
    CHECK(*config.omega_c_over_temperature == 100.0);
    CHECK(config.environment().temperature == doctest::Approx(0.01));
    CHECK(config.quadrature.relative_tolerance == 1e-8);

    const auto grid = config.time_grid();
    REQUIRE(grid.size() == 5);
    CHECK(grid.front() == doctest::Approx(0.01));
    CHECK(grid.back() == doctest::Approx(100.0));
    CHECK(grid[1] / grid[0] == doctest::Approx(10.0));  // log spacing
}

TEST_CASE("serialization round-trips to a fixed point") {
    const ExperimentConfig first = parse_text(kCurveConfig);
    const std::string canonical = serialize_config(first);
    const ExperimentConfig second = parse_text(canonical);
    CHECK(first == second);
    CHECK(serialize_config(second) == canonical);
}

TEST_CASE("n_list accepts integers and ranges") {
    const ExperimentConfig config = parse_text(R"(
[environment]
zero_temperature = true
[task]
type = pulse-scan
t = 2
n_list = 1,2,4..6,10
)");
    CHECK(config.n_list == std::vector<long>{1, 2, 4, 5, 6, 10});
    const std::string canonical = serialize_config(config);
    CHECK(parse_text(canonical).n_list == config.n_list);
}

TEST_CASE("temperature selection must be unique") {
    CHECK_THROWS_AS(parse_text(R"(
[environment]
temperature = 1
zero_temperature = true
[task]
type = curve
)"),
                    ConfigError);
    CHECK_THROWS_AS(parse_text("[task]\ntype = curve\n"), ConfigError);  // none chosen
}

TEST_CASE("diagnostics carry line and field") {
    try {
        parse_text("[environment]\nzero_temperature = true\nalpha = abc\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& error) {
        CHECK(error.line == 3);
        CHECK(error.field == "alpha");
    }
    try {
        parse_text("[environment]\nbogus_key = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& error) {
        CHECK(error.line == 2);
        CHECK(error.field == "bogus_key");
    }
    CHECK_THROWS_AS(parse_text("[nonsense]\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("key_without_section = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[environment]\nno equals sign here\n"), ConfigError);
}

TEST_CASE("task-specific validation") {
    CHECK_THROWS_AS(parse_text(R"(
[environment]
zero_temperature = true
[task]
type = pulse-scan
t = 2
)"),
                    ConfigError);  // n_list missing
    CHECK_THROWS_AS(parse_text(R"(
[environment]
zero_temperature = true
[task]
type = plan
t = 2
target_coherence = 1.5
)"),
                    ConfigError);
    CHECK_THROWS_AS(parse_text(R"(
[environment]
zero_temperature = true
[task]
type = curve
t_start = 0
t_count = 3
t_scale = log
)"),
                    ConfigError);  // log grid from zero
}

TEST_CASE("number formatting is locale-proof and precision-capped") {
    CHECK(format_number(1.0, 12) == "1");
    CHECK(format_number(0.5, 12) == "0.5");
    CHECK(format_number(1.0 / 3.0, 6) == "0.333333");
    CHECK(format_number(1234567.0, 4) == "1.235e+06");
    CHECK(format_number(0.0229924650732, 8) == "0.022992465");
}
