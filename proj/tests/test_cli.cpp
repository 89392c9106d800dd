#include "doctest.h"

#include <sstream>

#include "json.hpp"
#include "ringdeco/cli.hpp"

using namespace ringdeco;
using namespace ringdeco::cli;
using doctest::Approx;

namespace {

KeyValues with(KeyValues base, std::initializer_list<std::string_view> assignments)
{
    for (auto a : assignments)
        apply_override(base, a);
    return base;
}

}  // namespace

TEST_CASE("complex literals")
{
    using cd = std::complex<double>;
    CHECK(parse_complex("5+3i") == cd{5, 3});
    CHECK(parse_complex("5-3j") == cd{5, -3});
    CHECK(parse_complex("-2.5") == cd{-2.5, 0});
    CHECK(parse_complex("4i") == cd{0, 4});
    CHECK(parse_complex("1e-3+2E+1i") == cd{1e-3, 20});
    CHECK(parse_complex(" 3 + 7i ") == cd{3, 7});
    CHECK_THROWS_AS(parse_complex("five"), ConfigError);
    CHECK_THROWS_AS(parse_complex("1+2k"), ConfigError);
}

TEST_CASE("config text and overrides")
{
    const auto kv = parse_config_text("# ring\n[system]\nn_particles = 61\n; note\n[state]\nv1 = 3\nv2 = 1\n");
    CHECK(kv.at("system.n_particles") == "61");
    CHECK(kv.at("state.v1") == "3");
    CHECK_THROWS_AS(parse_config_text("n_particles = 5\n"), ConfigError);

    auto o = kv;
    apply_override(o, "state.v1=4");
    CHECK(o.at("state.v1") == "4");
    apply_override(o, "state.v2=");
    CHECK_FALSE(o.contains("state.v2"));
    CHECK_THROWS_AS(apply_override(o, "novalue"), ConfigError);
}

TEST_CASE("scenario building")
{
    const KeyValues base = parse_config_text("[system]\nn_particles = 61\n[state]\nv1 = 1000\nv2 = 200\n");
    const auto s = build_scenario(base);
    CHECK(s.kind == StateKind::momentum);
    CHECK(s.from_velocities);
    CHECK(s.momenta.p1 == Approx(s.system.total_mass() * 1000));

    CHECK_THROWS_AS(build_scenario(with(base, {"system.colour=red"})), ConfigError);
    CHECK_THROWS_AS(build_scenario(with(base, {"state.p1=1e-21"})), ConfigError);
    CHECK_THROWS_AS(build_scenario(with(base, {"system.n_particles="})), ConfigError);
    CHECK_THROWS_AS(build_scenario(with(base, {"system.n_particles=2"})), ConfigError);
    CHECK_THROWS_AS(build_scenario(with(base, {"run.t_max=1", "run.omega_t_max=3"})), ConfigError);
    CHECK_THROWS_AS(build_scenario(with(base, {"run.method=guess"})), ConfigError);
    CHECK_THROWS_AS(build_scenario(with(base, {"state.alpha=1+1i"})), ConfigError);
    CHECK_THROWS_AS(build_scenario(with(base, {"system.temperature=abc"})), ConfigError);

    const auto cat = build_scenario(preset_values("fig2"));
    CHECK(cat.kind == StateKind::cat);
    CHECK(cat.cat.alpha == std::complex<double>{5, 3});
    CHECK(cat.cat.gamma == 10.0);
    CHECK(cat.gamma_overridden);
    CHECK(cat.omega_t == std::vector<double>{0.0, 0.5, 1.0});

    for (const auto& name : preset_names())
        CHECK_NOTHROW(build_scenario(preset_values(name)));
    CHECK_THROWS_AS(preset_values("mars"), ConfigError);
}

TEST_CASE("provenance")
{
    const auto a = preset_values("c60");
    CHECK(config_hash(a) == config_hash(preset_values("c60")));
    CHECK(config_hash(a) != config_hash(with(a, {"state.v1=1001"})));

    const auto header = provenance_header(a, "large-N");
    CHECK(header.starts_with("# ringdeco 1.0.0\n# method: large-N\n# config-hash: fnv1a64:"));
    CHECK(header.size() == std::string("# ringdeco 1.0.0\n# method: large-N\n# config-hash: fnv1a64:").size() + 17);

    CHECK(format_number(0.5) == "5.00000000000000e-01");
    CHECK(std::stod(format_number(1.0 / 3)) == Approx(1.0 / 3).epsilon(1e-14));
}

TEST_CASE("curve command")
{
    auto kv = with(preset_values("c60"), {"run.samples=0"});
    std::ostringstream out, log;
    CHECK(curve_command(build_scenario(kv), {}, out, log) == exit_ok);
    const auto text = out.str();
    CHECK(text.find("t_seconds,omega_t,rho12_abs,method,underflow\n") != std::string::npos);
    CHECK(text.ends_with("t_seconds,omega_t,rho12_abs,method,underflow\n"));

    kv = with(preset_values("c60"), {"run.samples=11", "run.omega_t_max=10"});
    std::ostringstream out2, out3;
    curve_command(build_scenario(kv), {}, out2, log);
    curve_command(build_scenario(kv), {}, out3, log);
    CHECK(out2.str() == out3.str());
    std::istringstream lines(out2.str());
    std::string line;
    int rows = 0;
    while (std::getline(lines, line))
        rows += !line.empty() && line[0] != '#' && line[0] != 't';
    CHECK(rows == 11);
}

TEST_CASE("preset reports")
{
    std::ostringstream out, log;
    CHECK(run_preset(build_scenario(preset_values("person")), "person", {}, out, log) == exit_ok);
    const auto person = nlohmann::json::parse(out.str());
    CHECK(person["decoherence_time_s"].get<double>() == Approx(3.2e-13).epsilon(0.01));
    CHECK(person["regime"] == "no-decoherence");

    std::ostringstream out2;
    CHECK(run_preset(build_scenario(preset_values("c60")), "c60", {}, out2, log) == exit_ok);
    const auto c60 = nlohmann::json::parse(out2.str());
    CHECK(c60["n0"].get<double>() == Approx(1.3e23).epsilon(0.05));
    CHECK_FALSE(c60["warnings"].empty());

    std::ostringstream out3;
    CHECK_THROWS_AS(run_preset(build_scenario(preset_values("c60")), "c60", CommandOptions{{}, true}, out3, log),
                    ConfigError);
}

TEST_CASE("validate command")
{
    const KeyValues base = parse_config_text("[system]\nn_particles = 3\n[state]\np1 = 0\np2 = 0\n");
    std::ostringstream out, log;
    CHECK(validate_command(build_scenario(base), {}, out, log) == exit_ok);

    auto coarse = with(base, {"run.cutoff=8", "run.max_delta=0.9", "run.delta_points=3", "run.time_points=4"});
    std::ostringstream out2;
    CHECK(validate_command(build_scenario(coarse), {}, out2, log) == exit_numeric);
    CHECK(out2.str().find("leakage") != std::string::npos);
}
