#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ringdeco/cli.hpp"

namespace rc = ringdeco::cli;

namespace {

struct SharedOptions {
    std::string preset;
    std::string config;
    std::string out;
    bool svg = false;
    std::vector<std::string> overrides;
};

void add_shared(CLI::App* sub, SharedOptions& o, bool preset_option)
{
    if (preset_option)
        sub->add_option("--preset", o.preset, "Start from a named preset (universe, earth, person, c60, fig2)");
    sub->add_option("--config", o.config, "INI file layered over the preset");
    sub->add_option("--out", o.out, "Output file (stdout when omitted)");
    sub->add_flag("--svg", o.svg, "Also write an SVG plot next to --out");
    sub->add_option("--set", o.overrides, "Override a key, section.key=value (repeatable)");
}

rc::KeyValues merge(const SharedOptions& o)
{
    rc::KeyValues values;
    if (!o.preset.empty())
        values = rc::preset_values(o.preset);
    if (!o.config.empty())
        for (const auto& [k, v] : rc::read_config_file(o.config))
            values[k] = v;
    for (const auto& s : o.overrides)
        rc::apply_override(values, s);
    return values;
}

rc::ScenarioConfig load(const SharedOptions& o)
{
    return rc::build_scenario(merge(o));
}

rc::CommandOptions command_options(const SharedOptions& o)
{
    rc::CommandOptions c;
    if (!o.out.empty())
        c.out = o.out;
    c.svg = o.svg;
    return c;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Decoherence of a relativistic ring of coupled oscillators"};
    app.set_version_flag("--version", std::string(rc::tool_version));
    app.require_subcommand(1);

    SharedOptions preset_opts, curve_opts, wigner_opts, validate_opts;
    std::string preset_name;

    auto* preset = app.add_subcommand("preset", "Report the derived scales of a named preset");
    preset->add_option("name", preset_name, "Preset name")->required();
    add_shared(preset, preset_opts, false);

    auto* curve = app.add_subcommand("curve", "Sample |rho_12(t)| to CSV");
    add_shared(curve, curve_opts, true);

    auto* wigner = app.add_subcommand("wigner", "Evaluate the cat-state Wigner function on a grid");
    add_shared(wigner, wigner_opts, true);

    auto* validate = app.add_subcommand("validate", "Compare the closed-form overlap with the Fock-space oracle");
    add_shared(validate, validate_opts, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? rc::exit_ok : rc::exit_config;
    }

    try {
        if (preset->parsed()) {
            preset_opts.preset = preset_name;
            return rc::run_preset(load(preset_opts), preset_name, command_options(preset_opts), std::cout, std::cerr);
        }
        if (curve->parsed())
            return rc::curve_command(load(curve_opts), command_options(curve_opts), std::cout, std::cerr);
        if (wigner->parsed())
            return rc::wigner_command(load(wigner_opts), command_options(wigner_opts), std::cout, std::cerr);
        if (validate->parsed()) {
            // The sweep is dimensionless; a minimal ring and state keep build_scenario satisfied.
            auto values = merge(validate_opts);
            values.try_emplace("system.n_particles", "3");
            if (!values.contains("state.kind") && !values.contains("state.v1") && !values.contains("state.alpha")) {
                values.try_emplace("state.p1", "0");
                values.try_emplace("state.p2", "0");
            }
            return rc::validate_command(rc::build_scenario(values), command_options(validate_opts), std::cout,
                                        std::cerr);
        }
    } catch (const ringdeco::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return rc::exit_config;
    } catch (const ringdeco::ValidityError& e) {
        std::cerr << "validity error: " << e.what() << '\n';
        return rc::exit_validity;
    } catch (const ringdeco::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return rc::exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return rc::exit_unexpected;
    }
    return rc::exit_unexpected;
}
