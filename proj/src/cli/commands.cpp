#include "ringdeco/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include "json.hpp"

#include "ringdeco/fock.hpp"
#include "ringdeco/squeeze.hpp"

namespace ringdeco::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double default_omega_t_max = 20.0;
constexpr double no_decoherence_below = 0.01;
constexpr double oracle_tolerance = 1e-6;
constexpr double approx_tolerance = 5e-4;
constexpr double approx_squeeze_limit = 0.01;

// JSON has no infinity; non-finite values are written as strings.
json number(double v)
{
    if (std::isfinite(v))
        return v;
    if (std::isnan(v))
        return "nan";
    return v > 0 ? "inf" : "-inf";
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> out(static_cast<std::size_t>(std::max(n, 0)));
    if (n == 1)
        out[0] = b;
    for (int i = 0; i < n && n > 1; ++i)
        out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return out;
}

std::ofstream open_output(const fs::path& path)
{
    std::ofstream os(path);
    if (!os)
        throw ConfigError(fmt::format("cannot write '{}'", path.string()));
    return os;
}

fs::path sibling(const fs::path& base, std::string_view suffix, std::string_view extension)
{
    fs::path p = base;
    p.replace_filename(base.stem().string() + std::string(suffix) + std::string(extension));
    return p;
}

const MomentumSuperposition& require_momentum(const ScenarioConfig& sc, std::string_view command)
{
    if (sc.kind != StateKind::momentum)
        throw ConfigError(fmt::format("{} needs a momentum superposition (state.p1/p2 or state.v1/v2)", command));
    validate_state(sc.system, sc.momenta);
    return sc.momenta;
}

const CatParameters& require_cat(const ScenarioConfig& sc, std::string_view command)
{
    if (sc.kind != StateKind::cat)
        throw ConfigError(fmt::format("{} needs a cat state (state.alpha, state.beta)", command));
    sc.cat.validate();
    return sc.cat;
}

std::vector<double> curve_times(const ScenarioConfig& sc)
{
    const double omega = sc.system.coupling;
    double t_end = default_omega_t_max / omega;
    if (sc.t_max)
        t_end = *sc.t_max;
    else if (sc.omega_t_max)
        t_end = *sc.omega_t_max / omega;
    return linspace(0.0, t_end, sc.samples);
}

std::string_view regime(double ratio)
{
    if (ratio < no_decoherence_below)
        return "no-decoherence";
    if (ratio < 1)
        return "partial";
    return "decoherence";
}

json momentum_report(const ScenarioConfig& sc, std::string_view name)
{
    const auto& cfg = sc.system;
    const auto& state = require_momentum(sc, "preset");
    const auto scalars = derive_scalars(cfg, state);
    const double ratio = n_over_n0(cfg, state);

    json j;
    j["preset"] = name;
    j["state"] = "momentum";
    j["n_particles"] = cfg.n_particles;
    j["particle_mass_kg"] = cfg.particle_mass;
    j["omega_rad_per_s"] = cfg.coupling;
    if (sc.from_velocities) {
        j["v1_m_per_s"] = sc.v1;
        j["v2_m_per_s"] = sc.v2;
    }
    j["p1_kg_m_per_s"] = state.p1;
    j["p2_kg_m_per_s"] = state.p2;
    j["delta_e_joule"] = number(scalars.delta_e);
    j["energy_gap_ratio"] = number(energy_gap_ratio(state.p1, state.p2, cfg.total_mass(), cfg.light_speed));
    j["n0"] = number(scalars.n0);
    j["n_over_n0"] = number(ratio);
    j["decoherence_time_s"] = number(decoherence_time(cfg, state));
    j["plateau"] = number(0.5 * std::exp(-ratio));
    j["regime"] = regime(ratio);
    j["squeeze_r1"] = scalars.squeeze_r1;
    j["squeeze_r2"] = scalars.squeeze_r2;

    json warnings = json::array();
    if (sc.temperature) {
        const auto check = validate_low_temperature(cfg, *sc.temperature);
        j["temperature_check"] = {{"temperature_k", *sc.temperature},
                                  {"pass", check.pass},
                                  {"margin", number(check.margin)},
                                  {"threshold_temperature_k", number(check.threshold_temperature)}};
        if (!check.pass)
            warnings.push_back(fmt::format("k_B T is not small against the level spacing (margin {:.3g})",
                                           check.margin));
    }
    if (cfg.n_particles < 100)
        warnings.push_back("N < 100: the large-N Bessel form is only indicative");
    j["warnings"] = warnings;
    return j;
}

json cat_report(const ScenarioConfig& sc, std::string_view name)
{
    const auto& cfg = sc.system;
    const auto& cat = require_cat(sc, "preset");
    const auto limits = visibility_limits(cat, cfg);

    json j;
    j["preset"] = name;
    j["state"] = "cat";
    j["n_particles"] = cfg.n_particles;
    j["alpha"] = {cat.alpha.real(), cat.alpha.imag()};
    j["beta"] = {cat.beta.real(), cat.beta.imag()};
    j["sigma_m"] = cat.sigma;
    j["gamma"] = cat.gamma;
    j["gamma_overridden"] = sc.gamma_overridden;
    j["scaled_gamma"] = cat.scaled_gamma();
    j["normalization_sq"] = normalization_sq(cat.alpha, cat.beta);
    j["visibility_small_t_rate"] = number(limits.small_t_rate);
    j["visibility_plateau_exponent"] = number(limits.plateau_exponent);

    json samples = json::array();
    json warnings = json::array();
    for (double wt : sc.omega_t) {
        const double t = wt / cfg.coupling;
        const auto peaks = wigner_peaks(t, cat, cfg);
        samples.push_back({{"omega_t", wt},
                           {"peak_alpha", peaks.alpha},
                           {"peak_beta", peaks.beta},
                           {"peak_interference", peaks.interference},
                           {"visibility", number(fringe_visibility(t, cat, cfg))},
                           {"visibility_ratio", number(visibility_ratio(t, cat, cfg))},
                           {"stable_peaks", peaks.stability.ok}});
        for (const auto& v : peaks.stability.violations)
            warnings.push_back(fmt::format("omega t = {}: {}", wt, v));
    }
    j["samples"] = samples;
    j["warnings"] = warnings;
    return j;
}

void write_wigner_files(const WignerField& field, const ScenarioConfig& sc, double wt, const fs::path& csv_path,
                        bool svg)
{
    {
        auto os = open_output(csv_path);
        write_wigner_csv(os, field, sc.source);
    }
    if (svg) {
        auto os = open_output(sibling(csv_path, "", ".svg"));
        write_wigner_svg(os, field, sc.system.n_particles, wt);
    }
}

}  // namespace

int run_preset(const ScenarioConfig& scenario, std::string_view name, const CommandOptions& opts, std::ostream& out,
               std::ostream& log)
{
    json report = scenario.kind == StateKind::momentum ? momentum_report(scenario, name) : cat_report(scenario, name);
    report["config_hash"] = fmt::format("fnv1a64:{:016x}", config_hash(scenario.source));
    report["version"] = tool_version;

    for (const auto& w : report["warnings"])
        log << "warning: " << w.get<std::string>() << '\n';

    if (opts.svg) {
        if (!opts.out)
            throw ConfigError("--svg needs --out to place the plot files");
        const fs::path base(*opts.out);
        if (scenario.kind == StateKind::momentum) {
            const auto times = curve_times(scenario);
            const auto curve = curve_sample(parse_curve_method(scenario.method), times, scenario.system,
                                            scenario.momenta);
            auto csv = open_output(sibling(base, "_curve", ".csv"));
            write_curve_csv(csv, curve, scenario.system.coupling, scenario.source);
            auto svg = open_output(sibling(base, "_curve", ".svg"));
            write_curve_svg(svg, curve, scenario.system.coupling,
                            plateau(scenario.system.n_particles, derive_scalars(scenario.system, scenario.momenta).n0));
        } else {
            for (double wt : scenario.omega_t) {
                const auto field =
                    wigner_field(wt / scenario.system.coupling, scenario.cat, scenario.system, scenario.grid_resolution);
                write_wigner_files(field, scenario, wt, sibling(base, fmt::format("_wt{:g}", wt), ".csv"), true);
            }
        }
    }

    const std::string text = report.dump(2) + "\n";
    if (opts.out) {
        auto os = open_output(*opts.out);
        os << text;
    } else {
        out << text;
    }
    return exit_ok;
}

int curve_command(const ScenarioConfig& scenario, const CommandOptions& opts, std::ostream& out, std::ostream& log)
{
    const auto& state = require_momentum(scenario, "curve");
    const auto method = parse_curve_method(scenario.method);
    const auto times = curve_times(scenario);
    const auto curve = curve_sample(method, times, scenario.system, state);
    for (const auto& w : curve.warnings)
        log << "warning: " << w << '\n';
    if (curve.underflow_flag)
        log << "warning: coherence underflows double precision; affected rows are flagged\n";

    const double omega = scenario.system.coupling;
    if (opts.out) {
        auto os = open_output(*opts.out);
        write_curve_csv(os, curve, omega, scenario.source);
    } else {
        write_curve_csv(out, curve, omega, scenario.source);
    }
    if (opts.svg) {
        if (!opts.out)
            throw ConfigError("--svg needs --out to place the plot file");
        auto os = open_output(sibling(*opts.out, "", ".svg"));
        write_curve_svg(os, curve, omega, plateau(scenario.system.n_particles,
                                                  derive_scalars(scenario.system, state).n0));
    }
    return exit_ok;
}

int wigner_command(const ScenarioConfig& scenario, const CommandOptions& opts, std::ostream& out, std::ostream& log)
{
    const auto& cat = require_cat(scenario, "wigner");
    if (scenario.omega_t.empty())
        throw ConfigError("run.omega_t lists no times");
    if (scenario.omega_t.size() > 1 && !opts.out)
        throw ConfigError("several run.omega_t values need --out for the per-time files");
    if (opts.svg && !opts.out)
        throw ConfigError("--svg needs --out to place the plot file");

    const auto& cfg = scenario.system;
    for (double wt : scenario.omega_t) {
        const double t = wt / cfg.coupling;
        const auto stability = peak_stability(t, cat, cfg);
        for (const auto& v : stability.violations)
            log << fmt::format("warning: omega t = {}: {}\n", wt, v);
        const auto field = wigner_field(t, cat, cfg, scenario.grid_resolution);
        if (field.tails_grow)
            log << fmt::format("warning: omega t = {}: field tails grow with |p|, |q|; boundary mass {:.3e} on the "
                               "tightest box\n",
                               wt, field.boundary);
        if (!opts.out) {
            write_wigner_csv(out, field, scenario.source);
            continue;
        }
        const fs::path base(*opts.out);
        const fs::path path =
            scenario.omega_t.size() > 1 ? sibling(base, fmt::format("_wt{:g}", wt), base.extension().string()) : base;
        write_wigner_files(field, scenario, wt, path, opts.svg);
    }
    return exit_ok;
}

int validate_command(const ScenarioConfig& scenario, const CommandOptions& opts, std::ostream& out,
                     std::ostream& log)
{
    if (!(scenario.max_delta >= 0) || !(scenario.max_delta < 1))
        throw ConfigError(fmt::format("run.max_delta must lie in [0, 1), got {}", scenario.max_delta));
    const int cutoff = scenario.cutoff;
    if (cutoff < min_mode_cutoff)
        throw ConfigError(fmt::format("run.cutoff must be >= {}, got {}", min_mode_cutoff, cutoff));

    const auto deltas = linspace(0.0, scenario.max_delta, scenario.delta_points);
    const auto taus = linspace(0.0, 4 * std::numbers::pi, scenario.time_points);
    std::vector<std::pair<double, double>> pairs;
    for (double d1 : deltas) {
        if (scenario.equal_momenta) {
            pairs.emplace_back(d1, d1);
            continue;
        }
        for (double d2 : deltas)
            pairs.emplace_back(d1, d2);
    }

    std::string table = provenance_header(scenario.source, "validate");
    table += fmt::format("# cutoff: {}\n", cutoff);
    table += "delta1,delta2,max_exact_vs_oracle,max_cutoff_difference,max_approx_vs_exact,approx_checked,status\n";
    std::vector<std::string> breaches;

    for (const auto& [d1, d2] : pairs) {
        const auto exact = exact_overlap_trajectory(d1, d2, 1.0, taus);
        const double eps = (d1 - d2) / 3.0;
        const bool approx_checked =
            std::max(frequency_shift_to_squeeze(d1).squeeze_magnitude, frequency_shift_to_squeeze(d2).squeeze_magnitude) <= approx_squeeze_limit;
        double worst_oracle = 0, worst_cutoff = 0, worst_approx = 0;
        std::string status = "ok";
        try {
            const VacuumPropagator bra(d1, cutoff), ket(d2, cutoff);
            const VacuumPropagator bra2(d1, 2 * cutoff), ket2(d2, 2 * cutoff);
            for (std::size_t i = 0; i < taus.size(); ++i) {
                const auto oracle = vacuum_overlap(bra, ket, taus[i]);
                const auto doubled = vacuum_overlap(bra2, ket2, taus[i]);
                worst_oracle = std::max(worst_oracle, std::abs(exact[i] - oracle));
                worst_cutoff = std::max(worst_cutoff, std::abs(oracle - doubled));
                worst_approx =
                    std::max(worst_approx, std::abs(second_order_overlap(eps, 1.0, taus[i]) - std::abs(exact[i])));
            }
            if (!(worst_cutoff < convergence_threshold)) {
                status = "not-converged";
                breaches.push_back(fmt::format("delta1={} delta2={}: |f(D)-f(2D)| = {:.3e}", d1, d2, worst_cutoff));
            } else if (!(worst_oracle <= oracle_tolerance)) {
                status = "oracle-mismatch";
                breaches.push_back(fmt::format("delta1={} delta2={}: |exact - oracle| = {:.3e}", d1, d2, worst_oracle));
            } else if (approx_checked && !(worst_approx <= approx_tolerance)) {
                status = "approx-mismatch";
                breaches.push_back(
                    fmt::format("delta1={} delta2={}: |approx - exact| = {:.3e}", d1, d2, worst_approx));
            }
        } catch (const LeakageError& e) {
            status = "leakage";
            breaches.push_back(fmt::format("delta1={} delta2={}: {}", d1, d2, e.what()));
        }
        table += fmt::format("{},{},{},{},{},{},{}\n", format_number(d1), format_number(d2),
                             format_number(worst_oracle), format_number(worst_cutoff), format_number(worst_approx),
                             approx_checked ? 1 : 0, status);
    }

    if (opts.out) {
        auto os = open_output(*opts.out);
        os << table;
    } else {
        out << table;
    }
    for (const auto& b : breaches)
        log << "breach: " << b << '\n';
    if (!breaches.empty()) {
        log << fmt::format("validate: {} of {} parameter pairs breached tolerance\n", breaches.size(), pairs.size());
        return exit_numeric;
    }
    return exit_ok;
}

}  // namespace ringdeco::cli
