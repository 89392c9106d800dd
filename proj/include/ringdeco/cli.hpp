#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ringdeco/curves.hpp"
#include "ringdeco/model.hpp"
#include "ringdeco/wigner.hpp"

namespace ringdeco::cli {

inline constexpr std::string_view tool_version = "1.0.0";

enum ExitCode : int {
    exit_ok = 0,
    exit_unexpected = 1,
    exit_config = 2,
    exit_numeric = 3,
    exit_validity = 4,
};

// Flat "section.key" -> value view of a scenario, in the order the layers were merged.
using KeyValues = std::map<std::string, std::string>;

// Preset layers. Throws ConfigError for unknown names.
KeyValues preset_values(std::string_view name);
std::vector<std::string> preset_names();

// Reads an INI-style file ("key = value" under [section] headers, '#' or ';' comments).
KeyValues read_config_file(const std::string& path);
KeyValues parse_config_text(const std::string& text);

// "section.key=value".
void apply_override(KeyValues& values, std::string_view assignment);

enum class StateKind { momentum, cat };

struct ScenarioConfig {
    RingConfig system;
    std::optional<double> temperature;  // K

    StateKind kind = StateKind::momentum;
    MomentumSuperposition momenta;
    bool from_velocities = false;
    double v1 = 0;
    double v2 = 0;
    CatParameters cat;
    bool gamma_overridden = false;

    std::string method = "large-N";
    std::optional<double> t_max;        // s
    std::optional<double> omega_t_max;
    int samples = 200;
    std::vector<double> omega_t = {0.0};
    int grid_resolution = 512;
    int cutoff = 64;
    double max_delta = 0.02;
    int delta_points = 5;
    int time_points = 20;
    bool equal_momenta = false;

    KeyValues source;  // merged key-values the scenario was built from
};

// Builds and validates a scenario. Unknown keys, malformed numbers or conflicting
// state inputs raise ConfigError.
ScenarioConfig build_scenario(const KeyValues& values);

std::complex<double> parse_complex(std::string_view text);

// FNV-1a over the canonical "section.key=value\n" listing.
std::uint64_t config_hash(const KeyValues& values);

std::string provenance_header(const KeyValues& values, std::string_view method);

// Formats a double with 15 significant digits in scientific notation.
std::string format_number(double value);

struct CommandOptions {
    std::optional<std::string> out;  // stdout when empty (CSV/JSON) or required (multi-file)
    bool svg = false;
};

// Each command returns the process exit code and reports problems on `log`.
int run_preset(const ScenarioConfig& scenario, std::string_view name, const CommandOptions& opts,
               std::ostream& out, std::ostream& log);
int curve_command(const ScenarioConfig& scenario, const CommandOptions& opts, std::ostream& out, std::ostream& log);
int wigner_command(const ScenarioConfig& scenario, const CommandOptions& opts, std::ostream& out,
                   std::ostream& log);
int validate_command(const ScenarioConfig& scenario, const CommandOptions& opts, std::ostream& out,
                     std::ostream& log);

// Writers shared by the commands.
void write_curve_csv(std::ostream& os, const DecoherenceCurve& curve, double omega, const KeyValues& source);
void write_curve_svg(std::ostream& os, const DecoherenceCurve& curve, double omega, double plateau_value);
void write_wigner_csv(std::ostream& os, const WignerField& field, const KeyValues& source);
void write_wigner_svg(std::ostream& os, const WignerField& field, double n_particles, double omega_t);

}  // namespace ringdeco::cli
