#include "ringdeco/cli.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace ringdeco::cli {

namespace {

const std::set<std::string> known_keys = {
    "system.n_particles", "system.particle_mass", "system.coupling", "system.light_speed",
    "system.hbar",        "system.boltzmann",     "system.temperature",

    "state.kind",  "state.p1",    "state.p2",    "state.v1", "state.v2",
    "state.alpha", "state.beta",  "state.sigma", "state.gamma",

    "run.method",     "run.t_max",        "run.omega_t_max", "run.samples",
    "run.omega_t",    "run.grid_resolution", "run.cutoff",   "run.max_delta",
    "run.delta_points", "run.time_points", "run.sweep",
};

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, std::string_view text)
{
    const std::string t = trim(text);
    double value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
        throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
    return value;
}

int parse_int(const std::string& key, std::string_view text)
{
    const std::string t = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
        throw ConfigError(fmt::format("{}: '{}' is not an integer", key, text));
    return value;
}

std::vector<double> parse_list(const std::string& key, std::string_view text)
{
    std::vector<double> out;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(key, item));
    return out;
}

// Shared layer for the carbon-ring momentum presets.
KeyValues table_system(std::string_view n, std::string_view v1, std::string_view v2)
{
    return {
        {"system.n_particles", std::string(n)},
        {"system.particle_mass", "1.99264687992e-26"},
        {"system.coupling", "1e14"},
        {"state.kind", "momentum"},
        {"state.v1", std::string(v1)},
        {"state.v2", std::string(v2)},
        {"run.method", "large-N"},
        {"run.omega_t_max", "20"},
        {"run.samples", "2000"},
    };
}

}  // namespace

std::vector<std::string> preset_names()
{
    return {"universe", "earth", "person", "c60", "fig2"};
}

KeyValues preset_values(std::string_view name)
{
    if (name == "universe")
        return table_system("5e78", "2e6", "1e6");
    if (name == "earth")
        return table_system("2.5e50", "3e4", "2e4");
    if (name == "person")
        return table_system("5e27", "10", "5");
    if (name == "c60")
        return table_system("60", "1000", "200");
    if (name == "fig2")
        return {
            {"system.n_particles", "10"},
            {"system.particle_mass", "1"},
            {"system.coupling", "1"},
            {"system.hbar", "1"},
            {"system.light_speed", "1"},
            {"state.kind", "cat"},
            {"state.alpha", "5+3i"},
            {"state.beta", "3+7i"},
            {"state.sigma", "1"},
            {"state.gamma", "10"},
            {"run.omega_t", "0,0.5,1"},
        };
    throw ConfigError(fmt::format("unknown preset '{}' (expected universe, earth, person, c60 or fig2)", name));
}

KeyValues parse_config_text(const std::string& text)
{
    boost::property_tree::ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(fmt::format("config line {}: {}", e.line(), e.message()));
    }
    KeyValues out;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw ConfigError(fmt::format("config key '{}' is outside any [section]", section));
        for (const auto& [key, value] : body)
            out[section + "." + key] = trim(value.data());
    }
    return out;
}

KeyValues read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(fmt::format("cannot read config file '{}'", path));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_override(KeyValues& values, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError(fmt::format("override '{}' is not of the form section.key=value", assignment));
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    if (key.find('.') == std::string::npos)
        throw ConfigError(fmt::format("override key '{}' needs a section prefix", key));
    if (value.empty())
        values.erase(key);
    else
        values[key] = value;
}

std::complex<double> parse_complex(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (c != ' ')
            s.push_back(c);
    if (s.empty())
        throw ConfigError("empty complex number");
    const auto whole = [&](const std::string& part) { return parse_double("complex", part); };
    if (s.back() != 'i' && s.back() != 'j')
        return {whole(s), 0.0};
    s.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_of = [&](std::string part) {
        if (part.empty() || part == "+")
            return 1.0;
        if (part == "-")
            return -1.0;
        if (part.front() == '+')
            part.erase(0, 1);
        return whole(part);
    };
    if (split == std::string::npos)
        return {0.0, imag_of(s)};
    return {whole(s.substr(0, split)), imag_of(s.substr(split))};
}

ScenarioConfig build_scenario(const KeyValues& values)
{
    std::vector<std::string> unknown;
    for (const auto& [key, value] : values)
        if (!known_keys.contains(key))
            unknown.push_back(key);
    if (!unknown.empty())
        throw ConfigError(fmt::format("unknown config key(s): {}", fmt::join(unknown, ", ")));

    auto get = [&](const std::string& key) -> const std::string* {
        const auto it = values.find(key);
        return it == values.end() ? nullptr : &it->second;
    };
    auto number = [&](const std::string& key) -> std::optional<double> {
        if (const auto* v = get(key))
            return parse_double(key, *v);
        return std::nullopt;
    };

    ScenarioConfig sc;
    sc.source = values;

    const auto n = number("system.n_particles");
    if (!n)
        throw ConfigError("system.n_particles is required");
    sc.system.n_particles = *n;
    if (auto v = number("system.particle_mass"))
        sc.system.particle_mass = *v;
    if (auto v = number("system.coupling"))
        sc.system.coupling = *v;
    if (auto v = number("system.light_speed"))
        sc.system.light_speed = *v;
    if (auto v = number("system.hbar"))
        sc.system.hbar = *v;
    if (auto v = number("system.boltzmann"))
        sc.system.boltzmann = *v;
    sc.temperature = number("system.temperature");
    if (sc.temperature && *sc.temperature < 0)
        throw ConfigError("system.temperature must be non-negative");
    sc.system.validate();

    const bool has_p = get("state.p1") || get("state.p2");
    const bool has_v = get("state.v1") || get("state.v2");
    const bool has_cat = get("state.alpha") || get("state.beta");
    std::string kind;
    if (const auto* k = get("state.kind"))
        kind = *k;
    else
        kind = has_cat ? "cat" : "momentum";

    if (kind == "momentum") {
        if (has_cat || get("state.sigma") || get("state.gamma"))
            throw ConfigError("cat-state keys given for a momentum superposition");
        if (has_p && has_v)
            throw ConfigError("state momenta (p1/p2) and velocities (v1/v2) are mutually exclusive");
        if (has_v) {
            const auto v1 = number("state.v1");
            const auto v2 = number("state.v2");
            if (!v1 || !v2)
                throw ConfigError("both state.v1 and state.v2 are required");
            sc.from_velocities = true;
            sc.v1 = *v1;
            sc.v2 = *v2;
            sc.momenta = ringdeco::from_velocities(sc.system, *v1, *v2);
        } else {
            const auto p1 = number("state.p1");
            const auto p2 = number("state.p2");
            if (!p1 || !p2)
                throw ConfigError("a momentum superposition needs state.p1/state.p2 or state.v1/state.v2");
            sc.momenta = {*p1, *p2};
        }
        sc.kind = StateKind::momentum;
    } else if (kind == "cat") {
        if (has_p || has_v)
            throw ConfigError("momentum keys given for a cat state");
        const auto* a = get("state.alpha");
        const auto* b = get("state.beta");
        if (!a || !b)
            throw ConfigError("a cat state needs state.alpha and state.beta");
        CatState cs{parse_complex(*a), parse_complex(*b), number("state.sigma").value_or(1.0)};
        if (!(cs.sigma > 0))
            throw ConfigError("state.sigma must be positive");
        sc.cat = CatParameters::from_physics(sc.system, cs);
        if (auto g = number("state.gamma")) {
            if (*g < 0)
                throw ConfigError("state.gamma must be non-negative");
            sc.cat.gamma = *g;
            sc.gamma_overridden = true;
        }
        sc.kind = StateKind::cat;
    } else {
        throw ConfigError(fmt::format("state.kind must be 'momentum' or 'cat', got '{}'", kind));
    }

    if (const auto* m = get("run.method")) {
        parse_curve_method(*m);
        sc.method = *m;
    }
    sc.t_max = number("run.t_max");
    sc.omega_t_max = number("run.omega_t_max");
    if (sc.t_max && sc.omega_t_max)
        throw ConfigError("run.t_max and run.omega_t_max are mutually exclusive");
    if ((sc.t_max && *sc.t_max < 0) || (sc.omega_t_max && *sc.omega_t_max < 0))
        throw ConfigError("curve end time must be non-negative");
    if (const auto* v = get("run.samples"))
        sc.samples = parse_int("run.samples", *v);
    if (sc.samples < 0)
        throw ConfigError("run.samples must be non-negative");
    if (const auto* v = get("run.omega_t"))
        sc.omega_t = parse_list("run.omega_t", *v);
    for (double wt : sc.omega_t)
        if (wt < 0)
            throw ConfigError("run.omega_t values must be non-negative");
    if (const auto* v = get("run.grid_resolution"))
        sc.grid_resolution = parse_int("run.grid_resolution", *v);
    if (sc.grid_resolution < 2)
        throw ConfigError("run.grid_resolution must be >= 2");
    if (const auto* v = get("run.cutoff"))
        sc.cutoff = parse_int("run.cutoff", *v);
    if (auto v = number("run.max_delta"))
        sc.max_delta = *v;
    if (const auto* v = get("run.delta_points"))
        sc.delta_points = parse_int("run.delta_points", *v);
    if (const auto* v = get("run.time_points"))
        sc.time_points = parse_int("run.time_points", *v);
    if (sc.delta_points < 1 || sc.time_points < 1)
        throw ConfigError("run.delta_points and run.time_points must be >= 1");
    if (const auto* v = get("run.sweep")) {
        if (*v == "equal")
            sc.equal_momenta = true;
        else if (*v != "full")
            throw ConfigError(fmt::format("run.sweep must be 'full' or 'equal', got '{}'", *v));
    }
    return sc;
}

std::uint64_t config_hash(const KeyValues& values)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [key, value] : values) {
        feed(key);
        feed("=");
        feed(value);
        feed("\n");
    }
    return h;
}

std::string provenance_header(const KeyValues& values, std::string_view method)
{
    return fmt::format("# ringdeco {}\n# method: {}\n# config-hash: fnv1a64:{:016x}\n", tool_version, method,
                       config_hash(values));
}

std::string format_number(double value)
{
    return fmt::format("{:.14e}", value);
}

}  // namespace ringdeco::cli
