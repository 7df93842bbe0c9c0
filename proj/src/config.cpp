#include "netdef/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "netdef/error.hpp"

namespace netdef {

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "model",       "n",          "mean_degree",        "edge_list",           "giant_component",
        "alpha",       "beta_grid",  "k_ca",               "network_realizations", "attack_realizations",
        "master_seed", "capacity_floor", "load_convention", "load_endpoints",      "output",
        "workers",     "bracket_lo", "bracket_hi",         "tol",                 "axis",
        "values"};
    return keys;
}

namespace {

bool known_key(const std::string& key) {
    const auto& keys = config_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

// Presets carry the parameters of the reference experiments. Real-network presets need the
// dataset path supplied separately.
const std::map<std::string, std::string>& presets() {
    static const std::map<std::string, std::string> table = {
        {"fig1", R"(; BA networks, N = 3000, <k> = 4, alpha = 0.3, 50 realizations
[network]
model = BA
n = 3000
mean_degree = 4
[experiment]
alpha = 0.3
beta_grid = 0:2.5:0.1
k_ca = 1
network_realizations = 50
attack_realizations = 1
load_convention = fractional
load_endpoints = true
)"},
        {"fig2", R"(; dependence of beta_b on network parameters
[network]
model = BA
n = 1000
mean_degree = 4
[experiment]
alpha = 0.3
k_ca = 1
network_realizations = 20
attack_realizations = 1
load_convention = fractional
load_endpoints = true
[trends]
axis = N
values = 500,1000,2000
)"},
        {"fig3", R"(; western US power grid; supply the edge list
[experiment]
alpha = 0.3
beta_grid = 0:3:0.1
k_ca = 10
network_realizations = 1
attack_realizations = 10
load_convention = fractional
load_endpoints = true
)"},
        {"fig4", R"(; Internet, autonomous-system level; supply the edge list
[experiment]
alpha = 0.3
beta_grid = 0:3:0.1
k_ca = 10
network_realizations = 1
attack_realizations = 10
load_convention = fractional
load_endpoints = true
)"},
    };
    return table;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if constexpr (std::is_floating_point_v<T>) {
        // libstdc++ 11 lacks floating from_chars; strtod is locale-dependent but callers use '.'.
        char* end = nullptr;
        value = std::strtod(first, &end);
        if (text.empty() || end != last || !std::isfinite(value)) {
            throw ConfigError(key, fmt::format("'{}' is not a finite number", text));
        }
    } else {
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) throw ConfigError(key, fmt::format("'{}' is not an integer", text));
    }
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError(key, fmt::format("'{}' is not a boolean", text));
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first != std::string::npos) parts.push_back(item.substr(first, last - first + 1));
    }
    return parts;
}

}  // namespace

void ConfigLayers::add_text(const std::string& text, const std::string& source) {
    boost::property_tree::ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("config", fmt::format("{}: line {}: {}", source, e.line(), e.message()));
    }
    auto apply = [&](const std::string& key, const std::string& value) {
        if (!known_key(key)) throw ConfigError(key, fmt::format("unknown key in {}", source));
        values_[key] = value;
    };
    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            apply(name, node.data());
            continue;
        }
        for (const auto& [key, leaf] : node) apply(key, leaf.data());
    }
    sources_.push_back({{"source", source}, {"text", text}});
}

void ConfigLayers::add_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", fmt::format("cannot read '{}'", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    add_text(buf.str(), path);
}

void ConfigLayers::add_preset(const std::string& name) { add_text(preset_text(name), "preset:" + name); }

void ConfigLayers::set(const std::string& key, const std::string& value) {
    if (!known_key(key)) throw ConfigError(key, "unknown key");
    values_[key] = value;
    overrides_[key] = value;
}

nlohmann::json ConfigLayers::echo() const {
    // workers changes scheduling only, and leaving it out keeps summaries identical across machines.
    nlohmann::json effective = nlohmann::json::object();
    for (const auto& [k, v] : values_) {
        if (k != "workers") effective[k] = v;
    }
    nlohmann::json overrides = nlohmann::json::object();
    for (const auto& [k, v] : overrides_) {
        if (k != "workers") overrides[k] = v;
    }
    return {{"sources", sources_}, {"overrides", overrides}, {"effective", effective}};
}

const std::string& preset_text(const std::string& name) {
    const auto& table = presets();
    auto it = table.find(name);
    if (it == table.end()) throw ConfigError("preset", fmt::format("unknown preset '{}' (fig1..fig4)", name));
    return it->second;
}

std::vector<double> parse_beta_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw ConfigError("beta_grid", "range form is start:stop:step");
        const double start = parse_number<double>("beta_grid", parts[0]);
        const double stop = parse_number<double>("beta_grid", parts[1]);
        const double step = parse_number<double>("beta_grid", parts[2]);
        if (!(step > 0.0)) throw ConfigError("beta_grid", "range step must be > 0");
        if (stop < start) throw ConfigError("beta_grid", "values must be ascending");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) {
            grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
        }
    } else {
        for (const auto& part : split(text, ',')) grid.push_back(parse_number<double>("beta_grid", part));
    }
    if (grid.empty()) throw ConfigError("beta_grid", "must not be empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.0) throw ConfigError("beta_grid", fmt::format("values must be >= 0, got {}", grid[i]));
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError("beta_grid", "values must be ascending");
    }
    return grid;
}

ExperimentConfig resolve_config(const ConfigLayers& layers) {
    ExperimentConfig c;
    const auto& v = layers.values();
    auto get = [&](const std::string& key) -> const std::string* {
        auto it = v.find(key);
        return it == v.end() ? nullptr : &it->second;
    };
    if (auto* s = get("model")) c.model = to_string(parse_graph_model(*s));
    if (auto* s = get("n")) c.n = parse_number<std::size_t>("n", *s);
    if (auto* s = get("mean_degree")) c.mean_degree = parse_number<double>("mean_degree", *s);
    if (auto* s = get("edge_list")) c.edge_list = *s;
    if (auto* s = get("giant_component")) c.giant_component = parse_bool("giant_component", *s);
    if (auto* s = get("alpha")) c.alpha = parse_number<double>("alpha", *s);
    if (auto* s = get("beta_grid")) c.beta_grid = parse_beta_grid(*s);
    if (auto* s = get("k_ca")) c.k_ca = parse_number<std::size_t>("k_ca", *s);
    if (auto* s = get("network_realizations")) {
        c.network_realizations = parse_number<std::size_t>("network_realizations", *s);
    }
    if (auto* s = get("attack_realizations")) {
        c.attack_realizations = parse_number<std::size_t>("attack_realizations", *s);
    }
    if (auto* s = get("master_seed")) c.master_seed = parse_number<std::uint64_t>("master_seed", *s);
    if (auto* s = get("capacity_floor"); s && !s->empty()) {
        c.capacity_floor = parse_number<double>("capacity_floor", *s);
    }
    if (auto* s = get("load_convention")) c.load_convention = parse_load_convention(*s);
    if (auto* s = get("load_endpoints")) c.load_endpoints = parse_bool("load_endpoints", *s);
    if (auto* s = get("output")) c.output = *s;
    if (auto* s = get("workers")) c.workers = parse_number<unsigned>("workers", *s);
    if (auto* s = get("bracket_lo")) c.bracket_lo = parse_number<double>("bracket_lo", *s);
    if (auto* s = get("bracket_hi")) c.bracket_hi = parse_number<double>("bracket_hi", *s);
    if (auto* s = get("tol")) c.tol = parse_number<double>("tol", *s);
    if (auto* s = get("axis")) c.axis = to_string(parse_trend_axis(*s));
    if (auto* s = get("values")) c.values = split(*s, ',');

    if (!(c.alpha > 0.0)) throw ConfigError("alpha", fmt::format("must be > 0, got {}", c.alpha));
    if (c.k_ca < 1) throw ConfigError("k_ca", "must be >= 1");
    if (c.network_realizations < 1) throw ConfigError("network_realizations", "must be >= 1");
    if (c.attack_realizations < 1) throw ConfigError("attack_realizations", "must be >= 1");
    if (c.capacity_floor && *c.capacity_floor < 0.0) throw ConfigError("capacity_floor", "must be >= 0");
    if (!(c.bracket_lo < c.bracket_hi)) throw ConfigError("bracket_lo", "must be below bracket_hi");
    if (!(c.tol > 0.0)) throw ConfigError("tol", "must be > 0");
    if (c.output.empty()) throw ConfigError("output", "must not be empty");
    return c;
}

SweepConfig to_sweep_config(const ExperimentConfig& config) {
    SweepConfig s;
    s.network = GeneratorConfig{parse_graph_model(config.model), config.n, config.mean_degree, 0};
    s.alpha = config.alpha;
    s.betas = config.beta_grid;
    s.k_ca = config.k_ca;
    s.network_realizations = config.network_realizations;
    s.attack_realizations = config.attack_realizations;
    s.master_seed = config.master_seed;
    s.capacity_floor = config.capacity_floor.value_or(0.0);
    s.load_convention = config.load_convention;
    s.load_endpoints = config.load_endpoints;
    s.workers = config.workers;
    return s;
}

}  // namespace netdef
