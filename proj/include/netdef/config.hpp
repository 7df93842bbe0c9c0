#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netdef/load.hpp"
#include "netdef/sweep.hpp"

namespace netdef {

/// Every recognised key, in canonical order. Keys are unique across sections, so a file entry
/// `[network] n = 500` and the command-line flag `--n 500` address the same setting.
const std::vector<std::string>& config_keys();

/// Raw key/value settings layered as preset < file < overrides.
class ConfigLayers {
public:
    /// Parses INI text ("[section]" headers, "key = value", ';' or '#' comments).
    void add_text(const std::string& text, const std::string& source);
    void add_file(const std::string& path);
    void add_preset(const std::string& name);
    void set(const std::string& key, const std::string& value);

    const std::map<std::string, std::string>& values() const { return values_; }
    /// Sources, overrides and effective values; `workers` is left out of the latter two.
    nlohmann::json echo() const;

private:
    std::map<std::string, std::string> values_;
    nlohmann::json sources_ = nlohmann::json::array();
    std::map<std::string, std::string> overrides_;
};

struct ExperimentConfig {
    // [network]
    std::string model = "BA";
    std::size_t n = 3000;
    double mean_degree = 4.0;
    std::string edge_list;
    bool giant_component = false;
    // [experiment]
    double alpha = 0.3;
    std::vector<double> beta_grid;
    std::size_t k_ca = 1;
    std::size_t network_realizations = 1;
    std::size_t attack_realizations = 1;
    std::uint64_t master_seed = 1;
    std::optional<double> capacity_floor;
    LoadConvention load_convention = LoadConvention::Fractional;
    bool load_endpoints = true;
    std::string output = "out";
    unsigned workers = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 3.0;
    double tol = 0.01;
    // [trends]
    std::string axis = "N";
    std::vector<std::string> values;
};

/// Converts and validates layered settings; throws ConfigError naming the offending key.
ExperimentConfig resolve_config(const ConfigLayers& layers);

/// "0:2.5:0.1" (inclusive range) or "0,0.5,1".
std::vector<double> parse_beta_grid(const std::string& text);

/// Sweep configuration for a generated network.
SweepConfig to_sweep_config(const ExperimentConfig& config);

/// Preset text for fig1..fig4; throws ConfigError("preset") for unknown names.
const std::string& preset_text(const std::string& name);

}  // namespace netdef
