#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

#include "netdef/config.hpp"

namespace netdef {

/// Output file name -> content. Nothing touches the filesystem until write_outputs.
struct ExperimentOutputs {
    std::map<std::string, std::string> files;
    nlohmann::json summary;
};

struct RunOptions {
    nlohmann::json config_echo = nlohmann::json::object();
    /// Record wall-clock runtime in the summary; off keeps summaries byte-reproducible.
    bool timing = false;
    std::ostream* progress = nullptr;
};

/// beta sweep on generated networks (or `edge_list` when set): sweep.csv + summary.json.
ExperimentOutputs run_sweep_experiment(const ExperimentConfig& config, const RunOptions& options);

/// beta sweep on one ingested network: sweep.csv + summary.json.
ExperimentOutputs run_realnet_experiment(const ExperimentConfig& config, const RunOptions& options);

/// beta_b along one parameter axis: trends.csv + summary.json.
ExperimentOutputs run_trends_experiment(const ExperimentConfig& config, const RunOptions& options);

/// Writes every file atomically into `dir`.
void write_outputs(const std::filesystem::path& dir, const ExperimentOutputs& outputs);

}  // namespace netdef
