#include "netdef/experiment.hpp"

#include <chrono>

#include <fmt/format.h>

#include "netdef/error.hpp"
#include "netdef/io.hpp"

namespace netdef {

namespace {

using Clock = std::chrono::steady_clock;

void report(const RunOptions& options, const std::string& line) {
    if (options.progress) *options.progress << line << '\n' << std::flush;
}

nlohmann::json crossover_json(Ensemble& ensemble, Measure measure, const ExperimentConfig& config) {
    try {
        const auto result = ensemble.find_crossover(measure, {config.bracket_lo, config.bracket_hi}, config.tol);
        auto j = to_json(result);
        const auto at = ensemble.mean_damage(result.beta_star, measure);
        j["delta_at_star"] = at.da - at.ca;
        j["delta_stderr"] = at.delta_stderr;
        return j;
    } catch (const NoCrossoverError& e) {
        return {{"measure", to_string(measure)}, {"error", e.what()}, {"curve", to_json(e.curve())}};
    }
}

ExperimentOutputs run_beta_sweep(const SweepConfig& sweep_config, const ExperimentConfig& config,
                                 const RunOptions& options, nlohmann::json network_info, Clock::time_point start) {
    report(options, fmt::format("building {} realization(s)",
                                sweep_config.network_realizations * sweep_config.attack_realizations));
    Ensemble ensemble(sweep_config);
    report(options, fmt::format("sweeping {} beta values", sweep_config.betas.size()));
    const auto records = ensemble.sweep(sweep_config.betas);

    nlohmann::json crossovers = nlohmann::json::object();
    for (Measure m : {Measure::G, Measure::B}) {
        report(options, fmt::format("locating {} crossover", to_string(m)));
        crossovers[to_string(m)] = crossover_json(ensemble, m, config);
    }

    ExperimentOutputs out;
    out.summary = {{"config_echo", options.config_echo},
                   {"network", std::move(network_info)},
                   {"crossovers", crossovers},
                   {"efficiency_argmin",
                    {{"G", efficiency_argmin(records, Measure::G)}, {"B", efficiency_argmin(records, Measure::B)}}},
                   {"runtime_seconds", nullptr}};
    if (options.timing) {
        out.summary["runtime_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
    }
    out.files["sweep.csv"] = sweep_csv(records);
    out.files["summary.json"] = out.summary.dump(2) + "\n";
    return out;
}

std::vector<double> grid_or(const std::vector<double>& grid, const char* fallback) {
    return grid.empty() ? parse_beta_grid(fallback) : grid;
}

nlohmann::json loaded_network_json(const LoadedGraph& loaded, const Graph& used, const std::string& path) {
    return {{"source", path},
            {"N", used.node_count()},
            {"edges", used.edge_count()},
            {"mean_degree", used.mean_degree()},
            {"duplicates_dropped", loaded.duplicates_dropped},
            {"self_loops_dropped", loaded.self_loops_dropped}};
}

}  // namespace

ExperimentOutputs run_sweep_experiment(const ExperimentConfig& config, const RunOptions& options) {
    const auto start = Clock::now();
    if (!config.edge_list.empty()) return run_realnet_experiment(config, options);
    SweepConfig sweep_config = to_sweep_config(config);
    sweep_config.betas = grid_or(config.beta_grid, "0:2.5:0.1");
    nlohmann::json info = {{"source", "generated"},
                           {"model", config.model},
                           {"n", config.n},
                           {"mean_degree", config.mean_degree},
                           {"realizations", config.network_realizations}};
    return run_beta_sweep(sweep_config, config, options, std::move(info), start);
}

ExperimentOutputs run_realnet_experiment(const ExperimentConfig& config, const RunOptions& options) {
    const auto start = Clock::now();
    if (config.edge_list.empty()) throw ConfigError("edge_list", "an edge-list path is required");
    report(options, fmt::format("reading {}", config.edge_list));
    const LoadedGraph loaded = load_edge_list(config.edge_list);
    auto graph = std::make_shared<const Graph>(config.giant_component ? giant_component(loaded.graph)
                                                                      : loaded.graph);
    report(options, fmt::format("N = {}, <k> = {:.3f}", graph->node_count(), graph->mean_degree()));

    SweepConfig sweep_config = to_sweep_config(config);
    sweep_config.network = graph;
    sweep_config.network_realizations = 1;
    sweep_config.betas = grid_or(config.beta_grid, "0:3:0.1");
    return run_beta_sweep(sweep_config, config, options, loaded_network_json(loaded, *graph, config.edge_list),
                          start);
}

ExperimentOutputs run_trends_experiment(const ExperimentConfig& config, const RunOptions& options) {
    const auto start = Clock::now();
    if (config.values.empty()) throw ConfigError("values", "must list at least one axis value");
    const TrendAxis axis = parse_trend_axis(config.axis);
    const SweepConfig base = to_sweep_config(config);
    std::vector<TrendPoint> points;
    for (const auto& value : config.values) {
        report(options, fmt::format("{} = {}", to_string(axis), value));
        auto one = parameter_study(base, axis, {value}, {config.bracket_lo, config.bracket_hi}, config.tol);
        points.push_back(std::move(one.front()));
    }

    nlohmann::json series = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json j = {{"value", p.value},
                            {"beta_b", p.beta_b ? nlohmann::json(*p.beta_b) : nlohmann::json(nullptr)},
                            {"stderr", p.beta_stderr ? nlohmann::json(*p.beta_stderr) : nlohmann::json(nullptr)}};
        if (!p.note.empty()) j["note"] = p.note;
        series.push_back(std::move(j));
    }
    ExperimentOutputs out;
    out.summary = {{"config_echo", options.config_echo},
                   {"axis", to_string(axis)},
                   {"series", series},
                   {"runtime_seconds", nullptr}};
    if (options.timing) {
        out.summary["runtime_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
    }
    out.files["trends.csv"] = trends_csv(points);
    out.files["summary.json"] = out.summary.dump(2) + "\n";
    return out;
}

void write_outputs(const std::filesystem::path& dir, const ExperimentOutputs& outputs) {
    for (const auto& [name, content] : outputs.files) atomic_write(dir / name, content);
}

}  // namespace netdef
