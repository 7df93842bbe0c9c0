#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "netdef/config.hpp"
#include "netdef/error.hpp"
#include "netdef/experiment.hpp"
#include "netdef/graph.hpp"
#include "netdef/io.hpp"
#include "netdef/load.hpp"

namespace {

using namespace netdef;

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

/// Options shared by the experiment subcommands.
struct ExperimentArgs {
    std::string config_file;
    std::string preset;
    bool timing = false;
    std::map<std::string, std::string> overrides;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_file, "INI config file")->check(CLI::ExistingFile);
        cmd->add_option("--preset", preset, "fig1 | fig2 | fig3 | fig4");
        cmd->add_flag("--timing", timing, "record runtime_seconds in the summary");
        for (const auto& key : config_keys()) {
            cmd->add_option_function<std::string>(
                "--" + key, [this, key](const std::string& v) { overrides[key] = v; }, "override '" + key + "'");
        }
    }

    ConfigLayers layers(const std::string& defaults = {}) const {
        ConfigLayers l;
        if (!defaults.empty()) l.add_text(defaults, "defaults");
        if (!preset.empty()) l.add_preset(preset);
        if (!config_file.empty()) l.add_file(config_file);
        for (const auto& [k, v] : overrides) l.set(k, v);
        return l;
    }
};

int run_experiment(const ExperimentArgs& args, const std::string& defaults,
                   ExperimentOutputs (*runner)(const ExperimentConfig&, const RunOptions&),
                   const std::string& edge_list = {}) {
    ConfigLayers layers = args.layers(defaults);
    if (!edge_list.empty()) layers.set("edge_list", edge_list);
    const ExperimentConfig config = resolve_config(layers);
    RunOptions options;
    options.config_echo = layers.echo();
    options.timing = args.timing;
    options.progress = &std::cerr;
    const auto outputs = runner(config, options);
    write_outputs(config.output, outputs);
    for (const auto& [name, _] : outputs.files) std::cerr << "wrote " << (std::filesystem::path(config.output) / name).string() << '\n';
    return 0;
}

int run_gen(const GeneratorConfig& gen, const std::string& output) {
    const std::string text = serialize(generate(gen));
    if (output.empty() || output == "-") {
        std::cout << text;
    } else {
        atomic_write(output, text);
    }
    return 0;
}

int run_load_check(const std::string& edge_list, const GeneratorConfig& gen, const std::string& convention,
                   bool endpoints) {
    Graph graph;
    std::vector<std::int64_t> labels;
    if (!edge_list.empty()) {
        auto loaded = load_edge_list(edge_list);
        graph = std::move(loaded.graph);
        labels = std::move(loaded.original_ids);
    } else {
        graph = generate(gen);
        for (NodeId v = 0; v < graph.node_count(); ++v) labels.push_back(v);
    }
    const LoadOptions options{parse_load_convention(convention), endpoints, 1};
    const auto alive = graph.all_alive();
    const auto load = compute_load(graph, alive, options);
    const auto oracle = oracle_load(graph, alive, options.convention, options.include_endpoints);

    std::size_t mismatches = 0;
    std::cout << "node,load,oracle\n";
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        const bool same = options.convention == LoadConvention::Count
                              ? load[v] == oracle[v]
                              : std::abs(load[v] - oracle[v]) <= 1e-9 * std::max(1.0, std::abs(oracle[v]));
        if (!same) ++mismatches;
        std::cout << labels[v] << ',' << format_real(load[v]) << ',' << format_real(oracle[v]) << '\n';
    }
    std::cerr << fmt::format("{} nodes, {} mismatch(es) against the oracle\n", graph.node_count(), mismatches);
    return mismatches == 0 ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cost-based attack and defense analysis on flow-carrying networks"};
    app.require_subcommand(1);

    ExperimentArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "beta sweep on generated networks");
    sweep_args.attach(sweep);

    ExperimentArgs realnet_args;
    std::string realnet_path;
    auto* realnet = app.add_subcommand("realnet", "beta sweep on an edge-list network");
    realnet->add_option("edge_list_path", realnet_path, "edge-list file")->required();
    realnet_args.attach(realnet);

    ExperimentArgs trends_args;
    auto* trends = app.add_subcommand("trends", "beta_b along one network parameter");
    trends_args.attach(trends);

    GeneratorConfig gen{GraphModel::BarabasiAlbert, 100, 4.0, 1};
    std::string gen_model = "BA";
    std::string gen_output;
    auto* gen_cmd = app.add_subcommand("gen", "emit a generated graph in canonical edge-list form");
    gen_cmd->add_option("--model", gen_model, "BA | ER");
    gen_cmd->add_option("--n", gen.n, "node count");
    gen_cmd->add_option("--mean_degree", gen.mean_degree, "mean degree <k>");
    gen_cmd->add_option("--seed", gen.seed, "generator seed");
    gen_cmd->add_option("-o,--output", gen_output, "output file (default stdout)");

    std::string check_path;
    std::string check_model = "BA";
    std::string check_convention = "count";
    bool check_endpoints = false;
    GeneratorConfig check_gen{GraphModel::BarabasiAlbert, 30, 4.0, 1};
    auto* check = app.add_subcommand("load-check", "print node loads of a small graph, verified by the oracle");
    check->add_option("--edge_list", check_path, "edge-list file (otherwise a generated graph)");
    check->add_option("--model", check_model, "BA | ER");
    check->add_option("--n", check_gen.n, "node count");
    check->add_option("--mean_degree", check_gen.mean_degree, "mean degree <k>");
    check->add_option("--seed", check_gen.seed, "generator seed");
    check->add_option("--load_convention", check_convention, "count | fractional");
    check->add_option("--load_endpoints", check_endpoints, "credit path endpoints");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) return run_experiment(sweep_args, {}, run_sweep_experiment);
        if (*realnet) {
            return run_experiment(realnet_args,
                                  "[experiment]\nk_ca = 10\nattack_realizations = 10\nbeta_grid = 0:3:0.1\n",
                                  run_realnet_experiment, realnet_path);
        }
        if (*trends) return run_experiment(trends_args, {}, run_trends_experiment);
        if (*gen_cmd) {
            gen.model = parse_graph_model(gen_model);
            return run_gen(gen, gen_output);
        }
        if (*check) {
            check_gen.model = parse_graph_model(check_model);
            return run_load_check(check_path, check_gen, check_convention, check_endpoints);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
