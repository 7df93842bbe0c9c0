#include "netdef/cascade.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "netdef/error.hpp"

namespace netdef {

double CapacityProfile::total() const {
    double sum = 0.0;
    for (double c : capacity) sum += c;
    return sum;
}

CapacityProfile assign_capacity(const Graph& g, double alpha, const LoadOptions& options) {
    if (!(alpha > 0.0)) throw ConfigError("alpha", fmt::format("must be > 0, got {}", alpha));
    CapacityProfile cap;
    cap.alpha = alpha;
    cap.convention = options.convention;
    cap.include_endpoints = options.include_endpoints;
    cap.initial_load = compute_load(g, g.all_alive(), options);
    cap.capacity.resize(cap.initial_load.size());
    for (std::size_t i = 0; i < cap.capacity.size(); ++i) {
        cap.capacity[i] = (1.0 + alpha) * cap.initial_load[i];
    }
    return cap;
}

std::vector<NodeId> CascadeResult::removed() const {
    std::vector<NodeId> all;
    all.reserve(attacked.size() + overloaded.size());
    std::merge(attacked.begin(), attacked.end(), overloaded.begin(), overloaded.end(),
               std::back_inserter(all));
    return all;
}

CascadeResult run_cascade(const Graph& g, const CapacityProfile& cap, std::span<const NodeId> attacked,
                          unsigned workers) {
    const std::size_t n = g.node_count();
    if (cap.size() != n) {
        throw Error(fmt::format("capacity profile covers {} nodes, graph has {}", cap.size(), n));
    }
    CascadeResult result;
    AliveMask alive(n, 1);
    for (NodeId v : attacked) {
        if (v >= n) throw Error(fmt::format("attacked node {} is out of range 0..{}", v, n));
        if (!alive[v]) continue;
        alive[v] = 0;
        result.attacked.push_back(v);
    }
    std::sort(result.attacked.begin(), result.attacked.end());

    const LoadOptions options{cap.convention, cap.include_endpoints, workers};
    std::size_t alive_count = n - result.attacked.size();
    std::vector<NodeId> casualties;
    bool changed = !result.attacked.empty();
    while (changed && alive_count > 0) {
        const LoadVector load = compute_load(g, alive, options);
        casualties.clear();
        for (NodeId v = 0; v < n; ++v) {
            if (alive[v] && overloaded(load[v], cap.capacity[v])) casualties.push_back(v);
        }
        changed = !casualties.empty();
        if (!changed) break;
        ++result.rounds;
        for (NodeId v : casualties) alive[v] = 0;
        alive_count -= casualties.size();
        result.overloaded.insert(result.overloaded.end(), casualties.begin(), casualties.end());
    }
    std::sort(result.overloaded.begin(), result.overloaded.end());

    result.M = result.attacked.size() + result.overloaded.size();
    for (NodeId v : result.removed()) result.B += cap.capacity[v];
    result.G = largest_component_size(g, alive);
    return result;
}

}  // namespace netdef
