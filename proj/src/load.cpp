#include "netdef/load.hpp"

#include <algorithm>
#include <cstdint>

#include <fmt/format.h>

#include "netdef/error.hpp"
#include "netdef/parallel.hpp"

namespace netdef {

std::string to_string(LoadConvention c) {
    return c == LoadConvention::Count ? "count" : "fractional";
}

LoadConvention parse_load_convention(const std::string& text) {
    if (text == "count") return LoadConvention::Count;
    if (text == "fractional") return LoadConvention::Fractional;
    throw ConfigError("load_convention", fmt::format("expected 'count' or 'fractional', got '{}'", text));
}

namespace {

// Sources are grouped into fixed-size blocks; each block is reduced in source order and the
// block partials are summed in block order. The reduction tree therefore does not depend on
// the number of workers.
constexpr std::size_t kSourceBlock = 64;

// Alive subgraph re-indexed densely so the inner loops carry no liveness checks.
struct CompactGraph {
    std::vector<std::uint32_t> offsets;
    std::vector<std::uint32_t> targets;
    std::vector<NodeId> original;  // compact id -> graph id

    CompactGraph(const Graph& g, const AliveMask& alive) {
        const std::size_t n = g.node_count();
        std::vector<std::uint32_t> local(n, 0);
        for (NodeId v = 0; v < n; ++v) {
            if (alive[v]) {
                local[v] = static_cast<std::uint32_t>(original.size());
                original.push_back(v);
            }
        }
        offsets.reserve(original.size() + 1);
        offsets.push_back(0);
        for (NodeId v : original) {
            for (NodeId u : g.neighbors(v)) {
                if (alive[u]) targets.push_back(local[u]);
            }
            offsets.push_back(static_cast<std::uint32_t>(targets.size()));
        }
    }
    std::size_t size() const { return original.size(); }
};

struct BfsScratch {
    explicit BfsScratch(std::size_t n) : dist(n, -1), sigma(n, 0.0), acc(n, 0.0) {
        order.reserve(n);
    }
    std::vector<std::int32_t> dist;
    std::vector<double> sigma;
    std::vector<double> acc;  // count: paths from v to its descendants; fractional: Brandes delta
    std::vector<std::uint32_t> order;
    // Shortest-path DAG arcs (parent, child) in discovery order.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
};

// Every unordered pair is reached from both endpoints and the total is halved at the end, so
// an endpoint credit of 2 per reached target becomes 1 per pair per endpoint.
template <LoadConvention C>
void accumulate_source(const CompactGraph& g, std::uint32_t s, double endpoint, BfsScratch& w,
                       double* out) {
    auto* dist = w.dist.data();
    auto* sigma = w.sigma.data();
    auto* acc = w.acc.data();
    auto& order = w.order;
    auto& arcs = w.arcs;
    const auto* offsets = g.offsets.data();
    const auto* targets = g.targets.data();

    order.clear();
    arcs.clear();
    order.push_back(s);
    dist[s] = 0;
    sigma[s] = 1.0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        const std::uint32_t v = order[head];
        const std::int32_t next = dist[v] + 1;
        const double sv = sigma[v];
        for (std::uint32_t e = offsets[v]; e < offsets[v + 1]; ++e) {
            const std::uint32_t u = targets[e];
            if (dist[u] < 0) {
                dist[u] = next;
                sigma[u] = sv;
                order.push_back(u);
                arcs.emplace_back(v, u);
            } else if (dist[u] == next) {
                sigma[u] += sv;
                arcs.emplace_back(v, u);
            }
        }
    }

    // Arcs out of a node are recorded after every arc into it, so walking the list backwards
    // finalizes each child before it is folded into its parents.
    for (std::size_t a = arcs.size(); a-- > 0;) {
        const auto [parent, child] = arcs[a];
        if constexpr (C == LoadConvention::Count) {
            acc[parent] += 1.0 + acc[child];
        } else {
            acc[parent] += sigma[parent] / sigma[child] * (1.0 + acc[child]);
        }
    }

    for (std::size_t idx = 1; idx < order.size(); ++idx) {
        const std::uint32_t v = order[idx];
        if constexpr (C == LoadConvention::Count) {
            out[v] += sigma[v] * (acc[v] + endpoint);
        } else {
            out[v] += acc[v] + endpoint;
        }
    }
    for (std::uint32_t v : order) {
        dist[v] = -1;
        acc[v] = 0.0;
    }
}

void run_block(const CompactGraph& g, std::size_t block, const LoadOptions& options, BfsScratch& scratch,
               std::vector<double>& partial) {
    const std::size_t end = std::min(g.size(), (block + 1) * kSourceBlock);
    const double endpoint = options.include_endpoints ? 2.0 : 0.0;
    for (std::size_t s = block * kSourceBlock; s < end; ++s) {
        const auto src = static_cast<std::uint32_t>(s);
        if (options.convention == LoadConvention::Count) {
            accumulate_source<LoadConvention::Count>(g, src, endpoint, scratch, partial.data());
        } else {
            accumulate_source<LoadConvention::Fractional>(g, src, endpoint, scratch, partial.data());
        }
    }
}

}  // namespace

LoadVector compute_load(const Graph& g, const AliveMask& alive, const LoadOptions& options) {
    const std::size_t n = g.node_count();
    if (alive.size() != n) {
        throw Error(fmt::format("alive mask has length {}, graph has {} nodes", alive.size(), n));
    }
    LoadVector load(n, 0.0);
    const CompactGraph compact(g, alive);
    const std::size_t k = compact.size();
    if (k == 0) return load;

    const std::size_t blocks = (k + kSourceBlock - 1) / kSourceBlock;
    std::vector<double> total(k, 0.0);
    if (resolve_workers(options.workers) <= 1 || blocks == 1) {
        BfsScratch scratch(k);
        std::vector<double> partial(k);
        for (std::size_t b = 0; b < blocks; ++b) {
            std::fill(partial.begin(), partial.end(), 0.0);
            run_block(compact, b, options, scratch, partial);
            for (std::size_t i = 0; i < k; ++i) total[i] += partial[i];
        }
    } else {
        std::vector<std::vector<double>> partials(blocks);
        parallel_for(blocks, options.workers, [&](std::size_t b) {
            thread_local BfsScratch scratch(0);
            if (scratch.dist.size() < k) scratch = BfsScratch(k);
            partials[b].assign(k, 0.0);
            run_block(compact, b, options, scratch, partials[b]);
        });
        for (const auto& partial : partials) {
            for (std::size_t i = 0; i < k; ++i) total[i] += partial[i];
        }
    }

    for (std::size_t i = 0; i < k; ++i) load[compact.original[i]] = 0.5 * total[i];
    return load;
}

LoadVector oracle_load(const Graph& g, const AliveMask& alive, LoadConvention convention,
                       bool include_endpoints) {
    const std::size_t n = g.node_count();
    if (alive.size() != n) {
        throw Error(fmt::format("alive mask has length {}, graph has {} nodes", alive.size(), n));
    }
    std::vector<NodeId> live;
    for (NodeId v = 0; v < n; ++v) {
        if (alive[v]) live.push_back(v);
    }
    if (live.size() > kOracleNodeLimit) {
        throw Error(fmt::format("oracle_load is limited to {} alive nodes, got {}", kOracleNodeLimit,
                                live.size()));
    }

    using Wide = unsigned __int128;
    constexpr int kUnreachable = -1;
    const std::size_t k = live.size();
    std::vector<NodeId> local(n, static_cast<NodeId>(-1));
    for (std::size_t i = 0; i < k; ++i) local[live[i]] = static_cast<NodeId>(i);

    // Distance matrix by BFS, then path counts by a dynamic program over increasing distance:
    // paths(s, t) = sum of paths(s, u) over neighbors u of t with d(s, u) = d(s, t) - 1.
    std::vector<int> dist(k * k, kUnreachable);
    std::vector<Wide> paths(k * k, 0);
    std::vector<std::size_t> queue;
    for (std::size_t s = 0; s < k; ++s) {
        int* d = &dist[s * k];
        d[s] = 0;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t v = queue[head];
            for (NodeId u : g.neighbors(live[v])) {
                if (!alive[u]) continue;
                const std::size_t lu = local[u];
                if (d[lu] == kUnreachable) {
                    d[lu] = d[v] + 1;
                    queue.push_back(lu);
                }
            }
        }
        Wide* p = &paths[s * k];
        p[s] = 1;
        // `queue` is in nondecreasing distance order.
        for (std::size_t idx = 1; idx < queue.size(); ++idx) {
            const std::size_t t = queue[idx];
            for (NodeId u : g.neighbors(live[t])) {
                if (!alive[u]) continue;
                const std::size_t lu = local[u];
                if (d[lu] == d[t] - 1) p[t] += p[lu];
            }
        }
    }

    LoadVector load(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        Wide exact = 0;
        long double fractional = 0.0L;
        if (include_endpoints) {
            for (std::size_t t = 0; t < k; ++t) {
                if (t == i || dist[i * k + t] == kUnreachable) continue;
                exact += paths[i * k + t];
                fractional += 1.0L;
            }
        }
        for (std::size_t s = 0; s < k; ++s) {
            if (s == i || dist[s * k + i] == kUnreachable) continue;
            for (std::size_t t = s + 1; t < k; ++t) {
                if (t == i || dist[s * k + t] == kUnreachable) continue;
                if (dist[s * k + i] + dist[i * k + t] != dist[s * k + t]) continue;
                const Wide through = paths[s * k + i] * paths[i * k + t];
                if (convention == LoadConvention::Count) {
                    exact += through;
                } else {
                    fractional += static_cast<long double>(through) /
                                  static_cast<long double>(paths[s * k + t]);
                }
            }
        }
        load[live[i]] = convention == LoadConvention::Count ? static_cast<double>(exact)
                                                            : static_cast<double>(fractional);
    }
    return load;
}

}  // namespace netdef
