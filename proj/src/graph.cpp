#include "netdef/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "netdef/error.hpp"
#include "netdef/random.hpp"

namespace netdef {

Graph Graph::from_edges(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> edges,
                        std::size_t* duplicates_dropped, std::size_t* self_loops_dropped) {
    std::vector<std::pair<NodeId, NodeId>> canon;
    canon.reserve(edges.size());
    std::size_t loops = 0;
    for (auto [u, v] : edges) {
        if (u >= node_count || v >= node_count) {
            throw Error(fmt::format("edge ({}, {}) references a node outside 0..{}", u, v, node_count));
        }
        if (u == v) {
            ++loops;
            continue;
        }
        canon.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(canon.begin(), canon.end());
    auto last = std::unique(canon.begin(), canon.end());
    std::size_t dups = static_cast<std::size_t>(canon.end() - last);
    canon.erase(last, canon.end());
    if (duplicates_dropped) *duplicates_dropped = dups;
    if (self_loops_dropped) *self_loops_dropped = loops;

    Graph g;
    g.offsets_.assign(node_count + 1, 0);
    for (auto [u, v] : canon) {
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.targets_.resize(canon.size() * 2);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Canonical pairs are sorted by (u, v), so each list fills in ascending order.
    for (auto [u, v] : canon) g.targets_[cursor[u]++] = v;
    for (auto [u, v] : canon) g.targets_[cursor[v]++] = u;
    for (std::size_t i = 0; i < node_count; ++i) {
        std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
                  g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
    }
    return g;
}

double Graph::mean_degree() const {
    const auto n = node_count();
    return n == 0 ? 0.0 : 2.0 * static_cast<double>(edge_count()) / static_cast<double>(n);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

Graph Graph::induced(std::span<const NodeId> keep) const {
    std::vector<NodeId> remap(node_count(), static_cast<NodeId>(-1));
    for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<NodeId>(i);
    std::vector<std::pair<NodeId, NodeId>> sub;
    for (NodeId u : keep) {
        for (NodeId v : neighbors(u)) {
            if (u < v && remap[v] != static_cast<NodeId>(-1)) sub.emplace_back(remap[u], remap[v]);
        }
    }
    return from_edges(keep.size(), sub);
}

namespace {

Graph generate_ba(const GeneratorConfig& config) {
    const double k = config.mean_degree;
    if (!(k >= 2.0) || std::floor(k) != k || static_cast<long long>(k) % 2 != 0) {
        throw ConfigError("mean_degree",
                          fmt::format("Barabasi-Albert needs an even integer >= 2, got {}", k));
    }
    const std::size_t m = static_cast<std::size_t>(k) / 2;
    if (config.n < m + 1) {
        throw ConfigError("n", fmt::format("Barabasi-Albert with m={} needs n >= {}, got {}", m, m + 1,
                                           config.n));
    }

    Rng rng(config.seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(m * config.n);
    // Every edge contributes both endpoints, so a uniform draw from `ends` is degree-proportional.
    std::vector<NodeId> ends;
    ends.reserve(2 * m * config.n);

    for (NodeId u = 0; u <= m; ++u) {
        for (NodeId v = u + 1; v <= m; ++v) {
            edges.emplace_back(u, v);
            ends.push_back(u);
            ends.push_back(v);
        }
    }
    std::vector<NodeId> chosen;
    for (NodeId v = static_cast<NodeId>(m + 1); v < config.n; ++v) {
        chosen.clear();
        while (chosen.size() < m) {
            NodeId t = ends[uniform_index(rng, ends.size())];
            if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
        }
        for (NodeId t : chosen) {
            edges.emplace_back(t, v);
            ends.push_back(t);
            ends.push_back(v);
        }
    }
    return Graph::from_edges(config.n, edges);
}

Graph generate_er(const GeneratorConfig& config) {
    if (config.n < 2) throw ConfigError("n", fmt::format("Erdos-Renyi needs n >= 2, got {}", config.n));
    const double k = config.mean_degree;
    if (!(k > 0.0) || k > static_cast<double>(config.n - 1)) {
        throw ConfigError("mean_degree", fmt::format("must lie in (0, n-1], got {}", k));
    }
    const double p = k / static_cast<double>(config.n - 1);
    Rng rng(config.seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < config.n; ++u) {
        for (NodeId v = u + 1; v < config.n; ++v) {
            if (uniform01(rng) < p) edges.emplace_back(u, v);
        }
    }
    return giant_component(Graph::from_edges(config.n, edges));
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

Graph generate(const GeneratorConfig& config) {
    switch (config.model) {
        case GraphModel::BarabasiAlbert: return generate_ba(config);
        case GraphModel::ErdosRenyi: return generate_er(config);
    }
    throw Error("unknown graph model");
}

LoadedGraph parse_edge_list(const std::string& text, const std::string& source_name) {
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto body = trim(line);
        if (body.empty() || body.front() == '#' || body.front() == '%') continue;

        std::int64_t ids[2];
        std::size_t count = 0;
        std::size_t pos = 0;
        while (pos < body.size()) {
            while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
            if (pos >= body.size()) break;
            std::size_t end = pos;
            while (end < body.size() && body[end] != ' ' && body[end] != '\t') ++end;
            auto token = body.substr(pos, end - pos);
            std::int64_t value = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc() || ptr != token.data() + token.size()) {
                throw IoError(fmt::format("{}:{}: non-integer token '{}'", source_name, line_no, token));
            }
            if (count == 2) {
                throw IoError(fmt::format("{}:{}: expected two node ids per line", source_name, line_no));
            }
            ids[count++] = value;
            pos = end;
        }
        if (count != 2) {
            throw IoError(fmt::format("{}:{}: expected two node ids per line", source_name, line_no));
        }
        raw.emplace_back(ids[0], ids[1]);
    }
    if (raw.empty()) throw IoError(fmt::format("{}: empty edge set", source_name));

    LoadedGraph out;
    for (auto [a, b] : raw) {
        out.original_ids.push_back(a);
        out.original_ids.push_back(b);
    }
    std::sort(out.original_ids.begin(), out.original_ids.end());
    out.original_ids.erase(std::unique(out.original_ids.begin(), out.original_ids.end()),
                           out.original_ids.end());
    std::unordered_map<std::int64_t, NodeId> index;
    index.reserve(out.original_ids.size());
    for (std::size_t i = 0; i < out.original_ids.size(); ++i) {
        index.emplace(out.original_ids[i], static_cast<NodeId>(i));
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(raw.size());
    for (auto [a, b] : raw) edges.emplace_back(index.at(a), index.at(b));
    out.graph = Graph::from_edges(out.original_ids.size(), edges, &out.duplicates_dropped,
                                  &out.self_loops_dropped);
    if (out.graph.edge_count() == 0) throw IoError(fmt::format("{}: empty edge set", source_name));
    return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot read edge list '{}'", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str(), path.string());
}

std::vector<std::vector<NodeId>> components(const Graph& g, const AliveMask& alive) {
    const std::size_t n = g.node_count();
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::vector<NodeId>> out;
    for (NodeId s = 0; s < n; ++s) {
        if (!alive[s] || seen[s]) continue;
        std::vector<NodeId> comp{s};
        seen[s] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head) {
            for (NodeId w : g.neighbors(comp[head])) {
                if (alive[w] && !seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    // Discovery order already ascends by smallest member, so a stable sort keeps that tie order.
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return out;
}

std::size_t largest_component_size(const Graph& g, const AliveMask& alive) {
    const std::size_t n = g.node_count();
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<NodeId> queue;
    queue.reserve(n);
    std::size_t best = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (!alive[s] || seen[s]) continue;
        queue.clear();
        queue.push_back(s);
        seen[s] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (NodeId w : g.neighbors(queue[head])) {
                if (alive[w] && !seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
            }
        }
        best = std::max(best, queue.size());
    }
    return best;
}

Graph giant_component(const Graph& g) {
    if (g.node_count() == 0) return g;
    auto comps = components(g, g.all_alive());
    if (comps.size() == 1) return g;
    return g.induced(comps.front());
}

std::string serialize(const Graph& g) {
    std::string out = fmt::format("{} {}\n", g.node_count(), g.edge_count());
    for (auto [u, v] : g.edges()) fmt::format_to(std::back_inserter(out), "{} {}\n", u, v);
    return out;
}

std::string to_string(GraphModel model) {
    return model == GraphModel::BarabasiAlbert ? "BA" : "ER";
}

GraphModel parse_graph_model(const std::string& text) {
    if (text == "BA" || text == "ba" || text == "BarabasiAlbert") return GraphModel::BarabasiAlbert;
    if (text == "ER" || text == "er" || text == "ErdosRenyi") return GraphModel::ErdosRenyi;
    throw ConfigError("model", fmt::format("unknown graph model '{}' (expected BA or ER)", text));
}

}  // namespace netdef
