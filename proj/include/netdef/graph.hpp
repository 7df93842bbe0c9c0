#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netdef {

using NodeId = std::uint32_t;

/// Per-node liveness overlay. Removal never re-indexes a graph; it flips a mask entry.
using AliveMask = std::vector<std::uint8_t>;

/// Undirected simple graph over dense ids 0..N-1, stored as CSR with sorted neighbor lists.
/// Immutable after construction.
class Graph {
public:
    Graph() = default;

    /// Builds from an edge list. Self-loops and duplicate edges (in either orientation) are
    /// dropped; the dropped counts are available through the out-parameters when non-null.
    static Graph from_edges(std::size_t node_count,
                            std::span<const std::pair<NodeId, NodeId>> edges,
                            std::size_t* duplicates_dropped = nullptr,
                            std::size_t* self_loops_dropped = nullptr);

    std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return targets_.size() / 2; }
    double mean_degree() const;

    std::span<const NodeId> neighbors(NodeId v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(NodeId u, NodeId v) const;

    /// Canonical edge list (u < v), lexicographically sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    AliveMask all_alive() const { return AliveMask(node_count(), 1); }

    /// Subgraph induced by `keep` (ascending ids), re-indexed densely in that order.
    Graph induced(std::span<const NodeId> keep) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
};

enum class GraphModel { BarabasiAlbert, ErdosRenyi };

struct GeneratorConfig {
    GraphModel model = GraphModel::BarabasiAlbert;
    std::size_t n = 0;
    double mean_degree = 4.0;
    std::uint64_t seed = 0;
};

/// Generated graph. For ErdosRenyi the giant component is kept, so `graph.node_count()`
/// may be smaller than the requested size.
Graph generate(const GeneratorConfig& config);

struct LoadedGraph {
    Graph graph;
    std::vector<std::int64_t> original_ids;  // dense id -> id in the file
    std::size_t duplicates_dropped = 0;
    std::size_t self_loops_dropped = 0;
};

/// Reads a whitespace-separated integer edge list. Lines starting with '#' or '%' are
/// comments. Node ids are re-indexed densely in order of first appearance.
LoadedGraph load_edge_list(const std::filesystem::path& path);
LoadedGraph parse_edge_list(const std::string& text, const std::string& source_name = "<string>");

/// Connected components of the alive subgraph, largest first (ties by smallest member id).
/// Each component lists its nodes in ascending order.
std::vector<std::vector<NodeId>> components(const Graph& g, const AliveMask& alive);

/// Size of the largest alive component, 0 when nothing is alive.
std::size_t largest_component_size(const Graph& g, const AliveMask& alive);

/// Giant component as a re-indexed graph (identity when already connected).
Graph giant_component(const Graph& g);

/// "N M" header followed by M lines "u v" in canonical order.
std::string serialize(const Graph& g);

std::string to_string(GraphModel model);
GraphModel parse_graph_model(const std::string& text);

}  // namespace netdef
