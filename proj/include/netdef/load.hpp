#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "netdef/graph.hpp"

namespace netdef {

/// How a shortest s-t path set is credited to its interior nodes.
///   Count:      every shortest path counts once (sigma_si * sigma_it).
///   Fractional: Brandes betweenness, the same divided by sigma_st.
enum class LoadConvention { Count, Fractional };

std::string to_string(LoadConvention c);
LoadConvention parse_load_convention(const std::string& text);

/// Per-node load summed over unordered alive pairs {s, t}. By default only interior nodes
/// (s != i != t) are credited, so dead nodes and nodes interior to no shortest path carry 0.
using LoadVector = std::vector<double>;

struct LoadOptions {
    LoadConvention convention = LoadConvention::Count;
    /// Also credit the two endpoints of every connected pair, as in the classic
    /// vertex-betweenness load of cascade models.
    bool include_endpoints = false;
    /// Worker threads for the per-source loop; 0 means hardware concurrency.
    /// Results are bit-identical for every value.
    unsigned workers = 1;
};

LoadVector compute_load(const Graph& g, const AliveMask& alive, const LoadOptions& options = {});

/// Maximum alive node count accepted by oracle_load.
inline constexpr std::size_t kOracleNodeLimit = 200;

/// All-pairs enumeration over a distance matrix with exact integer path counts.
/// Independent of compute_load; intended for verification on small graphs.
LoadVector oracle_load(const Graph& g, const AliveMask& alive,
                       LoadConvention convention = LoadConvention::Count, bool include_endpoints = false);

}  // namespace netdef
