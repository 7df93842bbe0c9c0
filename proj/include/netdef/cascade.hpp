#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "netdef/graph.hpp"
#include "netdef/load.hpp"

namespace netdef {

/// Node capacities C_i = (1 + alpha) * L_i(0), fixed at construction and never recomputed.
struct CapacityProfile {
    std::vector<double> capacity;
    double alpha = 0.0;
    LoadVector initial_load;
    LoadConvention convention = LoadConvention::Count;
    bool include_endpoints = false;

    std::size_t size() const { return capacity.size(); }
    double total() const;
};

/// Throws ConfigError("alpha") unless alpha > 0. Initial load is taken over the whole graph.
CapacityProfile assign_capacity(const Graph& g, double alpha, const LoadOptions& options = {});

struct CascadeResult {
    std::vector<NodeId> attacked;    // ascending
    std::vector<NodeId> overloaded;  // ascending; failed during propagation
    std::size_t rounds = 0;          // propagation rounds with at least one failure
    std::size_t G = 0;               // largest surviving component
    double B = 0.0;                  // capacity removed, attacked + overloaded
    std::size_t M = 0;               // nodes removed

    std::vector<NodeId> removed() const;
};

inline std::size_t damage_G(const CascadeResult& r) { return r.G; }
inline double damage_B(const CascadeResult& r) { return r.B; }

/// Whether a node carrying `load` exceeds `capacity`. Ties survive; the absolute slack of
/// 1e-9 * max(1, C) only absorbs floating-point representation error.
inline bool overloaded(double load, double capacity) {
    return load > capacity + 1e-9 * (capacity > 1.0 ? capacity : 1.0);
}

/// Removes `attacked`, then repeatedly recomputes loads on the survivors and removes every
/// node with load above capacity, all at once per round, until none is overloaded.
/// An empty attack set is accepted and leaves the graph intact.
CascadeResult run_cascade(const Graph& g, const CapacityProfile& cap, std::span<const NodeId> attacked,
                          unsigned workers = 1);

}  // namespace netdef
