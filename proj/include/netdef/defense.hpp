#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netdef/cascade.hpp"
#include "netdef/graph.hpp"

namespace netdef {

/// Defense p_i = R * C_i^beta / C(beta), with R the total (beta = 1) capacity.
struct DefenseAllocation {
    double beta = 0.0;
    std::vector<double> p;
    double R = 0.0;
    double normalizer = 0.0;  // C(beta) = sum_i C_i^beta; may be +inf for extreme beta

    double cost(NodeId v) const { return p[v]; }
};

/// `capacity_floor` > 0 replaces each C_i by max(C_i, floor) before allocating, which makes
/// negative beta well defined on networks with zero-load nodes. Zero capacities get p = 0 for
/// beta > 0 and R / N at beta = 0 (0^0 = 1).
DefenseAllocation allocate_defense(const CapacityProfile& cap, double beta, double capacity_floor = 0.0);

enum class Strategy { CA, DA };
std::string to_string(Strategy s);

/// Nodes ranked by ascending capacity. Exact capacity ties are ordered by a keyed hash of the
/// node id when a tie seed is given, otherwise by node id.
struct AttackOrder {
    std::vector<NodeId> ascending;
    std::optional<std::uint64_t> tie_seed;
};

AttackOrder rank_by_capacity(const CapacityProfile& cap, std::optional<std::uint64_t> tie_seed = {});

struct AttackPlan {
    Strategy strategy = Strategy::CA;
    std::vector<NodeId> targets;
    std::vector<double> cost_per_target;
    double E = 0.0;

    std::size_t n_prime() const { return targets.size(); }
};

/// Concentrated attack: the k largest-capacity nodes, largest first.
AttackPlan build_ca(const DefenseAllocation& alloc, const AttackOrder& order, std::size_t k);
AttackPlan build_ca(const DefenseAllocation& alloc, const CapacityProfile& cap, std::size_t k,
                    std::optional<std::uint64_t> tie_seed = {});

/// Number of leading nodes of `order.ascending` a distributed attack can afford: the longest
/// prefix whose summed cost stays within `budget` (relative slack 1e-12).
std::size_t affordable_prefix(const DefenseAllocation& alloc, const AttackOrder& order, double budget);

/// Distributed attack: cheapest-capacity nodes in ascending order while the total cost stays
/// within `budget`. May be empty.
AttackPlan build_da(const DefenseAllocation& alloc, const AttackOrder& order, double budget);
AttackPlan build_da(const DefenseAllocation& alloc, const CapacityProfile& cap, double budget,
                    std::optional<std::uint64_t> tie_seed = {});

}  // namespace netdef
