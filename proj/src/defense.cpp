#include "netdef/defense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "netdef/error.hpp"
#include "netdef/random.hpp"

namespace netdef {

std::string to_string(Strategy s) { return s == Strategy::CA ? "CA" : "DA"; }

DefenseAllocation allocate_defense(const CapacityProfile& cap, double beta, double capacity_floor) {
    if (!std::isfinite(beta)) throw ConfigError("beta", "must be finite");
    if (capacity_floor < 0.0) throw ConfigError("capacity_floor", "must be >= 0");
    const std::size_t n = cap.size();
    if (n == 0) throw Error("allocate_defense: empty capacity profile");

    std::vector<double> c(cap.capacity);
    for (auto& x : c) x = std::max(x, capacity_floor);
    const double c_max = *std::max_element(c.begin(), c.end());
    if (!(c_max > 0.0)) throw Error("allocate_defense: every node has zero capacity");
    if (beta < 0.0 && std::any_of(c.begin(), c.end(), [](double x) { return x == 0.0; })) {
        throw ConfigError("beta", fmt::format("beta = {} < 0 is undefined with zero-capacity nodes; "
                                              "set capacity_floor",
                                              beta));
    }

    DefenseAllocation alloc;
    alloc.beta = beta;
    for (double x : c) alloc.R += x;
    alloc.p.resize(n);

    // Direct form keeps beta = 1 exact (pow(x, 1) = x and C(1) = R, so the scale is 1).
    double normalizer = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
        alloc.p[i] = std::pow(c[i], beta);
        normalizer += alloc.p[i];
        finite = finite && std::isfinite(alloc.p[i]);
    }
    if (finite && std::isfinite(normalizer) && normalizer > 0.0 && std::isnormal(normalizer)) {
        const double scale = alloc.R / normalizer;
        for (auto& x : alloc.p) x *= scale;
        alloc.normalizer = normalizer;
        return alloc;
    }

    // Extreme beta: weights relative to the largest capacity stay in range.
    double scaled_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        alloc.p[i] = c[i] == 0.0 ? (beta == 0.0 ? 1.0 : 0.0) : std::exp(beta * std::log(c[i] / c_max));
        scaled_sum += alloc.p[i];
    }
    for (auto& x : alloc.p) x *= alloc.R / scaled_sum;
    alloc.normalizer = std::exp(beta * std::log(c_max)) * scaled_sum;
    return alloc;
}

AttackOrder rank_by_capacity(const CapacityProfile& cap, std::optional<std::uint64_t> tie_seed) {
    AttackOrder order;
    order.tie_seed = tie_seed;
    const std::size_t n = cap.size();
    std::vector<std::uint64_t> key(n);
    for (NodeId v = 0; v < n; ++v) key[v] = tie_seed ? mix64(*tie_seed ^ mix64(v)) : v;
    order.ascending.resize(n);
    for (NodeId v = 0; v < n; ++v) order.ascending[v] = v;
    std::sort(order.ascending.begin(), order.ascending.end(), [&](NodeId a, NodeId b) {
        if (cap.capacity[a] != cap.capacity[b]) return cap.capacity[a] < cap.capacity[b];
        if (key[a] != key[b]) return key[a] < key[b];
        return a < b;
    });
    return order;
}

AttackPlan build_ca(const DefenseAllocation& alloc, const AttackOrder& order, std::size_t k) {
    const std::size_t n = order.ascending.size();
    if (k < 1 || k > n) throw ConfigError("k_ca", fmt::format("must lie in 1..{}, got {}", n, k));
    AttackPlan plan;
    plan.strategy = Strategy::CA;
    for (std::size_t i = 0; i < k; ++i) {
        const NodeId v = order.ascending[n - 1 - i];
        plan.targets.push_back(v);
        plan.cost_per_target.push_back(alloc.cost(v));
        plan.E += alloc.cost(v);
    }
    return plan;
}

AttackPlan build_ca(const DefenseAllocation& alloc, const CapacityProfile& cap, std::size_t k,
                    std::optional<std::uint64_t> tie_seed) {
    return build_ca(alloc, rank_by_capacity(cap, tie_seed), k);
}

std::size_t affordable_prefix(const DefenseAllocation& alloc, const AttackOrder& order, double budget) {
    const double limit = budget * (1.0 + 1e-12);
    double spent = 0.0;
    std::size_t taken = 0;
    for (NodeId v : order.ascending) {
        const double next = spent + alloc.cost(v);
        if (next > limit) break;
        spent = next;
        ++taken;
    }
    return taken;
}

AttackPlan build_da(const DefenseAllocation& alloc, const AttackOrder& order, double budget) {
    AttackPlan plan;
    plan.strategy = Strategy::DA;
    const std::size_t taken = affordable_prefix(alloc, order, budget);
    for (std::size_t i = 0; i < taken; ++i) {
        const NodeId v = order.ascending[i];
        plan.targets.push_back(v);
        plan.cost_per_target.push_back(alloc.cost(v));
        plan.E += alloc.cost(v);
    }
    return plan;
}

AttackPlan build_da(const DefenseAllocation& alloc, const CapacityProfile& cap, double budget,
                    std::optional<std::uint64_t> tie_seed) {
    return build_da(alloc, rank_by_capacity(cap, tie_seed), budget);
}

}  // namespace netdef
