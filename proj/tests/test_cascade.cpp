#include <doctest.h>

#include <numeric>

#include "netdef/cascade.hpp"
#include "netdef/error.hpp"
#include "oracles.hpp"

using namespace netdef;
using namespace netdef::testing;

namespace {

CapacityProfile manual_capacity(std::vector<double> capacity) {
    CapacityProfile cap;
    cap.alpha = 1.0;
    cap.initial_load.assign(capacity.size(), 0.0);
    cap.capacity = std::move(capacity);
    return cap;
}

}  // namespace

TEST_CASE("capacities are (1 + alpha) times the initial load") {
    CHECK(assign_capacity(star(4), 0.3).capacity == std::vector<double>{6 * 1.3, 0, 0, 0, 0});
    CHECK(assign_capacity(path(4), 0.3).capacity == std::vector<double>{0, 2 * 1.3, 2 * 1.3, 0});
    CHECK(assign_capacity(cycle(5), 0.3).capacity == std::vector<double>(5, 1.3));
    CHECK(assign_capacity(star(4), 0.3).capacity[0] == doctest::Approx(7.8).epsilon(1e-15));
    CHECK_THROWS_AS(assign_capacity(path(4), 0.0), ConfigError);
    CHECK_THROWS_AS(assign_capacity(path(4), -0.1), ConfigError);
}

TEST_CASE("C5 single attack collapses the middle of the remaining path") {
    const auto g = cycle(5);
    const auto cap = assign_capacity(g, 0.3);
    for (NodeId target = 0; target < 5; ++target) {
        const std::vector<NodeId> attack{target};
        const auto r = run_cascade(g, cap, attack);
        CHECK(r.G == 1);
        CHECK(r.M == 3);
        CHECK(r.B == doctest::Approx(3.9).epsilon(1e-12));
        CHECK(r.rounds == 1);
        CHECK(r.overloaded == std::vector<NodeId>{(target + 2) % 5 < (target + 3) % 5
                                                     ? NodeId((target + 2) % 5)
                                                     : NodeId((target + 3) % 5),
                                                 (target + 2) % 5 < (target + 3) % 5 ? NodeId((target + 3) % 5)
                                                                                     : NodeId((target + 2) % 5)});
        CHECK(damage_G(r) == 1);
        CHECK(damage_B(r) == r.B);

        const auto oracle = oracle_cascade(g, cap.capacity, LoadConvention::Count, attack);
        CHECK(oracle.G == r.G);
        CHECK(oracle.removed == r.removed());
        CHECK(oracle.B == doctest::Approx(r.B));
    }
}

TEST_CASE("two-hub fixture absorbs the loss of one hub") {
    const auto g = two_hubs(3);
    const auto cap = assign_capacity(g, 0.1);
    CHECK(cap.initial_load[0] == 15);
    CHECK(cap.initial_load[1] == 15);
    const std::vector<NodeId> attack{0};
    const auto r = run_cascade(g, cap, attack);
    CHECK(r.G == 4);
    CHECK(r.M == 1);
    CHECK(r.B == doctest::Approx(16.5).epsilon(1e-12));
    CHECK(r.rounds == 0);
    CHECK(r.overloaded.empty());
    const auto oracle = oracle_cascade(g, cap.capacity, LoadConvention::Count, attack);
    CHECK(oracle.G == 4);
    CHECK(oracle.removed == std::vector<NodeId>{0});
}

TEST_CASE("attacking everything or nothing") {
    const auto g = generate({GraphModel::BarabasiAlbert, 40, 4.0, 3});
    const auto cap = assign_capacity(g, 0.3);
    std::vector<NodeId> all(g.node_count());
    std::iota(all.begin(), all.end(), 0);
    const auto r = run_cascade(g, cap, all);
    CHECK(r.G == 0);
    CHECK(r.M == g.node_count());
    CHECK(r.rounds == 0);
    CHECK(r.B == doctest::Approx(cap.total()));

    const auto none = run_cascade(g, cap, std::vector<NodeId>{});
    CHECK(none.G == g.node_count());
    CHECK(none.M == 0);
    CHECK(none.B == 0.0);
}

TEST_CASE("out-of-range targets are rejected") {
    const auto g = path(4);
    const auto cap = assign_capacity(g, 0.3);
    CHECK_THROWS_AS(run_cascade(g, cap, std::vector<NodeId>{4}), Error);
}

TEST_CASE("overload is strict: a node exactly at capacity survives") {
    // Path 0-1-2-3; after removing 3, node 1 carries the single pair (0, 2).
    const auto g = path(4);
    const std::vector<NodeId> attack{3};
    const auto at_capacity = run_cascade(g, manual_capacity({0, 1.0, 0, 0}), attack);
    CHECK(at_capacity.overloaded.empty());
    CHECK(at_capacity.G == 3);
    const auto below = run_cascade(g, manual_capacity({0, 0.999, 0, 0}), attack);
    CHECK(below.overloaded == std::vector<NodeId>{1});
    CHECK(below.G == 1);
    CHECK(!overloaded(13.0, 1.3 * 10.0));
    CHECK(overloaded(13.0001, 13.0));
}

TEST_CASE("attacking a leaf whose hub has slack removes only the leaf") {
    const auto g = star(4);
    const auto cap = assign_capacity(g, 0.3);
    const auto r = run_cascade(g, cap, std::vector<NodeId>{2});
    CHECK(r.M == 1);
    CHECK(r.G == 4);
    CHECK(r.B == 0.0);
}

TEST_CASE("zero-capacity nodes fail only if their recomputed load turns positive") {
    // Node 4 hangs off the triangle 0-1-4 and node 5 is a leaf of 3: both carry no load and
    // none can gain load by removals, so they never fail even as their neighbours do.
    const auto g = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 4}, {3, 5}});
    const auto cap = assign_capacity(g, 0.05);
    CHECK(cap.capacity[4] == 0.0);
    CHECK(cap.capacity[5] == 0.0);
    for (NodeId target = 0; target < 4; ++target) {
        const std::vector<NodeId> attack{target};
        const auto r = run_cascade(g, cap, attack);
        for (NodeId v : r.overloaded) CHECK(cap.capacity[v] > 0.0);
        const auto oracle = oracle_cascade(g, cap.capacity, LoadConvention::Count, attack);
        CHECK(oracle.removed == r.removed());
    }

    // Hand-set capacities make the other direction observable: node 1 has capacity 0 and
    // becomes the only bridge between 0 and 2 once 3 is removed.
    const auto c4 = cycle(4);
    const auto r = run_cascade(c4, manual_capacity({5, 0, 5, 5}), std::vector<NodeId>{3});
    CHECK(r.overloaded == std::vector<NodeId>{1});
}

TEST_CASE("run_cascade agrees with the oracle cascade on random graphs") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t n = 6 + rng() % 30;
        const auto g = trial % 2 ? random_graph(n, 0.15, rng) : generate({GraphModel::BarabasiAlbert, n, 4.0, rng()});
        const double alpha = 0.05 + 0.5 * static_cast<double>(rng() % 100) / 100.0;
        const auto cap = assign_capacity(g, alpha);
        std::vector<NodeId> attack;
        for (NodeId v = 0; v < n; ++v) {
            if (rng() % 6 == 0) attack.push_back(v);
        }
        if (attack.empty()) attack.push_back(static_cast<NodeId>(rng() % n));
        const auto r = run_cascade(g, cap, attack);
        const auto oracle = oracle_cascade(g, cap.capacity, LoadConvention::Count, attack);
        CHECK(r.removed() == oracle.removed);
        CHECK(r.G == oracle.G);
        CHECK(r.B == doctest::Approx(oracle.B));
        CHECK(r.M == r.attacked.size() + r.overloaded.size());
        CHECK(r.G <= n - r.M);

        double b = 0.0;
        for (NodeId v : r.removed()) b += cap.capacity[v];
        CHECK(r.B == b);
        std::vector<NodeId> overlap;
        std::set_intersection(r.attacked.begin(), r.attacked.end(), r.overloaded.begin(), r.overloaded.end(),
                              std::back_inserter(overlap));
        CHECK(overlap.empty());
    }
}

TEST_CASE("more tolerance never adds casualties for a fixed attack") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        const auto g = generate({GraphModel::BarabasiAlbert, 60 + rng() % 120, 4.0, rng()});
        const auto base = compute_load(g, g.all_alive());
        const NodeId hub = static_cast<NodeId>(std::max_element(base.begin(), base.end()) - base.begin());
        const std::vector<NodeId> attack{hub, static_cast<NodeId>(rng() % g.node_count())};
        std::size_t previous = g.node_count() + 1;
        for (double alpha : {0.05, 0.1, 0.2, 0.3, 0.5, 0.8, 1.5}) {
            const auto r = run_cascade(g, assign_capacity(g, alpha), attack);
            CHECK(r.M <= previous);
            previous = r.M;
        }
    }
}

TEST_CASE("cascades are pure and worker-independent") {
    const auto g = generate({GraphModel::BarabasiAlbert, 400, 4.0, 12});
    const auto cap = assign_capacity(g, 0.3, {LoadConvention::Fractional, true});
    const auto base = cap.initial_load;
    const NodeId hub = static_cast<NodeId>(std::max_element(base.begin(), base.end()) - base.begin());
    const std::vector<NodeId> attack{hub};
    const auto a = run_cascade(g, cap, attack, 1);
    const auto b = run_cascade(g, cap, attack, 4);
    CHECK(a.removed() == b.removed());
    CHECK(a.B == b.B);
    CHECK(a.G == b.G);
    CHECK(a.rounds == b.rounds);
}
