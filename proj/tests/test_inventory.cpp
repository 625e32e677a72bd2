#include "pbox/benchmark.hpp"
#include "pbox/inventory.hpp"

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace pbox;
using namespace pbox::inventory;
using Catch::Approx;

namespace {

InventoryInstance scalar_instance(std::vector<double> demands, double a, double h, double v, double x_max) {
    InventoryInstance inst;
    inst.ordering_cost = PboxInterval::point(a);
    inst.holding_cost = PboxInterval::point(h);
    inst.item_cost = PboxInterval::point(v);
    for (double d : demands) {
        inst.demands.push_back(PboxInterval::point(d));
    }
    inst.x_max = x_max;
    return inst;
}

const std::vector<double> paper_means{26, 36, 23, 28, 32, 30, 29, 37, 25, 34};

}  // namespace

// ============================================================================
// Model
// ============================================================================

TEST_CASE("instance validation", "[inventory]") {
    auto inst = scalar_instance({5}, 1, 1, 1, 10);
    CHECK_NOTHROW(inst.validate());
    auto negative = inst;
    negative.holding_cost = PboxInterval::convex(-1, 1);
    CHECK_THROWS_AS(negative.validate(), InvalidDomain);
    auto empty = inst;
    empty.demands.clear();
    CHECK_THROWS_AS(empty.validate(), InvalidDomain);
    auto stock = inst;
    stock.initial_inventory = -1;
    CHECK_THROWS_AS(stock.validate(), InvalidDomain);
    CHECK_THROWS_AS(build_model(inst, std::vector<bool>{true, false}), InvalidDomain);
    CHECK_THROWS_AS(generate_instance(0, 42), InvalidDomain);
}

TEST_CASE("a single replenished cycle", "[inventory]") {
    const auto inst = scalar_instance({5}, 0, 0, 0, 10);
    auto m = build_model(inst, std::vector<bool>{true});
    REQUIRE(m.store.propagate() == Status::Consistent);
    CHECK(range_of(m.store.domain(m.orders[0])) == QuantileInterval(5, 10));
    CHECK(range_of(m.store.domain(m.stock[0])) == QuantileInterval(0, 5));
}

TEST_CASE("no replenishment with positive demand fails", "[inventory]") {
    const auto inst = scalar_instance({5, 8, 3}, 1, 1, 1, 50);
    auto m = build_model(inst, std::vector<bool>(3, false));
    CHECK(m.store.propagate() == Status::Failed);
    CHECK_FALSE(evaluate_schedule(inst, std::vector<bool>(3, false)));
}

TEST_CASE("zero costs give a zero total", "[inventory]") {
    testing::Gen g(67);
    auto inst = testing::random_scalar_cost_instance(g, 4);
    inst.ordering_cost = PboxInterval::point(0);
    inst.holding_cost = PboxInterval::point(0);
    inst.item_cost = PboxInterval::point(0);
    int feasible = 0;
    for (unsigned mask = 0; mask < 16; ++mask) {
        std::vector<bool> delta{bool(mask & 8), bool(mask & 4), bool(mask & 2), bool(mask & 1)};
        const auto r = evaluate_schedule(inst, delta);
        if (!r) {
            continue;
        }
        ++feasible;
        CHECK(r->total_cost.lo().q == 0.0);
        CHECK(r->total_cost.hi().q == 0.0);
    }
    CHECK(feasible > 0);
}

TEST_CASE("degenerate mean demands are covered", "[inventory]") {
    const auto inst = scalar_instance(paper_means, 0, 0, 1, 100);
    const auto result = search_serial(inst);
    REQUIRE(result.feasible());
    // With unit item cost and no other cost, TC is the cumulative order.
    CHECK(result.best->total_cost.lo().q == Approx(300.0).margin(1e-9));
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& x : result.best->orders) {
        lo += x.lo().q;
        hi += x.hi().q;
    }
    CHECK(lo <= 300.0 + 1e-9);
    CHECK(hi >= 300.0 - 1e-9);
}

TEST_CASE("replenishment count matches the schedule", "[inventory]") {
    const auto inst = scalar_instance(paper_means, 100, 1, 5, 100);
    const std::vector<bool> delta{true, false, true, false, true, false, true, false, true, false};
    const auto r = evaluate_schedule(inst, delta);
    REQUIRE(r);
    CHECK(r->replenishments == 5);
    CHECK(r->delta == delta);
    CHECK(r->total_cost.lo().q <= r->total_cost.hi().q);
    for (std::size_t t = 0; t < delta.size(); ++t) {
        if (!delta[t]) {
            CHECK(r->orders[t] == PboxInterval::point(0));
        } else {
            CHECK(r->orders[t].lo().q >= inst.x_min);
        }
        CHECK(r->stock[t].lo().q >= 0.0);
    }
}

TEST_CASE("flow conservation with scalar inputs", "[inventory][property]") {
    testing::Gen g(71);
    int checked = 0;
    while (checked < 200) {
        const std::size_t n = 1 + g.index(6);
        std::vector<double> d;
        double total = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            d.push_back(std::round(g.uniform(5, 30)));
            total += d.back();
        }
        auto inst = scalar_instance(d, 0, 0, 1, g.uniform(30, 100));
        inst.initial_inventory = g.coin(0.3) ? std::round(g.uniform(0, 20)) : 0.0;
        std::vector<bool> delta(n);
        for (std::size_t t = 0; t < n; ++t) {
            delta[t] = g.coin(0.6);
        }
        auto m = build_model(inst, delta);
        if (m.store.propagate() == Status::Failed) {
            continue;
        }
        const auto cum_orders = m.store.domain(m.purchase);
        const auto last = m.store.domain(m.stock.back());
        CHECK(last.midpoint() == Approx(inst.initial_inventory + cum_orders.midpoint() - total).margin(1e-6));
        ++checked;
    }
}

// ============================================================================
// Search
// ============================================================================

TEST_CASE("a one-cycle horizon matches enumeration", "[inventory][search]") {
    const auto inst = scalar_instance({7}, 10, 1, 2, 20);
    const auto result = search_serial(inst);
    const auto oracle = testing::brute_force_search(inst);
    REQUIRE(result.feasible());
    REQUIRE(oracle);
    CHECK(result.best->delta == oracle->delta);
    CHECK(result.best->total_cost.lo().q == oracle->lb);
}

TEST_CASE("three scalar cycles match enumeration", "[inventory][search]") {
    const auto inst = scalar_instance({10, 20, 15}, 50, 1, 3, 60);
    const auto result = search_serial(inst);
    const auto oracle = testing::brute_force_search(inst);
    REQUIRE(oracle);
    REQUIRE(result.feasible());
    CHECK(result.best->delta == oracle->delta);
    CHECK(result.best->total_cost.lo().q == oracle->lb);
}

TEST_CASE("an infeasible instance reports no schedule", "[inventory][search]") {
    const auto inst = scalar_instance({50, 50}, 1, 1, 1, 20);
    const auto result = search_serial(inst);
    CHECK_FALSE(result.feasible());
    CHECK(result.frontier.empty());
    CHECK_FALSE(search_parallel(inst).feasible());
}

TEST_CASE("branch and bound agrees with enumeration", "[inventory][search][property]") {
    testing::Gen g(73);
    for (int i = 0; i < 40; ++i) {
        const auto inst = testing::random_scalar_cost_instance(g, 1 + g.index(6));
        const auto oracle = testing::brute_force_search(inst);
        const auto result = search_serial(inst);
        REQUIRE(result.feasible() == oracle.has_value());
        if (!oracle) {
            continue;
        }
        REQUIRE(result.best->total_cost.lo().q == oracle->lb);
        REQUIRE(result.best->delta == oracle->delta);
    }
}

TEST_CASE("the frontier overlaps the incumbent", "[inventory][search]") {
    const auto inst = generate_instance(7, 42);
    const auto result = search_serial(inst);
    REQUIRE(result.feasible());
    REQUIRE_FALSE(result.frontier.empty());
    const auto& best = result.best->total_cost;
    CHECK(result.frontier.front().delta == result.best->delta);
    for (std::size_t i = 0; i < result.frontier.size(); ++i) {
        const auto& e = result.frontier[i];
        CHECK(e.total_cost.lo().q <= best.hi().q);
        CHECK(e.total_cost.hi().q >= best.lo().q);
        if (i > 0) {
            const auto& p = result.frontier[i - 1];
            CHECK(schedule_less(p.total_cost.lo().q, p.replenishments, p.delta, e.total_cost.lo().q,
                                e.replenishments, e.delta));
        }
    }
}

TEST_CASE("serial and parallel search agree", "[inventory][search]") {
    for (std::size_t n : {5, 7, 10}) {
        const auto inst = generate_instance(n, 42);
        const auto s = search_serial(inst);
        const auto p = search_parallel(inst);
        REQUIRE(s.feasible());
        REQUIRE(p.feasible());
        CHECK(s.best->delta == p.best->delta);
        CHECK(s.best->total_cost == p.best->total_cost);
        // Frontiers list evaluated schedules, and the two searches evaluate
        // different leaves; both start with the same incumbent.
        REQUIRE_FALSE(p.frontier.empty());
        CHECK(p.frontier.front().delta == s.frontier.front().delta);
        CHECK(search_parallel(inst).frontier.size() == p.frontier.size());
    }
    testing::Gen g(79);
    for (int i = 0; i < 20; ++i) {
        const auto inst = testing::random_scalar_cost_instance(g, 2 + g.index(7));
        const auto s = search_serial(inst);
        const auto p = search_parallel(inst);
        REQUIRE(s.feasible() == p.feasible());
        if (s.feasible()) {
            CHECK(s.best->delta == p.best->delta);
            CHECK(s.best->total_cost == p.best->total_cost);
        }
    }
}

// ============================================================================
// Benchmark
// ============================================================================

TEST_CASE("the generator is deterministic", "[inventory][benchmark]") {
    const auto a = generate_instance(10, 42);
    const auto b = generate_instance(10, 42);
    REQUIRE(a.demands.size() == 10);
    CHECK(a.demands == b.demands);
    CHECK(a.ordering_cost == b.ordering_cost);
    const auto c = generate_instance(10, 43);
    CHECK_FALSE(a.demands == c.demands);
    for (const auto& s : generate_demands(10, 42)) {
        CHECK(s.mean >= 20.0);
        CHECK(s.mean < 40.0);
        REQUIRE(s.observations.size() == 5);
        CHECK(s.observations.entries()[2].count == 4);
        CHECK(s.observations.entries()[4].q == Approx(s.mean * 1.3).epsilon(1e-12));
    }
}

TEST_CASE("benchmark reports are reproducible and contained", "[inventory][benchmark]") {
    BenchmarkConfig config;
    config.horizons = {7, 10};
    const auto first = run_benchmark(config);
    const auto second = run_benchmark(config);
    REQUIRE(first.rows.size() == 4);
    REQUIRE(first.rows.size() == second.rows.size());
    for (std::size_t i = 0; i < first.rows.size(); ++i) {
        const auto& a = first.rows[i].result;
        const auto& b = second.rows[i].result;
        REQUIRE(a.feasible());
        CHECK(a.best->delta == b.best->delta);
        CHECK(a.best->total_cost == b.best->total_cost);
        CHECK(a.stats.nodes == b.stats.nodes);
        CHECK(a.frontier.size() == b.frontier.size());
    }
    REQUIRE(first.checks.size() == 2);
    for (const auto& c : first.checks) {
        CHECK(c.quantile_contained);
    }
    const auto* pbox = first.find(7, Flavor::Pbox);
    const auto* convex = first.find(7, Flavor::Convex);
    REQUIRE(pbox);
    REQUIRE(convex);
    CHECK(convex->result.best->total_cost.lo().q <= pbox->result.best->total_cost.lo().q + 1e-9);
}

TEST_CASE("single-flavor benchmark", "[inventory][benchmark]") {
    BenchmarkConfig config;
    config.horizons = {7};
    config.flavors = {Flavor::Pbox};
    const auto report = run_benchmark(config);
    CHECK(report.rows.size() == 1);
    CHECK(report.checks.empty());
}
