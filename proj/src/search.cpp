#include "pbox/inventory.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>

namespace pbox::inventory {

namespace {

// Slack on the bound test so that rounding differences between a relaxed
// store and the leaf model never prune an optimal schedule.
double bound_slack(double lb) {
    return 1e-7 * std::max(1.0, std::abs(lb));
}

struct Leaf {
    std::vector<bool> delta;
    std::size_t replenishments = 0;
    PboxInterval total_cost = PboxInterval::point(0.0);
};

bool leaf_less(const Leaf& a, const Leaf& b) {
    return schedule_less(a.total_cost.lo().q, a.replenishments, a.delta, b.total_cost.lo().q, b.replenishments,
                         b.delta);
}

// One depth-first explorer with its own incumbent and leaf log.
class Explorer {
public:
    Explorer(const InventoryInstance& inst, std::optional<Leaf> incumbent)
        : inst_(inst), incumbent_(std::move(incumbent)) {}

    void run(const InventoryModel& model, std::vector<bool>& prefix, std::size_t depth) {
        prefix.resize(inst_.horizon());
        dfs(model, prefix, depth, 1);
    }

    /// Stops at the first complete schedule reached from `model`.
    void run_first(const InventoryModel& model, std::vector<bool>& prefix, std::size_t depth) {
        stop_at_first_ = true;
        run(model, prefix, depth);
        stop_at_first_ = false;
    }

    const std::optional<Leaf>& incumbent() const { return incumbent_; }
    std::vector<Leaf>& leaves() { return leaves_; }
    SearchStats& stats() { return stats_; }

private:
    bool done() const { return stop_at_first_ && incumbent_.has_value(); }

    bool bound_prunes(double lb) const {
        return incumbent_ && lb > incumbent_->total_cost.lo().q + bound_slack(incumbent_->total_cost.lo().q);
    }

    void evaluate_leaf(const std::vector<bool>& delta) {
        auto report = evaluate_schedule(inst_, delta);
        stats_.wakes += report ? report->stats.wakes : 0;
        if (!report) {
            ++stats_.pruned_infeasible;
            return;
        }
        ++stats_.leaves;
        Leaf leaf{delta, report->replenishments, report->total_cost};
        if (!incumbent_ || leaf_less(leaf, *incumbent_)) {
            incumbent_ = leaf;
        }
        leaves_.push_back(std::move(leaf));
    }

    void dfs(const InventoryModel& model, std::vector<bool>& delta, std::size_t t, std::uint64_t live) {
        stats_.peak_live_stores = std::max(stats_.peak_live_stores, live);
        stats_.peak_store_bytes = std::max(stats_.peak_store_bytes, live * model.store.footprint_bytes());
        const std::size_t n = inst_.horizon();
        for (bool on : {false, true}) {
            if (done()) {
                return;
            }
            delta[t] = on;
            if (t + 1 == n) {
                evaluate_leaf(delta);
                continue;
            }
            InventoryModel child = model;
            ++stats_.clones;
            ++stats_.nodes;
            decide(child, inst_, t, on);
            const auto before = child.store.stats().wakes;
            const Status st = child.store.propagate();
            stats_.wakes += child.store.stats().wakes - before;
            if (st == Status::Failed) {
                ++stats_.pruned_infeasible;
                continue;
            }
            if (bound_prunes(child.store.domain(child.total).lo().q)) {
                ++stats_.pruned_bound;
                continue;
            }
            dfs(child, delta, t + 1, live + 1);
        }
    }

    const InventoryInstance& inst_;
    std::optional<Leaf> incumbent_;
    std::vector<Leaf> leaves_;
    SearchStats stats_;
    bool stop_at_first_ = false;
};

void merge_stats(SearchStats& into, const SearchStats& s) {
    into.nodes += s.nodes;
    into.leaves += s.leaves;
    into.pruned_bound += s.pruned_bound;
    into.pruned_infeasible += s.pruned_infeasible;
    into.clones += s.clones;
    into.wakes += s.wakes;
    into.peak_live_stores = std::max(into.peak_live_stores, s.peak_live_stores);
    into.peak_store_bytes = std::max(into.peak_store_bytes, s.peak_store_bytes);
}

SearchResult finish(const InventoryInstance& inst, std::optional<Leaf> best, std::vector<Leaf> leaves,
                    SearchStats stats, std::chrono::steady_clock::time_point start) {
    SearchResult out;
    out.stats = stats;
    if (best) {
        out.best = evaluate_schedule(inst, best->delta);
        const double hi = best->total_cost.hi().q;
        const double lo = best->total_cost.lo().q;
        std::sort(leaves.begin(), leaves.end(), leaf_less);
        leaves.erase(std::unique(leaves.begin(), leaves.end(),
                                 [](const Leaf& a, const Leaf& b) { return a.delta == b.delta; }),
                     leaves.end());
        for (auto& leaf : leaves) {
            if (leaf.total_cost.lo().q <= hi && leaf.total_cost.hi().q >= lo) {
                out.frontier.push_back({std::move(leaf.delta), leaf.replenishments, leaf.total_cost});
            }
        }
    }
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

// Root model with every cycle open; nullopt when infeasible outright.
std::optional<InventoryModel> root_model(const InventoryInstance& inst, SearchStats& stats) {
    std::vector<Decision> open(inst.horizon(), Decision::Open);
    InventoryModel root = build_model(inst, open);
    root.store.propagate();
    stats.wakes += root.store.stats().wakes;
    if (root.store.failed()) {
        return std::nullopt;
    }
    return root;
}

}  // namespace

SearchResult search_serial(const InventoryInstance& inst) {
    const auto start = std::chrono::steady_clock::now();
    SearchStats stats;
    auto root = root_model(inst, stats);
    if (!root) {
        return finish(inst, std::nullopt, {}, stats, start);
    }
    Explorer ex(inst, std::nullopt);
    std::vector<bool> delta;
    ex.run(*root, delta, 0);
    merge_stats(stats, ex.stats());
    return finish(inst, ex.incumbent(), std::move(ex.leaves()), stats, start);
}

SearchResult search_parallel(const InventoryInstance& inst) {
    const auto start = std::chrono::steady_clock::now();
    SearchStats stats;
    auto root = root_model(inst, stats);
    if (!root) {
        return finish(inst, std::nullopt, {}, stats, start);
    }
    const std::size_t n = inst.horizon();

    // Deterministic starting incumbent: the first schedule the serial search
    // reaches.
    std::optional<Leaf> seed;
    {
        Explorer first(inst, std::nullopt);
        std::vector<bool> delta;
        first.run_first(*root, delta, 0);
        merge_stats(stats, first.stats());
        seed = first.incumbent();
    }
    if (!seed) {
        return finish(inst, std::nullopt, {}, stats, start);
    }

    // Expand feasible prefixes breadth-first up to a fixed depth.
    const std::size_t depth = std::min<std::size_t>(6, n - 1);
    struct Task {
        InventoryModel model;
        std::vector<bool> prefix;
    };
    std::vector<Task> tasks;
    tasks.push_back({*root, {}});
    for (std::size_t t = 0; t < depth; ++t) {
        std::vector<Task> next;
        for (auto& task : tasks) {
            for (bool on : {false, true}) {
                Task child{task.model, task.prefix};
                child.prefix.push_back(on);
                ++stats.clones;
                ++stats.nodes;
                decide(child.model, inst, t, on);
                const auto before = child.model.store.stats().wakes;
                child.model.store.propagate();
                stats.wakes += child.model.store.stats().wakes - before;
                if (child.model.store.failed()) {
                    ++stats.pruned_infeasible;
                    continue;
                }
                next.push_back(std::move(child));
            }
        }
        tasks = std::move(next);
    }

    const auto count = static_cast<std::int64_t>(tasks.size());
    std::vector<std::optional<Leaf>> bests(tasks.size());
    std::vector<std::vector<Leaf>> logs(tasks.size());
    std::vector<SearchStats> task_stats(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        Explorer ex(inst, seed);
        std::vector<bool> delta = tasks[i].prefix;
        ex.run(tasks[i].model, delta, depth);
        bests[i] = ex.incumbent();
        logs[i] = std::move(ex.leaves());
        task_stats[i] = ex.stats();
    }

    std::optional<Leaf> best = seed;
    std::vector<Leaf> leaves{*seed};
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        merge_stats(stats, task_stats[i]);
        if (bests[i] && leaf_less(*bests[i], *best)) {
            best = bests[i];
        }
        for (auto& leaf : logs[i]) {
            leaves.push_back(std::move(leaf));
        }
    }
    stats.peak_live_stores += tasks.size();
    return finish(inst, best, std::move(leaves), stats, start);
}

SearchResult search(const InventoryInstance& inst, bool parallel) {
    return parallel ? search_parallel(inst) : search_serial(inst);
}

}  // namespace pbox::inventory
