#ifndef PBOX_INVENTORY_HPP
#define PBOX_INVENTORY_HPP

#include "pbox/engine.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pbox::inventory {

/// Lot-sizing instance over a horizon of N cycles. Costs and demands are
/// p-box domains; scalars are point intervals.
struct InventoryInstance {
    PboxInterval ordering_cost = PboxInterval::point(0.0);  // a, per replenishment
    PboxInterval holding_cost = PboxInterval::point(0.0);   // h, per item and cycle
    PboxInterval item_cost = PboxInterval::point(0.0);      // v, per item ordered
    std::vector<PboxInterval> demands;                      // d_t, t = 1..N
    double initial_inventory = 0.0;                         // I_0
    double x_min = 1.0;  // smallest order placed in a replenishment cycle
    double x_max = 0.0;  // per-cycle order cap

    std::size_t horizon() const { return demands.size(); }

    /// Throws InvalidDomain when the instance is malformed.
    void validate() const;
};

/// The same instance with every domain replaced by its convex embedding.
InventoryInstance to_convex(const InventoryInstance& inst);

enum class Flavor { Pbox, Convex };

std::string_view to_string(Flavor f);

/// Replenishment decision for one cycle; Open leaves the cycle undecided
/// (order size anywhere in [0, x_max], no setup counted yet).
enum class Decision : std::uint8_t { Off, On, Open };

/// Handles into the store built for one (partial) schedule.
struct InventoryModel {
    DomainStore store;
    std::vector<VarId> orders;  // X_t
    std::vector<VarId> stock;   // I_t
    VarId replenishments;       // number of replenishment cycles
    VarId setup;                // a * replenishments
    VarId holding;              // h * sum I_t
    VarId purchase;             // v * sum X_t
    VarId total;                // TC
    std::size_t decided_on = 0;
    std::size_t open = 0;
};

/// Encodes the model for the given decisions (one per cycle). Derived
/// variables start from the enclosure of their defining operation. The
/// store is returned unpropagated; it may already be failed when a stock
/// level is forced negative.
InventoryModel build_model(const InventoryInstance& inst, std::span<const Decision> decisions);
InventoryModel build_model(const InventoryInstance& inst, const std::vector<bool>& delta);

/// Decides cycle t of a model built with Open there: narrows X_t and the
/// replenishment count. Does not propagate.
void decide(InventoryModel& model, const InventoryInstance& inst, std::size_t t, bool on);

struct ScheduleReport {
    std::vector<bool> delta;
    std::size_t replenishments = 0;
    PboxInterval total_cost = PboxInterval::point(0.0);
    PboxInterval holding_cost = PboxInterval::point(0.0);
    std::vector<PboxInterval> orders;
    std::vector<PboxInterval> stock;
    double wall_seconds = 0.0;
    PropagationStats stats;
};

/// Builds and propagates the fully specified schedule; nullopt if infeasible.
std::optional<ScheduleReport> evaluate_schedule(const InventoryInstance& inst, const std::vector<bool>& delta);

/// Total order used to pick the incumbent: lower TC quantile bound, then
/// fewer replenishments, then lexicographic delta (off before on).
bool schedule_less(double lb_a, std::size_t k_a, const std::vector<bool>& delta_a, double lb_b, std::size_t k_b,
                   const std::vector<bool>& delta_b);

struct FrontierEntry {
    std::vector<bool> delta;
    std::size_t replenishments = 0;
    PboxInterval total_cost = PboxInterval::point(0.0);
};

struct SearchStats {
    std::uint64_t nodes = 0;              // choice-point children propagated
    std::uint64_t leaves = 0;             // complete schedules evaluated
    std::uint64_t pruned_bound = 0;
    std::uint64_t pruned_infeasible = 0;
    std::uint64_t clones = 0;
    std::uint64_t wakes = 0;
    std::uint64_t peak_live_stores = 0;
    std::uint64_t peak_store_bytes = 0;
};

struct SearchResult {
    std::optional<ScheduleReport> best;
    /// Evaluated schedules whose TC interval overlaps the incumbent's,
    /// sorted by schedule_less (the incumbent first).
    std::vector<FrontierEntry> frontier;
    SearchStats stats;
    double wall_seconds = 0.0;

    bool feasible() const { return best.has_value(); }
};

/// Depth-first branch and bound over the replenishment flags (off first),
/// cloning the store at each choice point. A subtree is pruned when its TC
/// lower bound exceeds the incumbent's. This is the reference for
/// search_parallel.
SearchResult search_serial(const InventoryInstance& inst);

/// Same search with the subtrees below a fixed-depth prefix explored by an
/// OpenMP work pool. Every subtree starts from the same deterministic
/// incumbent and keeps its own, so the result does not depend on the thread
/// count or scheduling.
SearchResult search_parallel(const InventoryInstance& inst);

SearchResult search(const InventoryInstance& inst, bool parallel);

}  // namespace pbox::inventory

#endif  // PBOX_INVENTORY_HPP
