#ifndef PBOX_JSON_IO_HPP
#define PBOX_JSON_IO_HPP

#include "pbox/benchmark.hpp"
#include "pbox/engine.hpp"
#include "pbox/inventory.hpp"

#include "json.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace pbox::io {

using nlohmann::json;

/// Structurally invalid model or instance document (unknown kind, unknown
/// variable, missing field, wrong type).
class FormatError : public Error {
public:
    using Error::Error;
};

// ============================================================================
// Domains
// ============================================================================

/// {"q": ..., "f": ..., "s": ...}; doubles are written in shortest
/// round-trip form, so parsing restores them bit for bit.
json to_json(const CdfPoint& p);
/// {"lo": point, "hi": point}
json to_json(const PboxInterval& iv);

CdfPoint point_from_json(const json& j);
PboxInterval domain_from_json(const json& j);

// ============================================================================
// Constraint models
// ============================================================================

struct Model {
    DomainStore store;
    std::vector<std::string> names;  // indexed by VarId
};

/// {"vars": [{"name", "domain" | "range": [lo, hi]}],
///  "constraints": [{"kind": "add", "args": ["x", "y", "z"]}]}
/// Constraints are posted, not propagated.
Model model_from_json(const json& j);

/// Mirrors the variables with their current domains, plus "status" and
/// propagation statistics.
json solution_to_json(const Model& m);

// ============================================================================
// Inventory instances and reports
// ============================================================================

/// Keys: "ordering_cost", "holding_cost", "item_cost" (number, domain object,
/// {"csv": path} or {"observations": [[q, count], ...]}), "demands" (array of
/// the same forms, or "horizon" + "seed" to generate them), "initial_inventory",
/// "x_min", "x_max". Relative CSV paths resolve against base_dir.
inventory::InventoryInstance instance_from_json(const json& j, const std::filesystem::path& base_dir = {});

json to_json(const inventory::InventoryInstance& inst);
json to_json(const inventory::SearchStats& s);
json to_json(const inventory::ScheduleReport& r);
/// At most max_frontier frontier entries are listed; the size is always
/// reported.
json to_json(const inventory::SearchResult& r, std::size_t max_frontier = 100);
json to_json(const inventory::BenchmarkReport& r);

/// One row per (horizon, flavor, cycle) of each row's best schedule:
/// horizon,model,cycle,delta,then X_t and I_t triplets.
void write_cycle_csv(std::ostream& out, const inventory::BenchmarkReport& r);

json read_json_file(const std::filesystem::path& path);

}  // namespace pbox::io

#endif  // PBOX_JSON_IO_HPP
