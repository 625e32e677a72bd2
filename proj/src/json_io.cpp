#include "pbox/json_io.hpp"

#include "pbox/observations.hpp"

#include <fstream>
#include <map>

namespace pbox::io {

namespace {

double number(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
        throw FormatError(std::string("expected numeric field \"") + key + "\"");
    }
    return j.at(key).get<double>();
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw FormatError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

}  // namespace

// ============================================================================
// Domains
// ============================================================================

json to_json(const CdfPoint& p) {
    return {{"q", p.q}, {"f", p.f}, {"s", p.s}};
}

json to_json(const PboxInterval& iv) {
    return {{"lo", to_json(iv.lo())}, {"hi", to_json(iv.hi())}};
}

CdfPoint point_from_json(const json& j) {
    return {number(j, "q"), number(j, "f"), number(j, "s")};
}

PboxInterval domain_from_json(const json& j) {
    return PboxInterval(point_from_json(field(j, "lo")), point_from_json(field(j, "hi")));
}

// ============================================================================
// Constraint models
// ============================================================================

Model model_from_json(const json& j) {
    if (!j.is_object()) {
        throw FormatError("model must be a JSON object");
    }
    Model m;
    std::map<std::string, VarId> ids;
    if (j.contains("vars")) {
        for (const auto& v : j.at("vars")) {
            const auto name = field(v, "name").get<std::string>();
            if (ids.count(name)) {
                throw FormatError("duplicate variable \"" + name + "\"");
            }
            VarId id;
            if (v.contains("domain")) {
                id = m.store.new_var(domain_from_json(v.at("domain")));
            } else if (v.contains("range")) {
                const auto& r = v.at("range");
                if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
                    throw FormatError("range of \"" + name + "\" must be [lo, hi]");
                }
                id = m.store.new_var(QuantileInterval(r[0].get<double>(), r[1].get<double>()));
            } else {
                throw FormatError("variable \"" + name + "\" needs a domain or a range");
            }
            ids.emplace(name, id);
            m.names.push_back(name);
        }
    }
    if (j.contains("constraints")) {
        for (const auto& c : j.at("constraints")) {
            const auto kind_name = field(c, "kind").get<std::string>();
            const auto kind = constraint_kind_from_string(kind_name);
            if (!kind) {
                throw FormatError("unknown constraint kind \"" + kind_name + "\"");
            }
            Constraint con{*kind, {}};
            const auto& args = field(c, "args");
            if (!args.is_array() || args.size() != con.arity()) {
                throw FormatError("constraint \"" + kind_name + "\" takes " + std::to_string(con.arity()) + " args");
            }
            for (std::size_t i = 0; i < args.size(); ++i) {
                const auto name = args[i].get<std::string>();
                const auto it = ids.find(name);
                if (it == ids.end()) {
                    throw FormatError("unknown variable \"" + name + "\"");
                }
                con.args[i] = it->second;
            }
            if (con.arity() == 2) {
                con.args[2] = con.args[1];
            }
            m.store.post(con);
        }
    }
    return m;
}

json solution_to_json(const Model& m) {
    json vars = json::array();
    for (std::size_t i = 0; i < m.names.size(); ++i) {
        vars.push_back({{"name", m.names[i]}, {"domain", to_json(m.store.domain(VarId(i)))}});
    }
    const auto& s = m.store.stats();
    return {{"status", to_string(m.store.status())},
            {"vars", vars},
            {"stats", {{"wakes", s.wakes}, {"prunes", s.prunes}, {"skipped_divisions", s.skipped_divisions}}}};
}

// ============================================================================
// Inventory instances
// ============================================================================

namespace {

PboxInterval uncertain_from_json(const json& j, const std::filesystem::path& base_dir) {
    if (j.is_number()) {
        return PboxInterval::point(j.get<double>());
    }
    if (j.is_object() && j.contains("csv")) {
        auto path = std::filesystem::path(j.at("csv").get<std::string>());
        if (path.is_relative()) {
            path = base_dir / path;
        }
        return envelope(empirical_cdf(read_observation_csv_file(path.string())));
    }
    if (j.is_object() && j.contains("observations")) {
        std::vector<Observation> obs;
        for (const auto& row : j.at("observations")) {
            if (!row.is_array() || row.size() != 2) {
                throw FormatError("observations must be [quantile, count] pairs");
            }
            obs.push_back({row[0].get<double>(), row[1].get<std::uint64_t>()});
        }
        return envelope(empirical_cdf(ObservationSet(std::move(obs))));
    }
    if (j.is_object() && j.contains("lo")) {
        return domain_from_json(j);
    }
    throw FormatError("expected a number, a domain, {\"csv\": path} or {\"observations\": [...]}");
}

}  // namespace

inventory::InventoryInstance instance_from_json(const json& j, const std::filesystem::path& base_dir) {
    using namespace inventory;
    if (!j.is_object()) {
        throw FormatError("instance must be a JSON object");
    }
    InventoryInstance inst;
    if (!j.contains("demands")) {
        const auto horizon = field(j, "horizon").get<std::size_t>();
        const auto seed = j.value("seed", std::uint64_t{42});
        inst = generate_instance(horizon, seed);
    } else {
        for (const auto& d : j.at("demands")) {
            inst.demands.push_back(uncertain_from_json(d, base_dir));
        }
        if (j.contains("horizon") && j.at("horizon").get<std::size_t>() != inst.demands.size()) {
            throw FormatError("horizon does not match the number of demands");
        }
        inst.x_max = 100.0;
    }
    if (j.contains("ordering_cost")) {
        inst.ordering_cost = uncertain_from_json(j.at("ordering_cost"), base_dir);
    }
    if (j.contains("holding_cost")) {
        inst.holding_cost = uncertain_from_json(j.at("holding_cost"), base_dir);
    }
    if (j.contains("item_cost")) {
        inst.item_cost = uncertain_from_json(j.at("item_cost"), base_dir);
    }
    inst.initial_inventory = j.value("initial_inventory", inst.initial_inventory);
    inst.x_min = j.value("x_min", inst.x_min);
    inst.x_max = j.value("x_max", inst.x_max);
    inst.validate();
    return inst;
}

json to_json(const inventory::InventoryInstance& inst) {
    json demands = json::array();
    for (const auto& d : inst.demands) {
        demands.push_back(to_json(d));
    }
    return {{"horizon", inst.horizon()},
            {"ordering_cost", to_json(inst.ordering_cost)},
            {"holding_cost", to_json(inst.holding_cost)},
            {"item_cost", to_json(inst.item_cost)},
            {"demands", demands},
            {"initial_inventory", inst.initial_inventory},
            {"x_min", inst.x_min},
            {"x_max", inst.x_max}};
}

// ============================================================================
// Reports
// ============================================================================

namespace {

json delta_json(const std::vector<bool>& delta) {
    json out = json::array();
    for (bool b : delta) {
        out.push_back(b ? 1 : 0);
    }
    return out;
}

}  // namespace

json to_json(const inventory::SearchStats& s) {
    return {{"nodes", s.nodes},
            {"leaves", s.leaves},
            {"pruned_bound", s.pruned_bound},
            {"pruned_infeasible", s.pruned_infeasible},
            {"clones", s.clones},
            {"wakes", s.wakes},
            {"peak_live_stores", s.peak_live_stores},
            {"peak_store_bytes", s.peak_store_bytes}};
}

json to_json(const inventory::ScheduleReport& r) {
    json orders = json::array();
    json stock = json::array();
    for (std::size_t t = 0; t < r.orders.size(); ++t) {
        orders.push_back(to_json(r.orders[t]));
        stock.push_back(to_json(r.stock[t]));
    }
    return {{"delta", delta_json(r.delta)},
            {"replenishments", r.replenishments},
            {"total_cost", to_json(r.total_cost)},
            {"holding_cost", to_json(r.holding_cost)},
            {"orders", orders},
            {"stock", stock},
            {"wall_seconds", r.wall_seconds},
            {"propagation", {{"wakes", r.stats.wakes}, {"prunes", r.stats.prunes}}}};
}

json to_json(const inventory::SearchResult& r, std::size_t max_frontier) {
    json out;
    out["feasible"] = r.feasible();
    out["best"] = r.best ? to_json(*r.best) : json(nullptr);
    json frontier = json::array();
    std::size_t kmin = 0;
    std::size_t kmax = 0;
    for (std::size_t i = 0; i < r.frontier.size(); ++i) {
        const auto& e = r.frontier[i];
        kmin = i == 0 ? e.replenishments : std::min(kmin, e.replenishments);
        kmax = std::max(kmax, e.replenishments);
        if (i < max_frontier) {
            frontier.push_back({{"delta", delta_json(e.delta)},
                                {"replenishments", e.replenishments},
                                {"total_cost", to_json(e.total_cost)}});
        }
    }
    out["frontier"] = frontier;
    out["frontier_size"] = r.frontier.size();
    out["frontier_replenishments"] = r.frontier.empty() ? json(nullptr) : json::array({kmin, kmax});
    out["stats"] = to_json(r.stats);
    out["wall_seconds"] = r.wall_seconds;
    return out;
}

json to_json(const inventory::BenchmarkReport& r) {
    json flavors = json::array();
    for (auto f : r.config.flavors) {
        flavors.push_back(inventory::to_string(f));
    }
    json rows = json::array();
    for (const auto& row : r.rows) {
        json j = to_json(row.result);
        j["horizon"] = row.horizon;
        j["model"] = inventory::to_string(row.flavor);
        rows.push_back(std::move(j));
    }
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"horizon", c.horizon},
                          {"quantile_contained", c.quantile_contained},
                          {"midpoint", c.midpoint},
                          {"midpoint_cdf", {c.midpoint_bounds.lower, c.midpoint_bounds.upper}},
                          {"cdf_strict", c.cdf_strict()}});
    }
    json nondecreasing;
    for (auto f : r.config.flavors) {
        nondecreasing[std::string(inventory::to_string(f))] = r.runtimes_nondecreasing(f);
    }
    json horizons = r.config.horizons;
    return {{"seed", r.config.seed},
            {"horizons", horizons},
            {"models", flavors},
            {"parallel", r.config.parallel},
            {"rows", rows},
            {"containment", checks},
            {"runtimes_nondecreasing", nondecreasing}};
}

void write_cycle_csv(std::ostream& out, const inventory::BenchmarkReport& r) {
    out.precision(17);
    out << "horizon,model,cycle,delta,x_lo_q,x_lo_f,x_lo_s,x_hi_q,x_hi_f,x_hi_s,"
           "i_lo_q,i_lo_f,i_lo_s,i_hi_q,i_hi_f,i_hi_s\n";
    auto triplet = [&out](const CdfPoint& p) { out << ',' << p.q << ',' << p.f << ',' << p.s; };
    for (const auto& row : r.rows) {
        if (!row.result.best) {
            continue;
        }
        const auto& best = *row.result.best;
        for (std::size_t t = 0; t < best.delta.size(); ++t) {
            out << row.horizon << ',' << inventory::to_string(row.flavor) << ',' << t + 1 << ','
                << (best.delta[t] ? 1 : 0);
            triplet(best.orders[t].lo());
            triplet(best.orders[t].hi());
            triplet(best.stock[t].lo());
            triplet(best.stock[t].hi());
            out << '\n';
        }
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace pbox::io
