#include "pbox/benchmark.hpp"

#include <algorithm>

namespace pbox::inventory {

// ============================================================================
// Generator
// ============================================================================

Rng::Rng(std::initializer_list<std::uint64_t> seeds) {
    std::vector<std::uint32_t> words;
    for (auto s : seeds) {
        words.push_back(static_cast<std::uint32_t>(s));
        words.push_back(static_cast<std::uint32_t>(s >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
}

double Rng::uniform() {
    // 53 high bits; the standard distributions are not reproducible across
    // library implementations.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

ObservationSet symmetric_observations(double centre, double spread) {
    static constexpr std::uint64_t counts[] = {1, 2, 4, 2, 1};
    std::vector<Observation> obs;
    for (int k = -2; k <= 2; ++k) {
        obs.push_back({centre + k * spread, counts[k + 2]});
    }
    return ObservationSet(std::move(obs));
}

namespace {

constexpr std::uint64_t demand_stream = 1;
constexpr std::uint64_t cost_stream = 2;

PboxInterval observed(double centre, double spread) {
    return envelope(empirical_cdf(symmetric_observations(centre, spread)));
}

}  // namespace

std::vector<DemandSample> generate_demands(std::size_t horizon, std::uint64_t seed) {
    Rng rng{seed, horizon, demand_stream};
    std::vector<DemandSample> out;
    for (std::size_t t = 0; t < horizon; ++t) {
        const double mean = rng.uniform(20.0, 40.0);
        out.push_back({mean, symmetric_observations(mean, 0.15 * mean)});
    }
    return out;
}

InventoryInstance generate_instance(std::size_t horizon, std::uint64_t seed, const GeneratorConfig& config) {
    if (horizon == 0) {
        throw InvalidDomain("horizon must be at least one cycle");
    }
    InventoryInstance inst;
    Rng costs{seed, horizon, cost_stream};
    const double a = costs.uniform(80.0, 120.0);
    const double h = costs.uniform(0.8, 1.2);
    const double v = costs.uniform(4.5, 6.5);
    inst.ordering_cost = observed(a, 0.1 * a);
    inst.holding_cost = observed(h, 0.1 * h);
    inst.item_cost = observed(v, 0.1 * v);
    for (const auto& d : generate_demands(horizon, seed)) {
        inst.demands.push_back(envelope(empirical_cdf(d.observations)));
    }
    inst.initial_inventory = config.initial_inventory;
    inst.x_min = config.x_min;
    inst.x_max = config.x_max;
    inst.validate();
    return inst;
}

// ============================================================================
// Runner
// ============================================================================

const BenchmarkRow* BenchmarkReport::find(std::size_t horizon, Flavor flavor) const {
    for (const auto& row : rows) {
        if (row.horizon == horizon && row.flavor == flavor) {
            return &row;
        }
    }
    return nullptr;
}

bool BenchmarkReport::runtimes_nondecreasing(Flavor flavor) const {
    double last = 0.0;
    for (auto n : config.horizons) {
        if (const auto* row = find(n, flavor)) {
            if (row->result.wall_seconds < last) {
                return false;
            }
            last = row->result.wall_seconds;
        }
    }
    return true;
}

std::optional<ContainmentCheck> compare_flavors(const InventoryInstance& inst, const std::vector<bool>& delta) {
    const auto p = evaluate_schedule(inst, delta);
    const auto c = evaluate_schedule(to_convex(inst), delta);
    if (!p || !c) {
        return std::nullopt;
    }
    ContainmentCheck check;
    check.horizon = inst.horizon();
    const double tol = tolerance();
    check.quantile_contained = c->total_cost.lo().q <= p->total_cost.lo().q + tol &&
                               p->total_cost.hi().q <= c->total_cost.hi().q + tol;
    check.midpoint = p->total_cost.midpoint();
    check.midpoint_bounds = project(p->total_cost, check.midpoint);
    return check;
}

namespace {

void run_instance(const InventoryInstance& inst, const BenchmarkConfig& config, BenchmarkReport& report) {
    const InventoryInstance convex = to_convex(inst);
    std::optional<std::size_t> pbox_row;
    for (auto flavor : config.flavors) {
        BenchmarkRow row;
        row.horizon = inst.horizon();
        row.flavor = flavor;
        row.result = search(flavor == Flavor::Pbox ? inst : convex, config.parallel);
        if (flavor == Flavor::Pbox) {
            pbox_row = report.rows.size();
        }
        report.rows.push_back(std::move(row));
    }
    const bool both = std::find(config.flavors.begin(), config.flavors.end(), Flavor::Convex) != config.flavors.end();
    if (both && pbox_row && report.rows[*pbox_row].result.feasible()) {
        if (auto check = compare_flavors(inst, report.rows[*pbox_row].result.best->delta)) {
            report.checks.push_back(*check);
        }
    }
    report.instances.push_back(inst);
}

}  // namespace

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
    BenchmarkReport report;
    report.config = config;
    for (auto n : config.horizons) {
        run_instance(generate_instance(n, config.seed, config.generator), config, report);
    }
    return report;
}

BenchmarkReport run_benchmark(const InventoryInstance& inst, const BenchmarkConfig& config) {
    BenchmarkReport report;
    report.config = config;
    report.config.horizons = {inst.horizon()};
    run_instance(inst, config, report);
    return report;
}

}  // namespace pbox::inventory
