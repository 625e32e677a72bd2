#ifndef PBOX_BENCHMARK_HPP
#define PBOX_BENCHMARK_HPP

#include "pbox/inventory.hpp"
#include "pbox/observations.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace pbox::inventory {

// ============================================================================
// Seeded instance generator
// ============================================================================

/// Deterministic 64-bit stream (mt19937_64 seeded through seed_seq) with a
/// platform-independent double conversion.
class Rng {
public:
    explicit Rng(std::initializer_list<std::uint64_t> seeds);
    /// Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

/// Five observed quantiles centre + k * spread for k = -2..2 with counts
/// 1, 2, 4, 2, 1.
ObservationSet symmetric_observations(double centre, double spread);

struct GeneratorConfig {
    double x_min = 1.0;
    double x_max = 100.0;
    double initial_inventory = 0.0;
};

/// Per cycle: mean drawn from U[20, 40], spread 0.15 * mean. Costs are built
/// the same way around drawn centres (a ~ U[80, 120], h ~ U[0.8, 1.2],
/// v ~ U[4.5, 6.5], spread 0.1 * centre). Every domain is the envelope of
/// its observations. The stream depends on (seed, horizon) only.
InventoryInstance generate_instance(std::size_t horizon, std::uint64_t seed, const GeneratorConfig& config = {});

struct DemandSample {
    double mean;
    ObservationSet observations;
};

/// The demand observations behind generate_instance, for reporting.
std::vector<DemandSample> generate_demands(std::size_t horizon, std::uint64_t seed);

// ============================================================================
// Benchmark runner
// ============================================================================

struct BenchmarkConfig {
    std::vector<std::size_t> horizons{7, 10, 24};
    std::uint64_t seed = 42;
    std::vector<Flavor> flavors{Flavor::Pbox, Flavor::Convex};
    GeneratorConfig generator;
    bool parallel = false;
};

struct BenchmarkRow {
    std::size_t horizon = 0;
    Flavor flavor = Flavor::Pbox;
    SearchResult result;
};

/// Comparison of the two flavors on one horizon.
struct ContainmentCheck {
    std::size_t horizon = 0;
    /// Convex TC quantile range contains the p-box one.
    bool quantile_contained = false;
    /// Cdf bounds of the p-box TC at its quantile midpoint.
    double midpoint = 0.0;
    CdfBounds midpoint_bounds{0.0, 1.0};
    bool cdf_informative() const { return midpoint_bounds.lower > 0.0 || midpoint_bounds.upper < 1.0; }
    /// Strictly inside [0, 1] on both sides.
    bool cdf_strict() const { return midpoint_bounds.lower > 0.0 && midpoint_bounds.upper < 1.0; }
};

struct BenchmarkReport {
    BenchmarkConfig config;
    std::vector<InventoryInstance> instances;  // one per horizon, p-box form
    std::vector<BenchmarkRow> rows;            // horizon-major, flavor order as configured
    std::vector<ContainmentCheck> checks;      // when both flavors ran

    const BenchmarkRow* find(std::size_t horizon, Flavor flavor) const;
    /// Wall times of one flavor never decrease along the configured horizons.
    bool runtimes_nondecreasing(Flavor flavor) const;
};

/// Runs search on generated instances. Containment checks re-evaluate the
/// p-box incumbent schedule on the convex instance.
BenchmarkReport run_benchmark(const BenchmarkConfig& config);

/// Same, on a caller-provided instance (horizon taken from it).
BenchmarkReport run_benchmark(const InventoryInstance& inst, const BenchmarkConfig& config);

/// Evaluates delta on inst and on to_convex(inst); nullopt when either is
/// infeasible.
std::optional<ContainmentCheck> compare_flavors(const InventoryInstance& inst, const std::vector<bool>& delta);

}  // namespace pbox::inventory

#endif  // PBOX_BENCHMARK_HPP
