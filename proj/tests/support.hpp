#ifndef PBOX_TESTS_SUPPORT_HPP
#define PBOX_TESTS_SUPPORT_HPP

#include "pbox/benchmark.hpp"
#include "pbox/engine.hpp"
#include "pbox/inventory.hpp"
#include "pbox/observations.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace pbox::testing {

// ============================================================================
// Random generation
// ============================================================================

class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
    bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Arbitrary candidate on [a, b] with a < b drawn inside [qmin, qmax]: the
/// two lines are random and may violate dominance.
PboxInterval random_candidate(Gen& g, double qmin, double qmax);

/// A domain that passes check_dominance: convex, point, or a random
/// candidate that happens to dominate.
PboxInterval random_domain(Gen& g, double qmin, double qmax);

/// Between 2 and 12 distinct quantiles with counts in 1..20.
ObservationSet random_observations(Gen& g);

/// Envelope of random_observations rescaled into [qmin, qmax].
PboxInterval random_observed_domain(Gen& g, double qmin, double qmax);

/// Horizon n, point costs, demands mixing points and observed p-boxes.
inventory::InventoryInstance random_scalar_cost_instance(Gen& g, std::size_t n);

/// A random constraint network over three to eight variables.
struct Network {
    std::vector<PboxInterval> domains;
    std::vector<Constraint> constraints;
};
Network random_network(Gen& g);

/// Store with the given domains and constraints posted in order.
DomainStore build_store(const std::vector<PboxInterval>& domains, const std::vector<Constraint>& constraints);
std::vector<PboxInterval> domains_of(const DomainStore& s);

// ============================================================================
// Oracles
// ============================================================================

struct OracleBest {
    double lb = 0.0;
    std::size_t replenishments = 0;
    std::vector<bool> delta;
};

/// Exhaustive enumeration over all 2^N schedules, ranked by schedule_less.
std::optional<OracleBest> brute_force_search(const inventory::InventoryInstance& inst);

/// Staircase corners (q, F(q)) and (q, F(q-)) of an empirical cdf.
struct Corner {
    double q;
    double f;
};
std::vector<Corner> staircase_corners(const StaircaseCdf& cdf);

/// True when every domain of the store passes check_dominance.
bool all_dominant(const DomainStore& store);

}  // namespace pbox::testing

#endif  // PBOX_TESTS_SUPPORT_HPP
