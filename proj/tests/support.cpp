#include "support.hpp"

#include <algorithm>

namespace pbox::testing {

// ============================================================================
// Random generation
// ============================================================================

PboxInterval random_candidate(Gen& g, double qmin, double qmax) {
    double a = g.uniform(qmin, qmax);
    double b = g.uniform(qmin, qmax);
    if (a > b) {
        std::swap(a, b);
    }
    if (b - a < 1e-3) {
        b = a + 1e-3;
    }
    const double w = b - a;
    const CdfPoint lo{a, g.uniform(0.0, 1.0), g.uniform(0.0, 2.0 / w)};
    const CdfPoint hi{b, g.uniform(0.0, 1.0), g.uniform(0.0, 2.0 / w)};
    return PboxInterval(lo, hi);
}

PboxInterval random_domain(Gen& g, double qmin, double qmax) {
    const double roll = g.uniform(0.0, 1.0);
    if (roll < 0.15) {
        const double a = g.uniform(qmin, qmax);
        return PboxInterval::convex(a, std::min(qmax, a + g.uniform(0.0, qmax - qmin)));
    }
    if (roll < 0.2) {
        return PboxInterval::point(g.uniform(qmin, qmax));
    }
    if (roll < 0.5) {
        return random_observed_domain(g, qmin, qmax);
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        const auto iv = random_candidate(g, qmin, qmax);
        if (check_dominance(iv)) {
            return iv;
        }
    }
    return random_observed_domain(g, qmin, qmax);
}

ObservationSet random_observations(Gen& g) {
    const std::size_t n = 2 + g.index(11);
    std::vector<Observation> obs;
    double q = g.uniform(-50.0, 50.0);
    for (std::size_t i = 0; i < n; ++i) {
        obs.push_back({q, 1 + g.index(20)});
        q += g.uniform(0.01, 10.0);
    }
    std::shuffle(obs.begin(), obs.end(), g.engine());
    return ObservationSet(std::move(obs));
}

PboxInterval random_observed_domain(Gen& g, double qmin, double qmax) {
    const auto raw = random_observations(g);
    const double first = raw.entries().front().q;
    const double last = raw.entries().back().q;
    double a = g.uniform(qmin, qmax);
    double b = g.uniform(qmin, qmax);
    if (a > b) {
        std::swap(a, b);
    }
    if (b - a < 1e-3) {
        b = a + 1e-3;
    }
    std::vector<Observation> scaled;
    for (const auto& o : raw.entries()) {
        scaled.push_back({a + (o.q - first) / (last - first) * (b - a), o.count});
    }
    return envelope(empirical_cdf(ObservationSet(std::move(scaled))));
}

inventory::InventoryInstance random_scalar_cost_instance(Gen& g, std::size_t n) {
    inventory::InventoryInstance inst;
    inst.ordering_cost = PboxInterval::point(g.uniform(0.0, 150.0));
    inst.holding_cost = PboxInterval::point(g.uniform(0.0, 2.0));
    inst.item_cost = PboxInterval::point(g.uniform(0.0, 8.0));
    for (std::size_t t = 0; t < n; ++t) {
        const double mean = g.uniform(5.0, 30.0);
        if (g.coin(0.4)) {
            inst.demands.push_back(PboxInterval::point(mean));
        } else {
            inst.demands.push_back(envelope(empirical_cdf(inventory::symmetric_observations(mean, 0.15 * mean))));
        }
    }
    inst.initial_inventory = g.coin(0.3) ? g.uniform(0.0, 20.0) : 0.0;
    inst.x_min = 1.0;
    inst.x_max = g.uniform(25.0, 90.0);
    inst.validate();
    return inst;
}

Network random_network(Gen& g) {
    Network n;
    const std::size_t vars = 3 + g.index(6);
    for (std::size_t i = 0; i < vars; ++i) {
        n.domains.push_back(random_domain(g, 0.0, 100.0));
    }
    const std::size_t count = 1 + g.index(6);
    auto pick = [&] { return VarId(static_cast<std::uint32_t>(g.index(vars))); };
    for (std::size_t i = 0; i < count; ++i) {
        const auto roll = g.index(10);
        const VarId x = pick();
        const VarId y = pick();
        const VarId z = pick();
        if (roll < 3) {
            n.constraints.push_back(Constraint::add(x, y, z));
        } else if (roll < 5) {
            n.constraints.push_back(Constraint::sub(x, y, z));
        } else if (roll < 6) {
            n.constraints.push_back(Constraint::mul(x, y, z));
        } else if (roll < 8) {
            n.constraints.push_back(Constraint::leq(x, y));
        } else {
            n.constraints.push_back(Constraint::eq(x, y));
        }
    }
    return n;
}

DomainStore build_store(const std::vector<PboxInterval>& domains, const std::vector<Constraint>& constraints) {
    DomainStore s;
    for (const auto& d : domains) {
        s.new_var(d);
    }
    for (const auto& c : constraints) {
        s.post(c);
    }
    return s;
}

std::vector<PboxInterval> domains_of(const DomainStore& s) {
    std::vector<PboxInterval> out;
    for (std::size_t i = 0; i < s.num_vars(); ++i) {
        out.push_back(s.domain(VarId(static_cast<std::uint32_t>(i))));
    }
    return out;
}

// ============================================================================
// Oracles
// ============================================================================

std::optional<OracleBest> brute_force_search(const inventory::InventoryInstance& inst) {
    const std::size_t n = inst.horizon();
    std::optional<OracleBest> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<bool> delta(n);
        for (std::size_t t = 0; t < n; ++t) {
            delta[t] = (mask >> (n - 1 - t)) & 1u;
        }
        const auto r = inventory::evaluate_schedule(inst, delta);
        if (!r) {
            continue;
        }
        const double lb = r->total_cost.lo().q;
        if (!best || inventory::schedule_less(lb, r->replenishments, delta, best->lb, best->replenishments,
                                              best->delta)) {
            best = OracleBest{lb, r->replenishments, delta};
        }
    }
    return best;
}

std::vector<Corner> staircase_corners(const StaircaseCdf& cdf) {
    std::vector<Corner> out;
    double previous = 0.0;
    for (const auto& step : cdf.steps()) {
        out.push_back({step.q, previous});
        out.push_back({step.q, step.F});
        previous = step.F;
    }
    return out;
}

bool all_dominant(const DomainStore& store) {
    for (std::size_t i = 0; i < store.num_vars(); ++i) {
        if (!check_dominance(store.domain(VarId(static_cast<std::uint32_t>(i))))) {
            return false;
        }
    }
    return true;
}

}  // namespace pbox::testing
