#include "pbox/inventory.hpp"

#include <chrono>
#include <cmath>

namespace pbox::inventory {

void InventoryInstance::validate() const {
    if (demands.empty()) {
        throw InvalidDomain("inventory horizon must be at least one cycle");
    }
    for (const auto* c : {&ordering_cost, &holding_cost, &item_cost}) {
        if (c->lo().q < 0.0) {
            throw InvalidDomain("cost quantile bounds must be non-negative");
        }
        if (!check_dominance(*c)) {
            throw InvalidDomain("cost domain violates dominance");
        }
    }
    for (const auto& d : demands) {
        if (!check_dominance(d)) {
            throw InvalidDomain("demand domain violates dominance");
        }
    }
    if (!std::isfinite(initial_inventory) || initial_inventory < 0.0) {
        throw InvalidDomain("initial inventory must be a finite non-negative number");
    }
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || x_min < 0.0 || x_min > x_max) {
        throw InvalidDomain("order bounds must satisfy 0 <= x_min <= x_max");
    }
}

InventoryInstance to_convex(const InventoryInstance& inst) {
    auto cvx = [](const PboxInterval& d) {
        return d.is_point() ? d : PboxInterval::convex(d.lo().q, d.hi().q);
    };
    InventoryInstance out = inst;
    out.ordering_cost = cvx(inst.ordering_cost);
    out.holding_cost = cvx(inst.holding_cost);
    out.item_cost = cvx(inst.item_cost);
    for (auto& d : out.demands) {
        d = cvx(d);
    }
    return out;
}

std::string_view to_string(Flavor f) {
    return f == Flavor::Pbox ? "pbox" : "convex";
}

namespace {

// Creates result variables initialised to the enclosure of their defining
// operation and posts the matching constraint.
class Builder {
public:
    explicit Builder(DomainStore& store) : store_(store) {}

    VarId var(const PboxInterval& d) { return store_.new_var(d); }

    VarId add(VarId x, VarId y) {
        VarId z = var(enclose_add(store_.domain(x), store_.domain(y)));
        store_.post(Constraint::add(x, y, z));
        return z;
    }

    VarId mul(VarId x, VarId y) {
        VarId z = var(enclose_mul(store_.domain(x), store_.domain(y)));
        store_.post(Constraint::mul(x, y, z));
        return z;
    }

    /// z = x - y with z >= 0.
    VarId sub_nonneg(VarId x, VarId y) {
        const auto enc = enclose_sub(store_.domain(x), store_.domain(y));
        VarId z = var(enc);
        store_.restrict(z, {0.0, std::max(0.0, enc.hi().q)});
        store_.post(Constraint::sub(x, y, z));
        return z;
    }

private:
    DomainStore& store_;
};

PboxInterval order_domain(const InventoryInstance& inst, Decision d) {
    switch (d) {
    case Decision::Off: return PboxInterval::point(0.0);
    case Decision::On: return PboxInterval::convex(inst.x_min, inst.x_max);
    case Decision::Open: return PboxInterval::convex(0.0, inst.x_max);
    }
    return PboxInterval::point(0.0);
}

PboxInterval count_domain(std::size_t on, std::size_t open) {
    if (open == 0) {
        return PboxInterval::point(static_cast<double>(on));
    }
    return PboxInterval::convex(static_cast<double>(on), static_cast<double>(on + open));
}

}  // namespace

InventoryModel build_model(const InventoryInstance& inst, std::span<const Decision> decisions) {
    inst.validate();
    const std::size_t n = inst.horizon();
    if (decisions.size() != n) {
        throw InvalidDomain("one decision per cycle is required");
    }

    InventoryModel m;
    DomainStore& s = m.store;
    Builder b(s);

    const VarId a = b.var(inst.ordering_cost);
    const VarId h = b.var(inst.holding_cost);
    const VarId v = b.var(inst.item_cost);
    const VarId i0 = b.var(PboxInterval::point(inst.initial_inventory));
    const VarId cap = b.var(PboxInterval::point(inst.x_max));

    for (auto d : decisions) {
        m.decided_on += d == Decision::On ? 1 : 0;
        m.open += d == Decision::Open ? 1 : 0;
    }

    // I_t = I_0 + sum_{i<=t} X_i - sum_{i<=t} d_i, with running sums of orders
    // and demands.
    std::optional<VarId> cum_orders;
    std::optional<VarId> cum_demand;
    std::optional<VarId> stock_sum;
    for (std::size_t t = 0; t < n; ++t) {
        const VarId x = b.var(order_domain(inst, decisions[t]));
        const VarId d = b.var(inst.demands[t]);
        m.orders.push_back(x);

        cum_orders = cum_orders ? b.add(*cum_orders, x) : x;
        cum_demand = cum_demand ? b.add(*cum_demand, d) : d;
        const VarId supplied = b.add(i0, *cum_orders);
        const VarId stock = b.sub_nonneg(supplied, *cum_demand);
        m.stock.push_back(stock);

        stock_sum = stock_sum ? b.add(*stock_sum, stock) : stock;
    }

    m.replenishments = b.var(count_domain(m.decided_on, m.open));
    // Total ordered quantity fits in x_max per replenishment.
    const VarId capacity = b.mul(m.replenishments, cap);
    s.post(Constraint::leq(*cum_orders, capacity));

    // a, h and v are shared by every cycle, so the sum of per-cycle costs
    // factors into one product per coefficient.
    m.setup = b.mul(a, m.replenishments);
    m.holding = b.mul(h, *stock_sum);
    m.purchase = b.mul(v, *cum_orders);
    m.total = b.add(b.add(m.setup, m.holding), m.purchase);
    return m;
}

InventoryModel build_model(const InventoryInstance& inst, const std::vector<bool>& delta) {
    std::vector<Decision> d;
    d.reserve(delta.size());
    for (bool on : delta) {
        d.push_back(on ? Decision::On : Decision::Off);
    }
    return build_model(inst, d);
}

void decide(InventoryModel& model, const InventoryInstance& inst, std::size_t t, bool on) {
    if (model.open == 0) {
        throw Error("no open cycle left to decide");
    }
    --model.open;
    if (on) {
        ++model.decided_on;
        model.store.restrict(model.orders.at(t), {inst.x_min, inst.x_max});
    } else {
        model.store.restrict(model.orders.at(t), {0.0, 0.0});
    }
    const auto on_count = static_cast<double>(model.decided_on);
    model.store.restrict(model.replenishments, {on_count, on_count + static_cast<double>(model.open)});
}

std::optional<ScheduleReport> evaluate_schedule(const InventoryInstance& inst, const std::vector<bool>& delta) {
    const auto start = std::chrono::steady_clock::now();
    InventoryModel m = build_model(inst, delta);
    if (m.store.propagate() == Status::Failed) {
        return std::nullopt;
    }
    ScheduleReport r;
    r.delta = delta;
    r.replenishments = m.decided_on;
    r.total_cost = m.store.domain(m.total);
    r.holding_cost = m.store.domain(m.holding);
    for (std::size_t t = 0; t < delta.size(); ++t) {
        r.orders.push_back(m.store.domain(m.orders[t]));
        r.stock.push_back(m.store.domain(m.stock[t]));
    }
    r.stats = m.store.stats();
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

bool schedule_less(double lb_a, std::size_t k_a, const std::vector<bool>& delta_a, double lb_b, std::size_t k_b,
                   const std::vector<bool>& delta_b) {
    if (lb_a != lb_b) {
        return lb_a < lb_b;
    }
    if (k_a != k_b) {
        return k_a < k_b;
    }
    return delta_a < delta_b;
}

}  // namespace pbox::inventory
