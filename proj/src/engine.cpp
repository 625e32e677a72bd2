#include "pbox/engine.hpp"

#include <algorithm>

namespace pbox {

std::string_view to_string(ConstraintKind kind) {
    switch (kind) {
    case ConstraintKind::Eq: return "eq";
    case ConstraintKind::Leq: return "leq";
    case ConstraintKind::Add: return "add";
    case ConstraintKind::Sub: return "sub";
    case ConstraintKind::Mul: return "mul";
    case ConstraintKind::Div: return "div";
    }
    return "?";
}

std::optional<ConstraintKind> constraint_kind_from_string(std::string_view name) {
    for (auto k : {ConstraintKind::Eq, ConstraintKind::Leq, ConstraintKind::Add, ConstraintKind::Sub,
                   ConstraintKind::Mul, ConstraintKind::Div}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::string_view to_string(Status status) {
    return status == Status::Consistent ? "consistent" : "failed";
}

// ============================================================================
// Store management
// ============================================================================

VarId DomainStore::new_var(const PboxInterval& initial) {
    if (!check_dominance(initial)) {
        throw InvalidDomain("initial domain violates dominance: " + to_string(initial));
    }
    domains_.push_back(initial);
    watchers_.emplace_back();
    return VarId(static_cast<std::uint32_t>(domains_.size() - 1));
}

VarId DomainStore::new_var(const QuantileInterval& range) {
    return new_var(PboxInterval::convex(range.lo, range.hi));
}

void DomainStore::check_var(VarId v) const {
    if (v.index() >= domains_.size()) {
        throw Error("unknown variable id " + std::to_string(v.index()));
    }
}

void DomainStore::post(const Constraint& c) {
    for (std::size_t i = 0; i < c.arity(); ++i) {
        check_var(c.args[i]);
    }
    if (failed()) {
        return;
    }
    const auto index = static_cast<std::uint32_t>(constraints_.size());
    constraints_.push_back(c);
    queued_.push_back(false);
    for (std::size_t i = 0; i < c.arity(); ++i) {
        auto& w = watchers_[c.args[i].index()];
        if (std::find(w.begin(), w.end(), index) == w.end()) {
            w.push_back(index);
        }
    }
    enqueue(index);
}

void DomainStore::restrict(VarId v, const QuantileInterval& range) {
    check_var(v);
    if (failed()) {
        return;
    }
    update(v, slide(domain(v), range));
}

void DomainStore::enqueue(std::size_t index) {
    if (!queued_[index]) {
        queued_[index] = true;
        queue_.push_back(static_cast<std::uint32_t>(index));
    }
}

void DomainStore::fail() {
    status_ = Status::Failed;
    queue_.clear();
    std::fill(queued_.begin(), queued_.end(), false);
}

bool DomainStore::update(VarId v, const std::optional<PboxInterval>& d) {
    if (!d) {
        fail();
        return false;
    }
    PboxInterval& current = domains_[v.index()];
    if (approx_equal(current, *d, tolerance())) {
        return true;
    }
    current = *d;
    ++stats_.prunes;
    for (auto index : watchers_[v.index()]) {
        // The running propagator decides itself whether it needs another pass.
        if (index != running_) {
            enqueue(index);
        }
    }
    return true;
}

Status DomainStore::propagate() {
    std::uint64_t wakes = 0;
    while (!failed() && !queue_.empty()) {
        const auto index = queue_.front();
        queue_.pop_front();
        queued_[index] = false;
        if (++wakes > wake_budget_) {
            throw PropagationBudgetExceeded("propagation did not stabilise within the wake budget");
        }
        ++stats_.wakes;
        running_ = index;
        const bool again = run(index);
        running_ = kNotRunning;
        if (again && !failed()) {
            enqueue(index);
        }
    }
    return status_;
}

std::size_t DomainStore::footprint_bytes() const {
    std::size_t bytes = domains_.capacity() * sizeof(PboxInterval) + constraints_.capacity() * sizeof(Constraint) +
                        watchers_.capacity() * sizeof(std::vector<std::uint32_t>) + queued_.capacity() / 8 +
                        queue_.size() * sizeof(std::uint32_t);
    for (const auto& w : watchers_) {
        bytes += w.capacity() * sizeof(std::uint32_t);
    }
    return bytes;
}

// ============================================================================
// Propagators
// ============================================================================

bool DomainStore::run(std::size_t index) {
    const Constraint c = constraints_[index];
    switch (c.kind) {
    case ConstraintKind::Eq: return run_eq(c.args[0], c.args[1]);
    case ConstraintKind::Leq: return run_leq(c.args[0], c.args[1]);
    default: return run_arith(c);
    }
}

bool DomainStore::run_eq(VarId x, VarId y) {
    // Each side takes the common range and adopts the other's lines where
    // they are nowhere looser. A repair inside slide can shrink the range,
    // which may make further lines comparable, hence the re-run on change.
    const PboxInterval dx = domain(x);
    const PboxInterval dy = domain(y);
    auto nx = slide(dx, range_of(dy));
    auto ny = slide(dy, range_of(dx));
    if (!nx || !ny) {
        fail();
        return false;
    }
    const auto before = stats_.prunes;
    if (update(x, refine_lines(*nx, dy))) {
        update(y, refine_lines(*ny, dx));
    }
    return stats_.prunes != before;
}

bool DomainStore::run_leq(VarId x, VarId y) {
    // X <= Y: on quantiles, hi(X) <= hi(Y) and lo(Y) >= lo(X). On cdfs,
    // F_X >= F_Y pointwise, so X's lower line may take Y's and Y's upper
    // line may take X's.
    const PboxInterval dx = domain(x);
    const PboxInterval dy = domain(y);
    // Targets stay well-formed when the ranges are disjoint; slide then
    // reports the empty intersection.
    auto nx = slide(dx, {std::min(dx.lo().q, dy.hi().q), std::min(dx.hi().q, dy.hi().q)});
    auto ny = slide(dy, {std::max(dy.lo().q, dx.lo().q), std::max(dy.hi().q, dx.lo().q)});
    if (!nx || !ny) {
        fail();
        return false;
    }
    // A line only bounds its own variable's cdf inside that variable's range,
    // so a line read beyond it must first be extended to 0 (resp. 1).
    CdfPoint x_low = nx->hi();
    if (auto line = extendable_lower(*ny, nx->lo().q < ny->lo().q)) {
        x_low = tighten_lower(x_low, slide_point(*line, nx->hi().q), nx->lo().q, nx->hi().q);
    }
    CdfPoint y_up = ny->lo();
    if (auto line = extendable_upper(*nx, ny->hi().q > nx->hi().q)) {
        y_up = tighten_upper(y_up, slide_point(*line, ny->lo().q), ny->lo().q, ny->hi().q);
    }

    const auto rx = repair_dominance(PboxInterval(nx->lo(), x_low));
    const auto ry = repair_dominance(PboxInterval(y_up, ny->hi()));
    // Repair may move either bound, so any change asks for another pass.
    const auto before = stats_.prunes;
    if (update(x, rx)) {
        update(y, ry);
    }
    return stats_.prunes != before;
}

namespace {

struct Projection {
    std::optional<QuantileInterval> range;  // nullopt: skipped (zero-straddling divisor)
    PboxInterval enclosure;
};

}  // namespace

bool DomainStore::run_arith(const Constraint& c) {
    const VarId x = c.args[0];
    const VarId y = c.args[1];
    const VarId z = c.args[2];

    // Each step narrows one variable to the real-interval projection, then
    // lets it adopt tighter lines from the projection's enclosure.
    auto apply = [this](VarId v, const Projection& p) {
        if (!p.range) {
            ++stats_.skipped_divisions;
            return true;
        }
        auto d = slide(domain(v), *p.range);
        if (d) {
            d = refine_lines(*d, p.enclosure);
        }
        return update(v, d);
    };
    auto q = [this](VarId v) { return range_of(domain(v)); };
    auto mul_proj = [&](VarId a, VarId b) {
        return Projection{q_mul(q(a), q(b)), enclose_mul(domain(a), domain(b))};
    };
    // Quotient a / b for a reverse projection: skipped when b straddles zero.
    auto div_proj = [&](VarId a, VarId b) {
        if (q(b).contains_zero()) {
            return Projection{std::nullopt, domain(a)};
        }
        return Projection{q_div(q(a), q(b)), enclose_div(domain(a), domain(b))};
    };

    // Projections run z, x, y. Only changes to x or y can leave an earlier
    // projection of this pass stale; a change to z alone is already seen by
    // the later ones.
    std::optional<std::uint64_t> after_z;
    auto first = [&](bool ok) {
        after_z = stats_.prunes;
        return ok;
    };
    switch (c.kind) {
    case ConstraintKind::Add:  // x + y = z
        first(apply(z, {q_add(q(x), q(y)), enclose_add(domain(x), domain(y))})) &&
            apply(x, {q_sub(q(z), q(y)), enclose_sub(domain(z), domain(y))}) &&
            apply(y, {q_sub(q(z), q(x)), enclose_sub(domain(z), domain(x))});
        break;
    case ConstraintKind::Sub:  // x - y = z
        first(apply(z, {q_sub(q(x), q(y)), enclose_sub(domain(x), domain(y))})) &&
            apply(x, {q_add(q(z), q(y)), enclose_add(domain(z), domain(y))}) &&
            apply(y, {q_sub(q(x), q(z)), enclose_sub(domain(x), domain(z))});
        break;
    case ConstraintKind::Mul:  // x * y = z
        first(apply(z, mul_proj(x, y))) && apply(x, div_proj(z, y)) && apply(y, div_proj(z, x));
        break;
    case ConstraintKind::Div:  // x / y = z
        if (q(y).contains_zero()) {
            throw DivisionByZeroInterval("divisor of a division constraint straddles zero");
        }
        first(apply(z, {q_div(q(x), q(y)), enclose_div(domain(x), domain(y))})) && apply(x, mul_proj(z, y)) &&
            apply(y, div_proj(x, z));
        break;
    default: break;
    }
    return after_z && stats_.prunes != *after_z;
}

}  // namespace pbox
