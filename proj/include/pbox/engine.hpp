#ifndef PBOX_ENGINE_HPP
#define PBOX_ENGINE_HPP

#include "pbox/arith.hpp"
#include "pbox/core.hpp"

#include <array>
#include <cstdint>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

namespace pbox {

/// Propagation exceeded its wake budget without reaching a fixpoint.
class PropagationBudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Dense handle of a variable inside its DomainStore.
class VarId {
public:
    constexpr VarId() = default;
    constexpr explicit VarId(std::uint32_t index) : index_(index) {}
    constexpr std::uint32_t index() const { return index_; }
    constexpr bool operator==(const VarId&) const = default;

private:
    std::uint32_t index_ = 0;
};

enum class ConstraintKind { Eq, Leq, Add, Sub, Mul, Div };

std::string_view to_string(ConstraintKind kind);
/// Accepts the lowercase names used in model files ("eq", "leq", "add", ...).
std::optional<ConstraintKind> constraint_kind_from_string(std::string_view name);

/// Binary kinds use args[0..1]. Ternary kinds read as
/// args[0] (op) args[1] = args[2], e.g. Sub(x, y, z) is x - y = z.
struct Constraint {
    ConstraintKind kind;
    std::array<VarId, 3> args{};

    static Constraint eq(VarId x, VarId y) { return {ConstraintKind::Eq, {x, y, y}}; }
    static Constraint leq(VarId x, VarId y) { return {ConstraintKind::Leq, {x, y, y}}; }
    static Constraint add(VarId x, VarId y, VarId z) { return {ConstraintKind::Add, {x, y, z}}; }
    static Constraint sub(VarId x, VarId y, VarId z) { return {ConstraintKind::Sub, {x, y, z}}; }
    static Constraint mul(VarId x, VarId y, VarId z) { return {ConstraintKind::Mul, {x, y, z}}; }
    static Constraint div(VarId x, VarId y, VarId z) { return {ConstraintKind::Div, {x, y, z}}; }

    std::size_t arity() const { return kind == ConstraintKind::Eq || kind == ConstraintKind::Leq ? 2 : 3; }
};

enum class Status { Consistent, Failed };

std::string_view to_string(Status status);

struct PropagationStats {
    std::uint64_t wakes = 0;          // propagator executions
    std::uint64_t prunes = 0;         // domain updates beyond tolerance
    std::uint64_t skipped_divisions = 0;  // reverse projections skipped for a zero-straddling divisor
};

/// Variables with p-box domains, posted constraints, watch lists and a FIFO
/// wake queue. Copying a store copies its whole state; search clones stores
/// at choice points instead of keeping a trail.
///
/// A store is used from one thread at a time.
class DomainStore {
public:
    DomainStore() = default;

    /// Throws InvalidDomain when the domain fails dominance.
    VarId new_var(const PboxInterval& initial);
    /// Convex embedding of [lo, hi].
    VarId new_var(const QuantileInterval& range);

    /// Registers c and enqueues it once. No-op on a failed store.
    void post(const Constraint& c);

    /// Narrows the quantile range of v (sliding its bound points) and wakes
    /// its watchers. Marks the store failed on an empty result.
    void restrict(VarId v, const QuantileInterval& range);

    /// Runs queued propagators to a fixpoint.
    Status propagate();

    Status status() const { return status_; }
    bool failed() const { return status_ == Status::Failed; }

    const PboxInterval& domain(VarId v) const { return domains_.at(v.index()); }
    std::size_t num_vars() const { return domains_.size(); }
    std::size_t num_constraints() const { return constraints_.size(); }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const PropagationStats& stats() const { return stats_; }

    /// Upper bound on wakes per propagate() call.
    void set_wake_budget(std::uint64_t budget) { wake_budget_ = budget; }

    /// Rough heap footprint, for benchmark reporting.
    std::size_t footprint_bytes() const;

private:
    /// Each returns true when the propagator must run again.
    bool run(std::size_t index);
    bool run_leq(VarId x, VarId y);
    bool run_eq(VarId x, VarId y);
    bool run_arith(const Constraint& c);

    /// Stores d as v's domain if any component moved beyond tolerance and
    /// wakes v's watchers. Returns false (and fails the store) on nullopt.
    bool update(VarId v, const std::optional<PboxInterval>& d);
    void fail();
    void enqueue(std::size_t index);
    void check_var(VarId v) const;

    std::vector<PboxInterval> domains_;
    std::vector<std::vector<std::uint32_t>> watchers_;
    std::vector<Constraint> constraints_;
    std::vector<bool> queued_;
    std::deque<std::uint32_t> queue_;
    Status status_ = Status::Consistent;
    PropagationStats stats_;
    std::uint64_t wake_budget_ = 50'000'000;
    static constexpr std::uint32_t kNotRunning = 0xffffffffu;
    std::uint32_t running_ = kNotRunning;
};

}  // namespace pbox

#endif  // PBOX_ENGINE_HPP
