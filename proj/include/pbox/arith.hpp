#ifndef PBOX_ARITH_HPP
#define PBOX_ARITH_HPP

#include "pbox/core.hpp"

#include <optional>

namespace pbox {

/// An interval arithmetic result overflowed to a non-finite bound.
class NonFiniteResult : public Error {
public:
    using Error::Error;
};

/// Division by an interval that contains zero.
class DivisionByZeroInterval : public Error {
public:
    using Error::Error;
};

struct QuantileInterval {
    double lo = 0.0;
    double hi = 0.0;

    /// Throws InvalidDomain unless lo <= hi and both are finite.
    QuantileInterval(double lo_, double hi_);

    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }

    bool operator==(const QuantileInterval&) const = default;
};

QuantileInterval range_of(const PboxInterval& iv);

QuantileInterval q_add(const QuantileInterval& a, const QuantileInterval& b);
QuantileInterval q_sub(const QuantileInterval& a, const QuantileInterval& b);
QuantileInterval q_mul(const QuantileInterval& a, const QuantileInterval& b);
/// Throws DivisionByZeroInterval when 0 lies in b.
QuantileInterval q_div(const QuantileInterval& a, const QuantileInterval& b);

/// Restricts iv to target, moving each bound point along its own line.
/// The result is passed through repair_dominance; nullopt on an empty
/// intersection or failed repair.
std::optional<PboxInterval> slide(const PboxInterval& iv, const QuantileInterval& target);

// ============================================================================
// Enclosures of raw results
// ============================================================================
//
// Dependency-free p-boxes for the result of an operation on two p-box
// operands. Each bound line comes from one operand's bound line, translated
// or scaled by the other operand's extreme quantile:
//
//   P(X + Y <= z) <= P(X <= z - min Y)     P(X + Y <= z) >= P(X <= z - max Y)
//   P(X * Y <= z) <= P(X <= z / min Y)     P(X * Y <= z) >= P(X <= z / max Y)
//
// (products need X >= 0 and Y > 0 for the respective bound). The quantile
// range is the real-interval result. Where both operands supply a line the
// pick_upper / pick_lower rule chooses at the midpoint. Cases with no linear
// bound (mixed signs, reciprocals of a variable) fall back to the convex
// embedding, which is always sound.

/// Upper line of x made valid to the right of hi.q (where the cdf is 1):
/// steepened until it reaches 1 at hi.q. nullopt for a point range whose line
/// stays below 1. With extends == false the line is returned as is.
std::optional<CdfPoint> extendable_upper(const PboxInterval& x, bool extends = true);
/// Lower line of x made valid to the left of lo.q (where the cdf is 0).
std::optional<CdfPoint> extendable_lower(const PboxInterval& x, bool extends = true);

/// Cdf p-box of -X: the mirrored lines of X.
PboxInterval negate(const PboxInterval& x);

PboxInterval enclose_add(const PboxInterval& x, const PboxInterval& y);
PboxInterval enclose_sub(const PboxInterval& x, const PboxInterval& y);
PboxInterval enclose_mul(const PboxInterval& x, const PboxInterval& y);
/// Throws DivisionByZeroInterval when 0 lies in y's range.
PboxInterval enclose_div(const PboxInterval& x, const PboxInterval& y);

/// Adopts the bound lines of `candidate` into `iv` where they are nowhere
/// looser on iv's range (tighten_upper / tighten_lower), but only in
/// combinations that keep dominance without any quantile pruning; otherwise
/// iv's own lines stay. The quantile range of iv is unchanged and must lie
/// inside candidate's.
PboxInterval refine_lines(const PboxInterval& iv, const PboxInterval& candidate);

}  // namespace pbox

#endif  // PBOX_ARITH_HPP
