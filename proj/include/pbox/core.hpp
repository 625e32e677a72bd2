#ifndef PBOX_CORE_HPP
#define PBOX_CORE_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace pbox {

// ============================================================================
// Errors
// ============================================================================

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two points with the same quantile have no defined slope.
class DegenerateSlope : public Error {
public:
    using Error::Error;
};

/// A quantile was queried outside the interval's quantile range.
class OutOfDomain : public Error {
public:
    using Error::Error;
};

/// A value violates the invariants of CdfPoint or PboxInterval.
class InvalidDomain : public Error {
public:
    using Error::Error;
};

/// Absolute tolerance for all invariant comparisons. Defaults to 1e-9;
/// the PBOX_TOLERANCE environment variable overrides it at first use.
double tolerance();

/// Overrides the tolerance for the rest of the process.
void set_tolerance(double tol);

// ============================================================================
// Value types
// ============================================================================

/// A point (quantile, cdf value) together with the slope of the uniform cdf
/// line issued from it.
struct CdfPoint {
    double q = 0.0;
    double f = 0.0;
    double s = 0.0;

    bool operator==(const CdfPoint&) const = default;
};

/// Throws InvalidDomain unless q and s are finite, s >= 0 and 0 <= f <= 1.
void validate(const CdfPoint& p);

struct CdfBounds {
    double lower = 0.0;
    double upper = 1.0;

    bool operator==(const CdfBounds&) const = default;
};

/// A p-box cdf-interval. The line issued from lo() is the upper cdf bound,
/// the line issued from hi() is the lower cdf bound.
///
/// Construction checks the per-point invariants and lo.q <= hi.q. Clipped
/// dominance of the two lines is a separate property (check_dominance), so
/// that conflicting candidates can be represented and repaired.
class PboxInterval {
public:
    PboxInterval(CdfPoint lo, CdfPoint hi);

    /// The convex embedding of [qlo, qhi]: upper line at 1, lower line at 0.
    static PboxInterval convex(double qlo, double qhi);

    /// A known constant. Its cdf reaches 1 at the value.
    static PboxInterval point(double value);

    const CdfPoint& lo() const { return lo_; }
    const CdfPoint& hi() const { return hi_; }

    double width() const { return hi_.q - lo_.q; }
    double midpoint() const { return lo_.q + 0.5 * (hi_.q - lo_.q); }

    /// Clipped upper cdf line: min(lo.f + lo.s (x - lo.q), 1).
    double upper(double x) const;
    /// Clipped lower cdf line: max(hi.f - hi.s (hi.q - x), 0).
    double lower(double x) const;

    bool is_convex() const;
    bool is_point() const { return lo_.q == hi_.q; }

    bool operator==(const PboxInterval&) const = default;

private:
    CdfPoint lo_;
    CdfPoint hi_;
};

/// True when every component of a and b differs by at most tol.
bool approx_equal(const PboxInterval& a, const PboxInterval& b, double tol);

std::string to_string(const CdfPoint& p);
std::string to_string(const PboxInterval& iv);

// ============================================================================
// Slope and projection
// ============================================================================

/// Average step probability between two (quantile, cdf) points.
/// Throws DegenerateSlope unless p_q < q_q.
double slope_between(double p_q, double p_f, double q_q, double q_f);

/// Bounds on F(x) for x inside the interval. Throws OutOfDomain when x lies
/// outside [lo.q, hi.q] by more than the tolerance.
CdfBounds project(const PboxInterval& iv, double x);

/// Moves a point along its own line to quantile x, clipping f into [0, 1].
/// For an upper line the move is forward, for a lower line backward; both
/// keep the clipped line unchanged on the remaining range.
CdfPoint slide_point(const CdfPoint& p, double x);

// ============================================================================
// Dominance
// ============================================================================

/// True iff upper(x) >= lower(x) - tol over [lo.q, hi.q].
///
/// upper - lower is piecewise linear with breakpoints only at the two clip
/// points, so its minimum is attained at an endpoint, a clip point, or the
/// crossing of the unclipped lines.
bool check_dominance(const PboxInterval& iv);

/// Prunes the quantile bound on the violating side to the crossing of the
/// two unclipped lines. Returns nullopt when the lines are parallel or the
/// crossing lies outside the range.
std::optional<PboxInterval> repair_dominance(const PboxInterval& iv);

// ============================================================================
// Meet
// ============================================================================

/// Value of p's unclipped line at x, clipped into [0, 1].
double line_value(const CdfPoint& p, double x);

/// Of two upper lines, the one with the smaller value at `mid`. Ties are
/// broken by the smaller value at `edge` (the low end of the range, where a
/// line clipped at 1 on the midpoint still carries information), then by the
/// smaller slope, then in favour of `own`.
const CdfPoint& pick_upper(const CdfPoint& own, const CdfPoint& other, double mid, double edge);

/// Mirror of pick_upper for lower lines: larger value at `mid`, then larger
/// value at `edge` (the high end of the range), then smaller slope, then `own`.
const CdfPoint& pick_lower(const CdfPoint& own, const CdfPoint& other, double mid, double edge);

/// True when p's clipped line lies nowhere above q's on [a, b], within the
/// tolerance.
bool line_below(const CdfPoint& p, const CdfPoint& q, double a, double b);

/// Update rule of propagators: `other` replaces `own` only when it is
/// nowhere looser on [a, b] and tighter somewhere, so a bound never loosens
/// at any quantile.
const CdfPoint& tighten_upper(const CdfPoint& own, const CdfPoint& other, double a, double b);
const CdfPoint& tighten_lower(const CdfPoint& own, const CdfPoint& other, double a, double b);

/// Line selection of meet without the dominance repair: quantile range is the
/// intersection, the upper line is the lower of the two at the midpoint and
/// the lower line the higher of the two (ties per pick_upper / pick_lower,
/// favouring the first argument). nullopt when the quantile ranges are
/// disjoint.
std::optional<PboxInterval> select_lines(const PboxInterval& a, const PboxInterval& b);

/// select_lines followed by repair_dominance.
std::optional<PboxInterval> meet(const PboxInterval& a, const PboxInterval& b);

}  // namespace pbox

#endif  // PBOX_CORE_HPP
