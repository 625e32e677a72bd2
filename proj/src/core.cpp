#include "pbox/core.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace pbox {

namespace {

constexpr double kDefaultTolerance = 1e-9;

double initial_tolerance() {
    if (const char* env = std::getenv("PBOX_TOLERANCE")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && std::isfinite(v) && v >= 0.0) {
            return v;
        }
    }
    return kDefaultTolerance;
}

std::atomic<double>& tolerance_slot() {
    static std::atomic<double> slot{initial_tolerance()};
    return slot;
}

double clip01(double v) {
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace

double tolerance() {
    return tolerance_slot().load(std::memory_order_relaxed);
}

void set_tolerance(double tol) {
    if (!std::isfinite(tol) || tol < 0.0) {
        throw Error("tolerance must be a finite non-negative number");
    }
    tolerance_slot().store(tol, std::memory_order_relaxed);
}

// ============================================================================
// CdfPoint / PboxInterval
// ============================================================================

void validate(const CdfPoint& p) {
    if (!std::isfinite(p.q)) {
        throw InvalidDomain("cdf point quantile is not finite");
    }
    if (!std::isfinite(p.s) || p.s < 0.0) {
        throw InvalidDomain("cdf point slope must be finite and non-negative: " + to_string(p));
    }
    if (!(p.f >= 0.0 && p.f <= 1.0)) {
        throw InvalidDomain("cdf value outside [0,1]: " + to_string(p));
    }
}

PboxInterval::PboxInterval(CdfPoint lo, CdfPoint hi) : lo_(lo), hi_(hi) {
    validate(lo_);
    validate(hi_);
    if (lo_.q > hi_.q) {
        throw InvalidDomain("lower quantile exceeds upper quantile: " + to_string(*this));
    }
}

PboxInterval PboxInterval::convex(double qlo, double qhi) {
    return PboxInterval({qlo, 1.0, 0.0}, {qhi, 0.0, 0.0});
}

PboxInterval PboxInterval::point(double value) {
    return PboxInterval({value, 1.0, 0.0}, {value, 1.0, 0.0});
}

double PboxInterval::upper(double x) const {
    return std::min(lo_.f + lo_.s * (x - lo_.q), 1.0);
}

double PboxInterval::lower(double x) const {
    return std::max(hi_.f - hi_.s * (hi_.q - x), 0.0);
}

bool PboxInterval::is_convex() const {
    return lo_.f == 1.0 && lo_.s == 0.0 && hi_.f == 0.0 && hi_.s == 0.0;
}

bool approx_equal(const PboxInterval& a, const PboxInterval& b, double tol) {
    auto close = [tol](double x, double y) { return std::abs(x - y) <= tol; };
    return close(a.lo().q, b.lo().q) && close(a.lo().f, b.lo().f) && close(a.lo().s, b.lo().s) &&
           close(a.hi().q, b.hi().q) && close(a.hi().f, b.hi().f) && close(a.hi().s, b.hi().s);
}

std::string to_string(const CdfPoint& p) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << p.q << ", " << p.f << ", " << p.s << ')';
    return os.str();
}

std::string to_string(const PboxInterval& iv) {
    return '[' + to_string(iv.lo()) + ", " + to_string(iv.hi()) + ']';
}

// ============================================================================
// Slope and projection
// ============================================================================

double slope_between(double p_q, double p_f, double q_q, double q_f) {
    if (!(p_q < q_q)) {
        throw DegenerateSlope("slope needs strictly increasing quantiles");
    }
    return (q_f - p_f) / (q_q - p_q);
}

CdfBounds project(const PboxInterval& iv, double x) {
    const double tol = tolerance();
    if (!(x >= iv.lo().q - tol && x <= iv.hi().q + tol)) {
        throw OutOfDomain("quantile outside interval range");
    }
    return {iv.lower(x), iv.upper(x)};
}

double line_value(const CdfPoint& p, double x) {
    return clip01(p.f + p.s * (x - p.q));
}

CdfPoint slide_point(const CdfPoint& p, double x) {
    return {x, line_value(p, x), p.s};
}

// ============================================================================
// Dominance
// ============================================================================

namespace {

// Abscissa where the two unclipped lines cross, if they are not parallel.
std::optional<double> crossing(const PboxInterval& iv) {
    const CdfPoint& a = iv.lo();
    const CdfPoint& b = iv.hi();
    const double ds = a.s - b.s;
    if (ds == 0.0) {
        return std::nullopt;
    }
    return (b.f - b.s * b.q - a.f + a.s * a.q) / ds;
}

}  // namespace

bool check_dominance(const PboxInterval& iv) {
    const double tol = tolerance();
    const CdfPoint& a = iv.lo();
    const CdfPoint& b = iv.hi();

    std::array<double, 5> xs{};
    std::size_t n = 0;
    xs[n++] = a.q;
    xs[n++] = b.q;
    if (a.s > 0.0) {
        xs[n++] = a.q + (1.0 - a.f) / a.s;
    }
    if (b.s > 0.0) {
        xs[n++] = b.q - b.f / b.s;
    }
    if (auto x = crossing(iv)) {
        xs[n++] = *x;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double x = xs[i];
        if (x < a.q || x > b.q) {
            continue;
        }
        if (iv.upper(x) < iv.lower(x) - tol) {
            return false;
        }
    }
    return true;
}

std::optional<PboxInterval> repair_dominance(const PboxInterval& iv) {
    if (check_dominance(iv)) {
        return iv;
    }
    // Inside [lo.q, hi.q] the clipped lines violate dominance exactly where
    // the unclipped ones do, so the violating region lies on one side of the
    // crossing.
    const auto x = crossing(iv);
    if (!x) {
        return std::nullopt;
    }
    const double tol = tolerance();
    const CdfPoint& a = iv.lo();
    const CdfPoint& b = iv.hi();
    if (!(*x >= a.q - tol && *x <= b.q + tol)) {
        return std::nullopt;
    }
    const double cut = std::clamp(*x, a.q, b.q);
    std::optional<PboxInterval> out;
    if (a.s > b.s) {
        out = PboxInterval(slide_point(a, cut), b);
    } else {
        out = PboxInterval(a, slide_point(b, cut));
    }
    if (!check_dominance(*out)) {
        return std::nullopt;
    }
    return out;
}

// ============================================================================
// Meet
// ============================================================================

const CdfPoint& pick_upper(const CdfPoint& own, const CdfPoint& other, double mid, double edge) {
    const double tol = tolerance();
    const double vo = line_value(own, mid);
    const double vt = line_value(other, mid);
    if (vt < vo - tol) {
        return other;
    }
    if (vt > vo + tol) {
        return own;
    }
    const double eo = line_value(own, edge);
    const double et = line_value(other, edge);
    if (et < eo - tol) {
        return other;
    }
    if (et <= eo + tol && other.s < own.s) {
        return other;
    }
    return own;
}

const CdfPoint& pick_lower(const CdfPoint& own, const CdfPoint& other, double mid, double edge) {
    const double tol = tolerance();
    const double vo = line_value(own, mid);
    const double vt = line_value(other, mid);
    if (vt > vo + tol) {
        return other;
    }
    if (vt < vo - tol) {
        return own;
    }
    const double eo = line_value(own, edge);
    const double et = line_value(other, edge);
    if (et > eo + tol) {
        return other;
    }
    if (et >= eo - tol && other.s < own.s) {
        return other;
    }
    return own;
}

bool line_below(const CdfPoint& p, const CdfPoint& q, double a, double b) {
    // Both clipped lines are linear between their clip points, so the
    // comparison only needs the range ends and the clip points inside.
    double xs[6] = {a, b, a, a, a, a};
    std::size_t n = 2;
    for (const auto* line : {&p, &q}) {
        if (line->s <= 0.0) {
            continue;
        }
        for (double level : {0.0, 1.0}) {
            const double x = line->q + (level - line->f) / line->s;
            if (x > a && x < b) {
                xs[n++] = x;
            }
        }
    }
    const double tol = tolerance();
    for (std::size_t i = 0; i < n; ++i) {
        if (line_value(p, xs[i]) > line_value(q, xs[i]) + tol) {
            return false;
        }
    }
    return true;
}

const CdfPoint& tighten_upper(const CdfPoint& own, const CdfPoint& other, double a, double b) {
    return line_below(other, own, a, b) && !line_below(own, other, a, b) ? other : own;
}

const CdfPoint& tighten_lower(const CdfPoint& own, const CdfPoint& other, double a, double b) {
    return line_below(own, other, a, b) && !line_below(other, own, a, b) ? other : own;
}

std::optional<PboxInterval> select_lines(const PboxInterval& a, const PboxInterval& b) {
    double lo_q = std::max(a.lo().q, b.lo().q);
    double hi_q = std::min(a.hi().q, b.hi().q);
    if (lo_q > hi_q) {
        if (lo_q > hi_q + tolerance()) {
            return std::nullopt;
        }
        lo_q = hi_q = 0.5 * (lo_q + hi_q);
    }
    const double mid = lo_q + 0.5 * (hi_q - lo_q);
    const CdfPoint& up = pick_upper(a.lo(), b.lo(), mid, lo_q);
    const CdfPoint& down = pick_lower(a.hi(), b.hi(), mid, hi_q);
    return PboxInterval(slide_point(up, lo_q), slide_point(down, hi_q));
}

std::optional<PboxInterval> meet(const PboxInterval& a, const PboxInterval& b) {
    auto sel = select_lines(a, b);
    if (!sel) {
        return std::nullopt;
    }
    return repair_dominance(*sel);
}

}  // namespace pbox
