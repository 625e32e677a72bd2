#include "pbox/arith.hpp"

#include <algorithm>
#include <cmath>

namespace pbox {

QuantileInterval::QuantileInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidDomain("quantile interval bounds must be finite");
    }
    if (lo > hi) {
        throw InvalidDomain("quantile interval lower bound exceeds upper bound");
    }
}

QuantileInterval range_of(const PboxInterval& iv) {
    return {iv.lo().q, iv.hi().q};
}

namespace {

QuantileInterval checked(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw NonFiniteResult("interval arithmetic overflowed");
    }
    return {lo, hi};
}

}  // namespace

QuantileInterval q_add(const QuantileInterval& a, const QuantileInterval& b) {
    return checked(a.lo + b.lo, a.hi + b.hi);
}

QuantileInterval q_sub(const QuantileInterval& a, const QuantileInterval& b) {
    return checked(a.lo - b.hi, a.hi - b.lo);
}

QuantileInterval q_mul(const QuantileInterval& a, const QuantileInterval& b) {
    const double p1 = a.lo * b.lo;
    const double p2 = a.lo * b.hi;
    const double p3 = a.hi * b.lo;
    const double p4 = a.hi * b.hi;
    return checked(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

QuantileInterval q_div(const QuantileInterval& a, const QuantileInterval& b) {
    if (b.contains_zero()) {
        throw DivisionByZeroInterval("divisor interval contains zero");
    }
    const double p1 = a.lo / b.lo;
    const double p2 = a.lo / b.hi;
    const double p3 = a.hi / b.lo;
    const double p4 = a.hi / b.hi;
    return checked(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

std::optional<PboxInterval> slide(const PboxInterval& iv, const QuantileInterval& target) {
    double lo_q = std::max(iv.lo().q, target.lo);
    double hi_q = std::min(iv.hi().q, target.hi);
    if (lo_q > hi_q) {
        if (lo_q > hi_q + tolerance()) {
            return std::nullopt;
        }
        lo_q = hi_q = 0.5 * (lo_q + hi_q);
    }
    const CdfPoint lo = lo_q == iv.lo().q ? iv.lo() : slide_point(iv.lo(), lo_q);
    const CdfPoint hi = hi_q == iv.hi().q ? iv.hi() : slide_point(iv.hi(), hi_q);
    return repair_dominance(PboxInterval(lo, hi));
}

// ============================================================================
// Enclosures
// ============================================================================

std::optional<CdfPoint> extendable_upper(const PboxInterval& x, bool extends) {
    const CdfPoint& p = x.lo();
    if (!extends || x.upper(x.hi().q) >= 1.0) {
        return p;
    }
    if (x.width() <= 0.0) {
        return std::nullopt;
    }
    return CdfPoint{p.q, p.f, std::max(p.s, (1.0 - p.f) / x.width())};
}

std::optional<CdfPoint> extendable_lower(const PboxInterval& x, bool extends) {
    const CdfPoint& p = x.hi();
    if (!extends || x.lower(x.lo().q) <= 0.0) {
        return p;
    }
    if (x.width() <= 0.0) {
        return std::nullopt;
    }
    return CdfPoint{p.q, p.f, std::max(p.s, p.f / x.width())};
}

namespace {

constexpr CdfPoint kNoUpper{0.0, 1.0, 0.0};
constexpr CdfPoint kNoLower{0.0, 0.0, 0.0};

// Builds the result from optional candidate lines, anchored at the range ends.
PboxInterval assemble(const QuantileInterval& r, std::optional<CdfPoint> up1, std::optional<CdfPoint> up2,
                      std::optional<CdfPoint> low1, std::optional<CdfPoint> low2) {
    const double mid = r.lo + 0.5 * (r.hi - r.lo);
    CdfPoint up{r.lo, kNoUpper.f, kNoUpper.s};
    CdfPoint low{r.hi, kNoLower.f, kNoLower.s};
    for (const auto& c : {up1, up2}) {
        if (c) {
            up = pick_upper(up, CdfPoint{r.lo, c->f, c->s}, mid, r.lo);
        }
    }
    for (const auto& c : {low1, low2}) {
        if (c) {
            low = pick_lower(low, CdfPoint{r.hi, c->f, c->s}, mid, r.hi);
        }
    }
    PboxInterval out(up, low);
    if (!check_dominance(out)) {
        return PboxInterval::convex(r.lo, r.hi);
    }
    return out;
}

}  // namespace

PboxInterval negate(const PboxInterval& x) {
    if (x.is_point()) {
        return PboxInterval::point(-x.lo().q);
    }
    // P(-X <= t) = 1 - F_X((-t)-): the upper line of -X mirrors the lower line
    // of X and vice versa. Both are evaluated at the range ends, so use the
    // versions that reach 0 and 1 there.
    const CdfPoint low = *extendable_lower(x, true);
    const CdfPoint up = *extendable_upper(x, true);
    const PboxInterval out({-x.hi().q, 1.0 - low.f, low.s}, {-x.lo().q, 1.0 - up.f, up.s});
    return check_dominance(out) ? out : PboxInterval::convex(-x.hi().q, -x.lo().q);
}

PboxInterval enclose_add(const PboxInterval& x, const PboxInterval& y) {
    const auto r = q_add(range_of(x), range_of(y));
    return assemble(r, extendable_upper(x, y.width() > 0.0), extendable_upper(y, x.width() > 0.0),
                    extendable_lower(x, y.width() > 0.0), extendable_lower(y, x.width() > 0.0));
}

PboxInterval enclose_sub(const PboxInterval& x, const PboxInterval& y) {
    return enclose_add(x, negate(y));
}

namespace {

// Lines of x scaled by the extreme quantiles of a positive factor y:
// F_{xy}(z) <= F_x(z / y.lo) and F_{xy}(z) >= F_x(z / y.hi), for x >= 0.
std::optional<CdfPoint> scaled_upper(const PboxInterval& x, const PboxInterval& y) {
    if (x.lo().q < 0.0 || y.lo().q <= 0.0) {
        return std::nullopt;
    }
    auto p = extendable_upper(x, y.width() > 0.0);
    if (!p) {
        return std::nullopt;
    }
    return CdfPoint{0.0, p->f, p->s / y.lo().q};
}

std::optional<CdfPoint> scaled_lower(const PboxInterval& x, const PboxInterval& y) {
    if (x.lo().q < 0.0 || y.hi().q <= 0.0) {
        return std::nullopt;
    }
    auto p = extendable_lower(x, y.width() > 0.0);
    if (!p) {
        return std::nullopt;
    }
    return CdfPoint{0.0, p->f, p->s / y.hi().q};
}

}  // namespace

PboxInterval enclose_mul(const PboxInterval& x, const PboxInterval& y) {
    const auto r = q_mul(range_of(x), range_of(y));
    return assemble(r, scaled_upper(x, y), scaled_upper(y, x), scaled_lower(x, y), scaled_lower(y, x));
}

PboxInterval enclose_div(const PboxInterval& x, const PboxInterval& y) {
    const auto r = q_div(range_of(x), range_of(y));
    // For x >= 0, y > 0: F_{x/y}(z) <= F_x(z y.hi) and F_{x/y}(z) >= F_x(z y.lo).
    std::optional<CdfPoint> up;
    std::optional<CdfPoint> low;
    if (x.lo().q >= 0.0 && y.lo().q > 0.0) {
        if (auto p = extendable_upper(x, y.width() > 0.0)) {
            up = CdfPoint{0.0, p->f, p->s * y.hi().q};
        }
        if (auto p = extendable_lower(x, y.width() > 0.0)) {
            low = CdfPoint{0.0, p->f, p->s * y.lo().q};
        }
    }
    return assemble(r, up, std::nullopt, low, std::nullopt);
}

PboxInterval refine_lines(const PboxInterval& iv, const PboxInterval& candidate) {
    const double lo_q = iv.lo().q;
    const double hi_q = iv.hi().q;
    const CdfPoint cand_up = slide_point(candidate.lo(), lo_q);
    const CdfPoint cand_low = slide_point(candidate.hi(), hi_q);
    const CdfPoint& up = tighten_upper(iv.lo(), cand_up, lo_q, hi_q);
    const CdfPoint& low = tighten_lower(iv.hi(), cand_low, lo_q, hi_q);
    if (&up == &iv.lo() && &low == &iv.hi()) {
        return iv;
    }
    for (const auto& [u, l] : {std::pair{up, low}, std::pair{up, iv.hi()}, std::pair{iv.lo(), low}}) {
        PboxInterval out(u, l);
        if (check_dominance(out)) {
            return out;
        }
    }
    return iv;
}

}  // namespace pbox
