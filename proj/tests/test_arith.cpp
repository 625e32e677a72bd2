#include "pbox/arith.hpp"
#include "pbox/observations.hpp"

#include "catch_amalgamated.hpp"
#include "support.hpp"

#include <algorithm>
#include <functional>

using namespace pbox;
using Catch::Approx;

// ============================================================================
// Real interval arithmetic
// ============================================================================

TEST_CASE("quantile interval validation", "[arith]") {
    CHECK_THROWS_AS(QuantileInterval(2.0, 1.0), InvalidDomain);
    CHECK_THROWS_AS(QuantileInterval(0.0, std::numeric_limits<double>::infinity()), InvalidDomain);
}

TEST_CASE("quantile addition and subtraction", "[arith]") {
    CHECK(q_add({10, 80}, {20, 90}) == QuantileInterval(30, 170));
    CHECK(q_add({0, 0}, {3, 7}) == QuantileInterval(3, 7));
    CHECK(q_add({-5, 3}, {2, 2}) == QuantileInterval(-3, 5));
    CHECK(q_sub({30, 170}, {20, 90}) == QuantileInterval(-60, 150));
    CHECK(q_sub({3, 7}, {0, 0}) == QuantileInterval(3, 7));
    CHECK(q_sub({5, 5}, {5, 5}) == QuantileInterval(0, 0));
}

TEST_CASE("quantile multiplication and division", "[arith]") {
    CHECK(q_mul({1, 2}, {3, 4}) == QuantileInterval(3, 8));
    CHECK(q_mul({-1, 2}, {-3, 4}) == QuantileInterval(-6, 8));
    CHECK(q_mul({3, 7}, {1, 1}) == QuantileInterval(3, 7));
    CHECK(q_div({4, 8}, {2, 4}) == QuantileInterval(1, 4));
    CHECK(q_div({3, 7}, {1, 1}) == QuantileInterval(3, 7));
    CHECK_THROWS_AS(q_div({1, 2}, {-1, 1}), DivisionByZeroInterval);
    CHECK_THROWS_AS(q_mul({0, 1e300}, {0, 1e300}), NonFiniteResult);
}

TEST_CASE("quantile identities and symmetries", "[arith][property]") {
    testing::Gen g(21);
    for (int i = 0; i < 2000; ++i) {
        auto draw = [&] {
            const double a = g.uniform(-50, 50);
            return QuantileInterval(a, a + g.uniform(0, 40));
        };
        const auto a = draw();
        const auto b = draw();
        const auto c = draw();
        REQUIRE(q_add(a, b) == q_add(b, a));
        REQUIRE(q_mul(a, b) == q_mul(b, a));
        REQUIRE(q_add(a, {0, 0}) == a);
        REQUIRE(q_mul(a, {1, 1}) == a);
        const auto l = q_add(q_add(a, b), c);
        const auto r = q_add(a, q_add(b, c));
        REQUIRE(l.lo == Approx(r.lo).margin(1e-9));
        REQUIRE(l.hi == Approx(r.hi).margin(1e-9));
    }
}

TEST_CASE("quantile arithmetic against a sampling oracle", "[arith][property]") {
    using Op = std::function<QuantileInterval(const QuantileInterval&, const QuantileInterval&)>;
    using Raw = std::function<double(double, double)>;
    const std::vector<std::pair<Op, Raw>> ops = {
        {q_add, std::plus<double>()},
        {q_sub, std::minus<double>()},
        {q_mul, std::multiplies<double>()},
        {q_div, std::divides<double>()},
    };
    testing::Gen g(23);
    for (int i = 0; i < 500; ++i) {
        const double a0 = g.uniform(-20, 20);
        const QuantileInterval a(a0, a0 + g.uniform(0, 15));
        double b0 = g.uniform(-20, 20);
        QuantileInterval b(b0, b0 + g.uniform(0, 15));
        for (std::size_t k = 0; k < ops.size(); ++k) {
            if (k == 3 && b.contains_zero()) {
                b = QuantileInterval(b.hi + 0.5, b.hi + 3.0 + g.uniform(0, 5));
            }
            const auto r = ops[k].first(a, b);
            const double ends[4] = {ops[k].second(a.lo, b.lo), ops[k].second(a.lo, b.hi),
                                    ops[k].second(a.hi, b.lo), ops[k].second(a.hi, b.hi)};
            bool lo_hit = false;
            bool hi_hit = false;
            for (double e : ends) {
                lo_hit = lo_hit || e == r.lo;
                hi_hit = hi_hit || e == r.hi;
            }
            REQUIRE(lo_hit);
            REQUIRE(hi_hit);
            for (int u = 0; u <= 20; ++u) {
                for (int v = 0; v <= 20; ++v) {
                    const double x = a.lo + (a.hi - a.lo) * u / 20.0;
                    const double y = b.lo + (b.hi - b.lo) * v / 20.0;
                    const double z = ops[k].second(x, y);
                    REQUIRE(z >= r.lo - 1e-9);
                    REQUIRE(z <= r.hi + 1e-9);
                }
            }
        }
    }
}

// ============================================================================
// Sliding
// ============================================================================

TEST_CASE("slide examples", "[arith]") {
    const PboxInterval i({10.0, 0.14, 0.016}, {80.0, 0.49, 0.06});
    CHECK(slide(i, range_of(i)) == i);

    const auto moved = slide(i, {30, 170});
    REQUIRE(moved);
    CHECK(moved->lo().q == 30.0);
    CHECK(moved->lo().f == Approx(0.46).margin(1e-12));
    CHECK(moved->lo().s == 0.016);
    CHECK(moved->hi() == i.hi());

    CHECK_FALSE(slide(i, {100, 170}));
}

TEST_CASE("slide contracts and keeps cdf values in range", "[arith][property]") {
    testing::Gen g(29);
    for (int i = 0; i < 5000; ++i) {
        const auto iv = testing::random_domain(g, 0.0, 100.0);
        const double a = g.uniform(-10, 110);
        const QuantileInterval target(a, a + g.uniform(0, 60));
        const auto r = slide(iv, target);
        if (!r) {
            continue;
        }
        REQUIRE(check_dominance(*r));
        REQUIRE(r->lo().q >= std::max(iv.lo().q, target.lo));
        REQUIRE(r->hi().q <= std::min(iv.hi().q, target.hi));
        REQUIRE(r->lo().f >= 0.0);
        REQUIRE(r->lo().f <= 1.0);
        REQUIRE(r->hi().f >= 0.0);
        REQUIRE(r->hi().f <= 1.0);
        REQUIRE(r->lo().s == iv.lo().s);
        REQUIRE(r->hi().s == iv.hi().s);
        // The clipped lines are unchanged on the remaining range.
        for (int k = 0; k <= 10; ++k) {
            const double x = r->lo().q + r->width() * k / 10.0;
            REQUIRE(r->upper(x) == Approx(iv.upper(x)).margin(1e-9));
            REQUIRE(r->lower(x) == Approx(iv.lower(x)).margin(1e-9));
        }
    }
}

// ============================================================================
// Enclosures
// ============================================================================

namespace {

/// Cdf of op(A, B) for independent empirical A and B, as (value, weight).
std::vector<std::pair<double, double>> combine(const ObservationSet& a, const ObservationSet& b,
                                               const std::function<double(double, double)>& op) {
    std::vector<std::pair<double, double>> out;
    const double wa = 1.0 / static_cast<double>(a.population());
    const double wb = 1.0 / static_cast<double>(b.population());
    for (const auto& x : a.entries()) {
        for (const auto& y : b.entries()) {
            out.emplace_back(op(x.q, y.q), x.count * wa * y.count * wb);
        }
    }
    return out;
}

/// Comonotone coupling: quantile functions paired at equal levels.
std::vector<std::pair<double, double>> combine_comonotone(const ObservationSet& a, const ObservationSet& b,
                                                          const std::function<double(double, double)>& op) {
    std::vector<std::pair<double, double>> out;
    std::size_t i = 0;
    std::size_t j = 0;
    double ca = 0.0;
    double cb = 0.0;
    double level = 0.0;
    const double pa = static_cast<double>(a.population());
    const double pb = static_cast<double>(b.population());
    while (i < a.size() && j < b.size()) {
        const double na = ca + a.entries()[i].count / pa;
        const double nb = cb + b.entries()[j].count / pb;
        const double next = std::min(na, nb);
        out.emplace_back(op(a.entries()[i].q, b.entries()[j].q), next - level);
        level = next;
        if (na <= next) {
            ca = na;
            ++i;
        }
        if (nb <= next) {
            cb = nb;
            ++j;
        }
    }
    return out;
}

void check_encloses(const PboxInterval& enc, std::vector<std::pair<double, double>> sample) {
    std::sort(sample.begin(), sample.end());
    double below = 0.0;
    for (std::size_t k = 0; k < sample.size();) {
        const double z = sample[k].first;
        double at = below;
        std::size_t e = k;
        while (e < sample.size() && sample[e].first == z) {
            at += sample[e].second;
            ++e;
        }
        REQUIRE(z >= enc.lo().q - 1e-9);
        REQUIRE(z <= enc.hi().q + 1e-9);
        const double x = std::clamp(z, enc.lo().q, enc.hi().q);
        REQUIRE(enc.upper(x) >= at - 1e-9);
        REQUIRE(enc.lower(x) <= below + 1e-9);
        below = at;
        k = e;
    }
}

ObservationSet positive_observations(testing::Gen& g) {
    const auto raw = testing::random_observations(g);
    std::vector<Observation> obs;
    const double shift = -raw.entries().front().q + g.uniform(0.5, 10.0);
    for (const auto& o : raw.entries()) {
        obs.push_back({o.q + shift, o.count});
    }
    return ObservationSet(std::move(obs));
}

}  // namespace

TEST_CASE("enclosures bound every coupling of enclosed samples", "[arith][property]") {
    testing::Gen g(31);
    for (int i = 0; i < 300; ++i) {
        const auto a = positive_observations(g);
        const auto b = positive_observations(g);
        const auto x = envelope(empirical_cdf(a));
        const auto y = envelope(empirical_cdf(b));

        const auto add = enclose_add(x, y);
        CHECK(range_of(add) == q_add(range_of(x), range_of(y)));
        check_encloses(add, combine(a, b, std::plus<double>()));
        check_encloses(add, combine_comonotone(a, b, std::plus<double>()));

        const auto sub = enclose_sub(x, y);
        CHECK(range_of(sub) == q_sub(range_of(x), range_of(y)));
        check_encloses(sub, combine(a, b, std::minus<double>()));

        const auto mul = enclose_mul(x, y);
        check_encloses(mul, combine(a, b, std::multiplies<double>()));
        check_encloses(mul, combine_comonotone(a, b, std::multiplies<double>()));

        const auto div = enclose_div(x, y);
        check_encloses(div, combine(a, b, std::divides<double>()));

        const auto neg = negate(x);
        CHECK(neg.lo().q == -x.hi().q);
        CHECK(neg.hi().q == -x.lo().q);
    }
}

TEST_CASE("enclosure of scalar operands is the scalar result", "[arith]") {
    const auto r = enclose_add(PboxInterval::point(5.0), PboxInterval::point(3.0));
    CHECK(r.lo().q == 8.0);
    CHECK(r.hi().q == 8.0);
    CHECK_THROWS_AS(enclose_div(PboxInterval::point(1.0), PboxInterval::convex(-1.0, 1.0)), DivisionByZeroInterval);
}

TEST_CASE("refinement keeps the range and dominance", "[arith][property]") {
    testing::Gen g(37);
    for (int i = 0; i < 3000; ++i) {
        const auto x = testing::random_domain(g, 0.0, 60.0);
        const auto y = testing::random_domain(g, 0.0, 60.0);
        const auto enc = enclose_add(x, y);
        const double a = g.uniform(enc.lo().q, enc.hi().q);
        const auto iv = slide(PboxInterval::convex(enc.lo().q, enc.hi().q), {a, g.uniform(a, enc.hi().q)});
        REQUIRE(iv);
        const auto r = refine_lines(*iv, enc);
        REQUIRE(range_of(r) == range_of(*iv));
        REQUIRE(check_dominance(r));
    }
}
