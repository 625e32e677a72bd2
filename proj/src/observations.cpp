#include "pbox/observations.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

namespace pbox {

ObservationSet::ObservationSet(std::vector<Observation> entries) {
    if (entries.empty()) {
        throw EmptyObservations("no observations");
    }
    for (const auto& e : entries) {
        if (!std::isfinite(e.q)) {
            throw InvalidDomain("observation quantile is not finite");
        }
        if (e.count == 0) {
            throw InvalidDomain("observation counts must be positive");
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Observation& a, const Observation& b) { return a.q < b.q; });
    for (const auto& e : entries) {
        if (!entries_.empty() && entries_.back().q == e.q) {
            entries_.back().count += e.count;
        } else {
            entries_.push_back(e);
        }
        population_ += e.count;
    }
}

StaircaseCdf::StaircaseCdf(std::vector<Step> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) {
        throw EmptyObservations("no observations");
    }
    double prev_q = -INFINITY;
    double prev_F = 0.0;
    for (const auto& s : steps_) {
        if (!(s.q > prev_q) || !(s.F > prev_F) || s.F > 1.0) {
            throw InvalidDomain("staircase steps must increase strictly in quantile and cdf value");
        }
        prev_q = s.q;
        prev_F = s.F;
    }
    if (std::abs(steps_.back().F - 1.0) > 1e-12) {
        throw InvalidDomain("staircase must end at cdf value 1");
    }
}

double StaircaseCdf::operator()(double x) const {
    auto it = std::upper_bound(steps_.begin(), steps_.end(), x,
                               [](double v, const Step& s) { return v < s.q; });
    return it == steps_.begin() ? 0.0 : std::prev(it)->F;
}

double StaircaseCdf::left_limit(double x) const {
    auto it = std::lower_bound(steps_.begin(), steps_.end(), x,
                               [](const Step& s, double v) { return s.q < v; });
    return it == steps_.begin() ? 0.0 : std::prev(it)->F;
}

StaircaseCdf empirical_cdf(const ObservationSet& obs) {
    std::vector<Step> steps;
    steps.reserve(obs.size());
    std::uint64_t running = 0;
    const double m = static_cast<double>(obs.population());
    for (const auto& e : obs.entries()) {
        running += e.count;
        steps.push_back({e.q, static_cast<double>(running) / m});
    }
    return StaircaseCdf(std::move(steps));
}

PboxInterval envelope(const StaircaseCdf& cdf) {
    const auto steps = cdf.steps();
    const std::size_t n = steps.size();
    if (n == 1) {
        return PboxInterval::point(steps[0].q);
    }
    const Step& first = steps.front();
    const Step& last = steps.back();

    // Upper line through (q_1, F_1) must stay above every step value F_k.
    double s_up = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        s_up = std::max(s_up, slope_between(first.q, first.F, steps[k].q, steps[k].F));
    }
    // Lower line through (q_n, F_{n-1}) must stay below every left limit
    // F_{k-1} at q_k.
    const double f_left = steps[n - 2].F;
    double s_low = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double below = k == 0 ? 0.0 : steps[k - 1].F;
        s_low = std::max(s_low, slope_between(steps[k].q, below, last.q, f_left));
    }
    return PboxInterval({first.q, first.F, s_up}, {last.q, f_left, s_low});
}

// ============================================================================
// CSV
// ============================================================================

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace

ObservationSet read_observation_csv(std::istream& in) {
    std::vector<Observation> rows;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto text = trim(line);
        if (text.empty()) {
            continue;
        }
        if (!header_seen) {
            if (text != "quantile,count") {
                throw ParseError("expected header 'quantile,count'", lineno);
            }
            header_seen = true;
            continue;
        }
        const auto comma = text.find(',');
        if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
            throw ParseError("expected two comma-separated fields", lineno);
        }
        const auto qf = trim(text.substr(0, comma));
        const auto cf = trim(text.substr(comma + 1));

        Observation o;
        auto [qp, qe] = std::from_chars(qf.data(), qf.data() + qf.size(), o.q);
        if (qe != std::errc{} || qp != qf.data() + qf.size() || !std::isfinite(o.q)) {
            throw ParseError("invalid quantile '" + std::string(qf) + "'", lineno);
        }
        auto [cp, ce] = std::from_chars(cf.data(), cf.data() + cf.size(), o.count);
        if (ce != std::errc{} || cp != cf.data() + cf.size() || o.count == 0) {
            throw ParseError("invalid count '" + std::string(cf) + "'", lineno);
        }
        rows.push_back(o);
    }
    if (rows.empty()) {
        throw EmptyObservations("no observations");
    }
    return ObservationSet(std::move(rows));
}

ObservationSet read_observation_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open observation file '" + path + "'");
    }
    return read_observation_csv(in);
}

}  // namespace pbox
