#ifndef PBOX_OBSERVATIONS_HPP
#define PBOX_OBSERVATIONS_HPP

#include "pbox/core.hpp"

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace pbox {

/// No observations were supplied.
class EmptyObservations : public Error {
public:
    using Error::Error;
};

/// Malformed observation input. line() is 1-based, 0 when not line-specific.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct Observation {
    double q = 0.0;
    std::uint64_t count = 0;
};

/// Frequency table of measured quantiles. Entries are kept sorted by quantile
/// with duplicates merged, so the quantiles are strictly increasing.
class ObservationSet {
public:
    explicit ObservationSet(std::vector<Observation> entries);

    std::span<const Observation> entries() const { return entries_; }
    std::uint64_t population() const { return population_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<Observation> entries_;
    std::uint64_t population_ = 0;
};

struct Step {
    double q = 0.0;
    double F = 0.0;
};

/// Empirical (right-continuous) cdf: F(x) = steps[k].F on [q_k, q_{k+1}),
/// 0 below the first step, 1 from the last step on.
class StaircaseCdf {
public:
    explicit StaircaseCdf(std::vector<Step> steps);

    std::span<const Step> steps() const { return steps_; }

    double operator()(double x) const;
    /// Left limit F(x-).
    double left_limit(double x) const;

private:
    std::vector<Step> steps_;
};

StaircaseCdf empirical_cdf(const ObservationSet& obs);

/// Tightest pair of uniform lines enclosing the staircase: the upper line is
/// anchored at the first step's value, the lower line at the left limit of
/// the last step. A single step yields the point interval at that quantile.
PboxInterval envelope(const StaircaseCdf& cdf);

/// Parses `quantile,count` CSV with a header row. Blank lines are skipped.
ObservationSet read_observation_csv(std::istream& in);
ObservationSet read_observation_csv_file(const std::string& path);

}  // namespace pbox

#endif  // PBOX_OBSERVATIONS_HPP
