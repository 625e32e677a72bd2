#ifndef PBOX_KERNELS_HPP
#define PBOX_KERNELS_HPP

#include "pbox/core.hpp"

#include <span>
#include <vector>

namespace pbox::kernels {

/// Cdf bounds of `iv` at every abscissa in xs, written to out (same size).
/// Every abscissa must lie inside the quantile range.
void project_grid_serial(const PboxInterval& iv, std::span<const double> xs, std::span<CdfBounds> out);
void project_grid_parallel(const PboxInterval& iv, std::span<const double> xs, std::span<CdfBounds> out);

/// n evenly spaced abscissae covering [lo.q, hi.q] (n >= 2, or 1 for a point).
std::vector<double> uniform_grid(const PboxInterval& iv, std::size_t n);

/// Number of intervals in the batch failing check_dominance.
std::size_t count_dominance_violations_serial(std::span<const PboxInterval> batch);
std::size_t count_dominance_violations_parallel(std::span<const PboxInterval> batch);

}  // namespace pbox::kernels

#endif  // PBOX_KERNELS_HPP
