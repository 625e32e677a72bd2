#include "pbox/kernels.hpp"

#include <cstdint>

namespace pbox::kernels {

namespace {

void check_sizes(std::span<const double> xs, std::span<CdfBounds> out) {
    if (xs.size() != out.size()) {
        throw Error("projection grid and output sizes differ");
    }
}

void check_range(const PboxInterval& iv, std::span<const double> xs) {
    const double tol = tolerance();
    for (double x : xs) {
        if (!(x >= iv.lo().q - tol && x <= iv.hi().q + tol)) {
            throw OutOfDomain("grid abscissa outside interval range");
        }
    }
}

}  // namespace

void project_grid_serial(const PboxInterval& iv, std::span<const double> xs, std::span<CdfBounds> out) {
    check_sizes(xs, out);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i] = project(iv, xs[i]);
    }
}

void project_grid_parallel(const PboxInterval& iv, std::span<const double> xs, std::span<CdfBounds> out) {
    check_sizes(xs, out);
    check_range(iv, xs);
    const auto n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        out[i] = {iv.lower(xs[i]), iv.upper(xs[i])};
    }
}

std::vector<double> uniform_grid(const PboxInterval& iv, std::size_t n) {
    if (iv.is_point() || n < 2) {
        return {iv.lo().q};
    }
    std::vector<double> xs(n);
    const double lo = iv.lo().q;
    const double step = iv.width() / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = lo + step * static_cast<double>(i);
    }
    xs.back() = iv.hi().q;
    return xs;
}

std::size_t count_dominance_violations_serial(std::span<const PboxInterval> batch) {
    std::size_t bad = 0;
    for (const auto& iv : batch) {
        bad += check_dominance(iv) ? 0 : 1;
    }
    return bad;
}

std::size_t count_dominance_violations_parallel(std::span<const PboxInterval> batch) {
    const auto n = static_cast<std::int64_t>(batch.size());
    std::int64_t bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad)
    for (std::int64_t i = 0; i < n; ++i) {
        bad += check_dominance(batch[i]) ? 0 : 1;
    }
    return static_cast<std::size_t>(bad);
}

}  // namespace pbox::kernels
