#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace hatnet {

// Seedable 64-bit generator used everywhere randomness is needed.  Doubles
// are produced by scaling the top 53 bits, so streams are reproducible for a
// given seed independent of the standard library's distribution details.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

private:
    std::mt19937_64 engine_;
};

// Flat row-major list of n-dimensional points.
struct PointSet {
    std::size_t dim = 0;
    std::vector<double> flat;

    std::size_t size() const { return dim == 0 ? 0 : flat.size() / dim; }

    std::span<const double> point(std::size_t i) const {
        return {flat.data() + i * dim, dim};
    }

    void append(const PointSet& other) {
        if (other.dim != dim)
            throw std::invalid_argument("PointSet::append: dimension mismatch");
        flat.insert(flat.end(), other.flat.begin(), other.flat.end());
    }
};

inline PointSet random_points(Rng& rng, std::size_t dim, std::size_t count,
                              double lo, double hi) {
    PointSet ps;
    ps.dim = dim;
    ps.flat.reserve(dim * count);
    for (std::size_t i = 0; i < count * dim; ++i)
        ps.flat.push_back(rng.uniform(lo, hi));
    return ps;
}

// Tensor grid with `per_axis` evenly spaced points per axis, endpoints included.
inline PointSet tensor_grid(std::size_t dim, std::size_t per_axis,
                            double lo, double hi) {
    if (per_axis < 2)
        throw std::invalid_argument("tensor_grid: need at least 2 points per axis");
    std::vector<double> axis(per_axis);
    for (std::size_t i = 0; i < per_axis; ++i)
        axis[i] = lo + (hi - lo) * static_cast<double>(i) /
                           static_cast<double>(per_axis - 1);
    PointSet ps;
    ps.dim = dim;
    std::size_t total = 1;
    for (std::size_t d = 0; d < dim; ++d) total *= per_axis;
    ps.flat.reserve(total * dim);
    std::vector<std::size_t> idx(dim, 0);
    for (std::size_t p = 0; p < total; ++p) {
        for (std::size_t d = 0; d < dim; ++d) ps.flat.push_back(axis[idx[d]]);
        for (std::size_t d = dim; d-- > 0;) {
            if (++idx[d] < per_axis) break;
            idx[d] = 0;
        }
    }
    return ps;
}

// Midpoints of the lattice cells of mesh 1/k covering [lo, hi]: the points
// where piecewise-linear interpolation error peaks.
inline PointSet cell_midpoints(std::size_t dim, long k, double lo, double hi) {
    const auto cells = static_cast<std::size_t>(std::lround((hi - lo) * k));
    std::vector<double> axis(cells);
    for (std::size_t i = 0; i < cells; ++i)
        axis[i] = lo + (static_cast<double>(i) + 0.5) / static_cast<double>(k);
    PointSet ps;
    ps.dim = dim;
    std::size_t total = 1;
    for (std::size_t d = 0; d < dim; ++d) total *= cells;
    ps.flat.reserve(total * dim);
    std::vector<std::size_t> idx(dim, 0);
    for (std::size_t p = 0; p < total; ++p) {
        for (std::size_t d = 0; d < dim; ++d) ps.flat.push_back(axis[idx[d]]);
        for (std::size_t d = dim; d-- > 0;) {
            if (++idx[d] < cells) break;
            idx[d] = 0;
        }
    }
    return ps;
}

// Least-squares slope of y against x.
inline double fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_slope: need matching arrays of size >= 2");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace hatnet
