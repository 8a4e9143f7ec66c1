#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "hatnet/network.hpp"
#include "hatnet/target_function.hpp"

namespace hatnet {

// Reference hat: g1(t) = relu(1 - |t|), supported on [-1, 1] with peak 1 at 0.
inline double g1(double t) { return relu(1.0 - std::abs(t)); }

// Tensor product hat on R^n.
inline double gn(std::span<const double> t) {
    double p = 1.0;
    for (double ti : t) p *= g1(ti);
    return p;
}

namespace detail {

// Per coordinate, at most two lattice indices i have g1(k x - i) != 0:
// floor(k x) and floor(k x) + 1.  Indices are clamped to the lattice range
// [lo_index, k]; out-of-range candidates are dropped (their weight vanishes
// for points inside the lattice's footprint).
struct HatCandidate {
    long index;
    double weight; // g1(k x - index)
};

inline int active_hats(double x, long k, long lo_index,
                       HatCandidate out[2]) {
    const double kx = static_cast<double>(k) * x;
    const double fl = std::floor(kx);
    const long base = static_cast<long>(fl);
    int count = 0;
    for (long i = base; i <= base + 1; ++i) {
        if (i < lo_index || i > k) continue;
        const double w = g1(kx - static_cast<double>(i));
        if (w > 0.0) out[count++] = {i, w};
    }
    return count;
}

// Walks the tensor product of per-coordinate candidate lists and calls
// visit(indices, weight, moment) for every active lattice point, where
// weight = gn(k x - i) and moment = sum_j |i_j / k - x_j|.
template <typename Visit>
inline void for_each_active_cell(std::span<const double> x, long k, bool half,
                                 Visit&& visit) {
    const std::size_t n = x.size();
    const long lo = half ? 0 : -k;
    std::vector<HatCandidate> cands(2 * n);
    std::vector<int> counts(n);
    for (std::size_t j = 0; j < n; ++j)
        counts[j] = active_hats(x[j], k, lo, &cands[2 * j]);
    for (std::size_t j = 0; j < n; ++j)
        if (counts[j] == 0) return;

    std::vector<int> pick(n, 0);
    std::vector<long> idx(n);
    for (;;) {
        double weight = 1.0;
        double moment = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const HatCandidate& c = cands[2 * j + pick[j]];
            idx[j] = c.index;
            weight *= c.weight;
            moment += std::abs(static_cast<double>(c.index) /
                                   static_cast<double>(k) -
                               x[j]);
        }
        visit(std::span<const long>(idx), weight, moment);
        std::size_t j = n;
        while (j-- > 0) {
            if (++pick[j] < counts[j]) break;
            pick[j] = 0;
            if (j == 0) return;
        }
    }
}

} // namespace detail

// sum_i gn(k x - i) over the lattice (all of it, or the half with
// nonnegative indices).  Equals 1 on the lattice's footprint.
inline double partition_sum(std::size_t n, long k, std::span<const double> x,
                            bool half = false) {
    if (k < 1) throw std::invalid_argument("partition_sum: k must be >= 1");
    if (x.size() != n)
        throw std::invalid_argument("partition_sum: point dimension mismatch");
    double acc = 0.0;
    detail::for_each_active_cell(
        x, k, half,
        [&](std::span<const long>, double w, double) { acc += w; });
    return acc;
}

// sum_i gn(k x - i) * sum_j |i_j / k - x_j|, bounded by n / (2k) on the
// lattice's footprint.
inline double moment_sum(std::size_t n, long k, std::span<const double> x,
                         bool half = false) {
    if (k < 1) throw std::invalid_argument("moment_sum: k must be >= 1");
    if (x.size() != n)
        throw std::invalid_argument("moment_sum: point dimension mismatch");
    double acc = 0.0;
    detail::for_each_active_cell(
        x, k, half,
        [&](std::span<const long>, double w, double mom) { acc += w * mom; });
    return acc;
}

// Hat-basis interpolant sum_i f(i/k) gn(k x - i).  Only the at most 2^n
// lattice points with nonzero weight at x are visited, so evaluation is
// O(2^n) regardless of k.
inline double interpolant(const TargetFunction& f, long k,
                          std::span<const double> x, bool half = false) {
    if (k < 1) throw std::invalid_argument("interpolant: k must be >= 1");
    if (x.size() != f.dim)
        throw std::invalid_argument("interpolant: point dimension mismatch");
    double acc = 0.0;
    std::vector<double> node(f.dim);
    detail::for_each_active_cell(
        x, k, half, [&](std::span<const long> idx, double w, double) {
            if (w == 0.0) return;
            for (std::size_t j = 0; j < f.dim; ++j)
                node[j] = static_cast<double>(idx[j]) / static_cast<double>(k);
            acc += f(node) * w;
        });
    return acc;
}

struct Theorem1Gap {
    double sup_gap = 0.0;   // max |f(x) - interpolant(x)| over the sample set
    double bound = 0.0;     // max_j deriv_bounds[j] * n / (2k)
    std::vector<double> argmax;
};

// Measures the interpolation gap over a sample set and reports it next to
// the first-order bound it must respect.
inline Theorem1Gap theorem1_gap(const TargetFunction& f, long k,
                                std::span<const double> flat_points,
                                bool half = false) {
    if (k < 1) throw std::invalid_argument("theorem1_gap: k must be >= 1");
    if (f.dim == 0 || flat_points.size() % f.dim != 0)
        throw std::invalid_argument("theorem1_gap: malformed point list");
    Theorem1Gap out;
    out.bound = f.max_deriv_bound() * static_cast<double>(f.dim) /
                (2.0 * static_cast<double>(k));
    const std::size_t count = flat_points.size() / f.dim;
    for (std::size_t p = 0; p < count; ++p) {
        std::span<const double> x{flat_points.data() + p * f.dim, f.dim};
        const double gap = std::abs(f(x) - interpolant(f, k, x, half));
        if (gap > out.sup_gap) {
            out.sup_gap = gap;
            out.argmax.assign(x.begin(), x.end());
        }
    }
    return out;
}

} // namespace hatnet
