#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hatnet/network.hpp"

namespace hatnet {

// Approximate product block parameters: r factors, accuracy stages m.
struct MultSpec {
    std::size_t r = 2;
    std::size_t m = 1;
};

inline std::size_t ceil_log2(std::size_t v) {
    if (v == 0) throw std::invalid_argument("ceil_log2: zero");
    std::size_t bits = 0;
    std::size_t p = 1;
    while (p < v) {
        p <<= 1;
        ++bits;
    }
    return bits;
}

// Architecture the product block is built against: hidden depth and the
// width ceiling per hidden layer.  r = 1 keeps the r = 2 depth so blocks of
// different arity can run side by side in the same layers.
struct MultArchitecture {
    std::size_t depth = 0;       // hidden layers
    std::size_t max_width = 0;   // ceiling for every hidden layer
    std::vector<std::size_t> widths; // (r, max_width, ..., max_width, 1)
};

inline MultArchitecture mult_architecture(std::size_t r, std::size_t m) {
    if (r < 1 || m < 1)
        throw std::invalid_argument("mult_architecture: need r >= 1, m >= 1");
    MultArchitecture a;
    a.depth = (m + 5) * std::max<std::size_t>(1, ceil_log2(r));
    a.max_width = 6 * r;
    a.widths.push_back(r);
    for (std::size_t i = 0; i < a.depth; ++i) a.widths.push_back(a.max_width);
    a.widths.push_back(1);
    return a;
}

namespace detail {

// Affine layer under construction.
struct Draft {
    std::size_t out = 0;
    std::size_t in = 0;
    std::vector<Triplet> tr;
    std::vector<double> bias;

    void init(std::size_t out_dim, std::size_t in_dim) {
        out = out_dim;
        in = in_dim;
        bias.assign(out_dim, 0.0);
    }
    void w(std::size_t row, std::size_t col, double v) {
        tr.push_back({row, col, v});
    }
    SparseAffine finish() const { return SparseAffine(out, in, tr, bias); }
};

// The squaring pipeline refines a piecewise-linear model of t^2 one binary
// digit per stage.  Each 4-unit group holds the sawtooth triple
// (y, y - 1/2, y - 1) and the running value A; the next stage forms the
// tooth T(y) = 2 relu(y) - 4 relu(y - 1/2) + 2 relu(y - 1) and subtracts
// T/4^s from A.  After m stages A equals the mesh-2^-m interpolant of t^2,
// so |A - t^2| <= 4^-(m+1) on [0,1] with equality only at cell midpoints.

// Rows of the first stage, fed by an affine combination of parent columns.
inline void sq_entry_rows(Draft& d, std::size_t row_base,
                          const std::vector<std::pair<std::size_t, double>>& input) {
    static constexpr double shifts[4] = {0.0, -0.5, -1.0, 0.0};
    for (std::size_t r = 0; r < 4; ++r) {
        for (auto [col, wv] : input) d.w(row_base + r, col, wv);
        d.bias[row_base + r] = shifts[r];
    }
}

// Rows of stage s (s = 1..m-1), fed by the previous stage's group at col_base.
inline void sq_stage_rows(Draft& d, std::size_t row_base, std::size_t col_base,
                          std::size_t s) {
    const double inv = std::pow(0.25, static_cast<double>(s));
    static constexpr double shifts[3] = {0.0, -0.5, -1.0};
    for (std::size_t r = 0; r < 3; ++r) {
        d.w(row_base + r, col_base + 0, 2.0);
        d.w(row_base + r, col_base + 1, -4.0);
        d.w(row_base + r, col_base + 2, 2.0);
        d.bias[row_base + r] = shifts[r];
    }
    d.w(row_base + 3, col_base + 0, -2.0 * inv);
    d.w(row_base + 3, col_base + 1, 4.0 * inv);
    d.w(row_base + 3, col_base + 2, -2.0 * inv);
    d.w(row_base + 3, col_base + 3, 1.0);
}

// Weights that read the finished square A_m = A_{m-1} - T(y_{m-1}) / 4^m
// out of a group, scaled by `scale`.
inline void sq_output_weights(Draft& d, std::size_t row, std::size_t col_base,
                              std::size_t m, double scale) {
    const double inv = std::pow(0.25, static_cast<double>(m));
    d.w(row, col_base + 0, -2.0 * inv * scale);
    d.w(row, col_base + 1, 4.0 * inv * scale);
    d.w(row, col_base + 2, -2.0 * inv * scale);
    d.w(row, col_base + 3, 1.0 * scale);
}

} // namespace detail

// Scalar squaring network: widths (1, 4, ..., 4, 1) with m hidden layers,
// |output - x^2| <= 4^-(m+1) on [0,1], exact at multiples of 2^-m.
inline NetworkIR make_sq(std::size_t m) {
    if (m < 1) throw std::invalid_argument("make_sq: m must be >= 1");
    std::vector<SparseAffine> layers;
    detail::Draft d;
    d.init(4, 1);
    detail::sq_entry_rows(d, 0, {{0, 1.0}});
    layers.push_back(d.finish());
    for (std::size_t s = 1; s < m; ++s) {
        detail::Draft st;
        st.init(4, 4);
        detail::sq_stage_rows(st, 0, 0, s);
        layers.push_back(st.finish());
    }
    detail::Draft out;
    out.init(1, 4);
    detail::sq_output_weights(out, 0, 0, m, 1.0);
    layers.push_back(out.finish());
    return NetworkIR(std::move(layers));
}

// Product of r factors on [0,1]^r as a binary tree of pair products.  Each
// pair product uses the polarization identity
//     x y = 2 ((x+y)/2)^2 - x^2 / 2 - y^2 / 2
// over three parallel squaring pipelines, then clips to [0,1] with
// relu(z) - relu(z - 1).  Error per pair is at most 3 * 4^-(m+1) <= 2^-m;
// through the tree the total stays below 3^r 2^-m because products are
// 1-Lipschitz in each factor on [0,1].
//
// Every round contributes exactly m+5 hidden layers (m sawtooth stages, the
// clip pair, and identity padding), unpaired values ride along through
// single-unit identity rows, and r = 1 degenerates to an identity chain of
// the same depth as r = 2.  Realized depth is exactly
// (m+5) * max(1, ceil(log2 r)) and hidden widths never exceed 6r; both are
// asserted against mult_architecture at build time.
inline NetworkIR make_mult(const MultSpec& spec) {
    const std::size_t r = spec.r;
    const std::size_t m = spec.m;
    if (r < 1 || m < 1)
        throw std::invalid_argument("make_mult: need r >= 1, m >= 1");
    const MultArchitecture arch = mult_architecture(r, m);
    if (r == 1) {
        NetworkIR net = make_identity_chain(1, arch.depth);
        if (net.depth() != arch.depth)
            throw std::logic_error("make_mult: identity depth mismatch");
        return net;
    }

    std::vector<SparseAffine> layers;
    // Columns of the most recent layer holding the live values.
    std::vector<std::size_t> cols(r);
    for (std::size_t i = 0; i < r; ++i) cols[i] = i;
    std::size_t prev_width = r;
    std::size_t len = r;

    while (len > 1) {
        const std::size_t pairs = len / 2;
        const std::size_t odd = len % 2;
        const std::size_t wide = 12 * pairs + odd;

        // Stage layers 0..m-1 hold the three squaring groups per pair.
        for (std::size_t t = 0; t < m; ++t) {
            detail::Draft d;
            d.init(wide, prev_width);
            for (std::size_t p = 0; p < pairs; ++p) {
                const std::size_t base = 12 * p;
                if (t == 0) {
                    const std::size_t a = cols[2 * p], b = cols[2 * p + 1];
                    detail::sq_entry_rows(d, base + 0, {{a, 0.5}, {b, 0.5}});
                    detail::sq_entry_rows(d, base + 4, {{a, 1.0}});
                    detail::sq_entry_rows(d, base + 8, {{b, 1.0}});
                } else {
                    for (std::size_t q = 0; q < 3; ++q)
                        detail::sq_stage_rows(d, base + 4 * q, base + 4 * q, t);
                }
            }
            if (odd) {
                const std::size_t c = t == 0 ? cols[len - 1] : 12 * pairs;
                d.w(12 * pairs, c, 1.0);
            }
            layers.push_back(d.finish());
            prev_width = wide;
        }

        // Clip layer: per pair the rows relu(z) and relu(z - 1) with
        // z = 2 sq((x+y)/2) - sq(x)/2 - sq(y)/2.
        {
            detail::Draft d;
            d.init(2 * pairs + odd, prev_width);
            for (std::size_t p = 0; p < pairs; ++p) {
                const std::size_t base = 12 * p;
                for (std::size_t row : {2 * p, 2 * p + 1}) {
                    detail::sq_output_weights(d, row, base + 0, m, 2.0);
                    detail::sq_output_weights(d, row, base + 4, m, -0.5);
                    detail::sq_output_weights(d, row, base + 8, m, -0.5);
                }
                d.bias[2 * p + 1] = -1.0;
            }
            if (odd) d.w(2 * pairs, 12 * pairs, 1.0);
            layers.push_back(d.finish());
            prev_width = 2 * pairs + odd;
        }

        // Resolve the clip and pad the round to m+5 hidden layers.
        for (std::size_t pad = 0; pad < 4; ++pad) {
            detail::Draft d;
            d.init(pairs + odd, prev_width);
            for (std::size_t p = 0; p < pairs; ++p) {
                if (pad == 0) {
                    d.w(p, 2 * p, 1.0);
                    d.w(p, 2 * p + 1, -1.0);
                } else {
                    d.w(p, p, 1.0);
                }
            }
            if (odd) d.w(pairs, pad == 0 ? 2 * pairs : pairs, 1.0);
            layers.push_back(d.finish());
            prev_width = pairs + odd;
        }

        len = pairs + odd;
        cols.resize(len);
        for (std::size_t i = 0; i < len; ++i) cols[i] = i;
    }

    // Output affine reading the single surviving value.
    detail::Draft out;
    out.init(1, prev_width);
    out.w(0, cols[0], 1.0);
    layers.push_back(out.finish());

    NetworkIR net{std::move(layers)};
    if (net.depth() != arch.depth)
        throw std::logic_error("make_mult: realized depth " +
                               std::to_string(net.depth()) + " != stated " +
                               std::to_string(arch.depth));
    const std::vector<std::size_t> w = net.widths();
    for (std::size_t i = 1; i + 1 < w.size(); ++i)
        if (w[i] > arch.max_width)
            throw std::logic_error("make_mult: width " + std::to_string(w[i]) +
                                   " exceeds " + std::to_string(arch.max_width));
    return net;
}

// Pair product with the clip, as a network of its own.
inline NetworkIR make_mult2(std::size_t m) { return make_mult({2, m}); }

// Error ceiling the product block is verified against.
inline double mult_error_bound(const MultSpec& spec) {
    return std::pow(3.0, static_cast<double>(spec.r)) *
           std::pow(2.0, -static_cast<double>(spec.m));
}

} // namespace hatnet
