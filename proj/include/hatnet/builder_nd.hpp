#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hatnet/hat_basis.hpp"
#include "hatnet/mult_net.hpp"
#include "hatnet/network.hpp"
#include "hatnet/target_function.hpp"

namespace hatnet {

// Parameters of the n-D construction: input dimension n >= 2, lattice
// refinement k, product accuracy m, and the lattice choice (full lattice
// indices -k..k per axis, or 0..k when the target lives on [0,1]^n).
struct BuildSpec {
    std::size_t n = 2;
    long k = 1;
    std::size_t m = 1;
    bool half = false;

    void validate() const {
        if (n < 2)
            throw std::invalid_argument("BuildSpec: n must be >= 2 (1-D has its own builder)");
        if (k < 1) throw std::invalid_argument("BuildSpec: k must be >= 1");
        if (m < 1) throw std::invalid_argument("BuildSpec: m must be >= 1");
    }

    long lo() const { return half ? 0 : -k; }
    std::size_t points_per_axis() const {
        return static_cast<std::size_t>(k - lo() + 1);
    }
    std::size_t cell_count() const {
        std::size_t c = 1;
        for (std::size_t j = 0; j < n; ++j) c *= points_per_axis();
        return c;
    }
};

// Lattice points are ordered lexicographically with the first coordinate
// most significant; cell_lattice inverts cell_index.
inline std::size_t cell_index(const BuildSpec& spec,
                              std::span<const long> lattice) {
    const std::size_t M = spec.points_per_axis();
    std::size_t idx = 0;
    for (std::size_t j = 0; j < spec.n; ++j) {
        const long off = lattice[j] - spec.lo();
        if (off < 0 || off >= static_cast<long>(M))
            throw std::invalid_argument("cell_index: lattice point out of range");
        idx = idx * M + static_cast<std::size_t>(off);
    }
    return idx;
}

inline std::vector<long> cell_lattice(const BuildSpec& spec, std::size_t index) {
    const std::size_t M = spec.points_per_axis();
    std::vector<long> lattice(spec.n);
    for (std::size_t j = spec.n; j-- > 0;) {
        lattice[j] = spec.lo() + static_cast<long>(index % M);
        index /= M;
    }
    if (index != 0)
        throw std::invalid_argument("cell_lattice: index out of range");
    return lattice;
}

// Shifted-hat front: two affine layers mapping x to the n * M values
// g1(k x_j - i), exactly.  Output unit j*M + (i - lo) holds coordinate j's
// hat at lattice index i; the first affine stacks the triples
// (k x_j - i - 1, k x_j - i, k x_j - i + 1) in the same order.
inline NetworkIR make_front(const BuildSpec& spec) {
    spec.validate();
    const std::size_t M = spec.points_per_axis();

    std::vector<Triplet> t1;
    std::vector<double> b1;
    b1.reserve(3 * spec.n * M);
    for (std::size_t j = 0; j < spec.n; ++j) {
        for (std::size_t idx = 0; idx < M; ++idx) {
            const double i = static_cast<double>(spec.lo() + static_cast<long>(idx));
            const std::size_t base = 3 * (j * M + idx);
            for (std::size_t s = 0; s < 3; ++s) {
                t1.push_back({base + s, j, static_cast<double>(spec.k)});
                b1.push_back(-i - 1.0 + static_cast<double>(s));
            }
        }
    }
    SparseAffine w1(3 * spec.n * M, spec.n, std::move(t1), std::move(b1));

    std::vector<Triplet> t2;
    for (std::size_t u = 0; u < spec.n * M; ++u) {
        t2.push_back({u, 3 * u + 0, 1.0});
        t2.push_back({u, 3 * u + 1, -2.0});
        t2.push_back({u, 3 * u + 2, 1.0});
    }
    SparseAffine w2(spec.n * M, 3 * spec.n * M, std::move(t2),
                    std::vector<double>(spec.n * M, 0.0));

    return NetworkIR({std::move(w1), std::move(w2)});
}

// Bank of per-cell product blocks: consumes the front's n * M hat values and
// emits one approximate product prod_j g1(k x_j - i_j) per lattice cell, in
// cell_index order.  Each cell embeds a copy of make_mult({n, m}) padded to a
// fixed 6n-unit stride per hidden layer, so every hidden layer of the bank
// has width exactly 6n * M^n; cell c's entry rows read only its n designated
// front outputs (j, i_j).
inline NetworkIR make_appid_bank(const BuildSpec& spec) {
    spec.validate();
    const std::size_t M = spec.points_per_axis();
    const std::size_t cells = spec.cell_count();
    const std::size_t stride = 6 * spec.n;
    const NetworkIR proto = make_mult({spec.n, spec.m});
    const std::vector<SparseAffine>& pl = proto.layers();
    const std::size_t hidden = proto.depth();

    std::vector<SparseAffine> layers;
    layers.reserve(pl.size());
    for (std::size_t t = 0; t < pl.size(); ++t) {
        const SparseAffine& p = pl[t];
        const bool first = t == 0;
        const bool last = t + 1 == pl.size();
        const std::size_t out_dim = last ? cells : stride * cells;
        const std::size_t in_dim = first ? spec.n * M : stride * cells;

        std::vector<Triplet> tr;
        tr.reserve(p.nnz() * cells);
        std::vector<double> bias(out_dim, 0.0);
        for (std::size_t c = 0; c < cells; ++c) {
            const std::vector<long> lattice = cell_lattice(spec, c);
            const std::size_t row_base = last ? c : stride * c;
            const std::size_t col_base = stride * c;
            for (const Triplet& e : p.triplets()) {
                std::size_t col;
                if (first) {
                    // Proto input j corresponds to front output (j, i_j).
                    const std::size_t off =
                        static_cast<std::size_t>(lattice[e.col] - spec.lo());
                    col = e.col * M + off;
                } else {
                    col = col_base + e.col;
                }
                tr.push_back({row_base + e.row, col, e.value});
            }
            for (std::size_t row = 0; row < p.out_dim(); ++row)
                bias[row_base + row] = p.bias()[row];
        }
        layers.emplace_back(out_dim, in_dim, std::move(tr), std::move(bias));
    }

    NetworkIR bank{std::move(layers)};
    if (bank.depth() != hidden)
        throw std::logic_error("make_appid_bank: depth changed by stamping");
    return bank;
}

// Readout affine: one row weighing cell i by f(i / k).  Zero samples are not
// stored, so the row's sparsity mirrors the target's lattice support.
inline SparseAffine make_readout(const TargetFunction& f, const BuildSpec& spec) {
    spec.validate();
    if (f.dim != spec.n)
        throw std::invalid_argument("make_readout: target dimension mismatch");
    const std::size_t cells = spec.cell_count();
    std::vector<Triplet> tr;
    std::vector<double> node(spec.n);
    for (std::size_t c = 0; c < cells; ++c) {
        const std::vector<long> lattice = cell_lattice(spec, c);
        for (std::size_t j = 0; j < spec.n; ++j)
            node[j] = static_cast<double>(lattice[j]) /
                      static_cast<double>(spec.k);
        const double fi = f(node);
        if (fi != 0.0) tr.push_back({0, c, fi});
    }
    return SparseAffine(1, cells, std::move(tr), {0.0});
}

// Widths the composed network must realize, in order: input n, the two front
// layers 3nM and nM, (m+5) * ceil(log2 n) bank layers of 6n M^n, the M^n
// cell layer, and the scalar output.
inline std::vector<std::size_t> stated_widths_nd(const BuildSpec& spec) {
    spec.validate();
    const std::size_t M = spec.points_per_axis();
    std::size_t cells = spec.cell_count();
    std::vector<std::size_t> w;
    w.push_back(spec.n);
    w.push_back(3 * spec.n * M);
    w.push_back(spec.n * M);
    const std::size_t bank = (spec.m + 5) * std::max<std::size_t>(1, ceil_log2(spec.n));
    for (std::size_t t = 0; t < bank; ++t) w.push_back(6 * spec.n * cells);
    w.push_back(cells);
    w.push_back(1);
    return w;
}

inline std::size_t stated_depth_nd(const BuildSpec& spec) {
    return (spec.m + 5) * std::max<std::size_t>(1, ceil_log2(spec.n)) + 3;
}

// Full construction: front, product bank, readout.  The seams apply relu to
// nonnegative values (hat values and clipped products), so composition is
// exact, and the realized widths equal stated_widths_nd entry for entry.
inline NetworkIR build_nd(const TargetFunction& f, const BuildSpec& spec) {
    spec.validate();
    if (f.dim != spec.n)
        throw std::invalid_argument("build_nd: target dimension mismatch");
    if (f.support != Support::unit_cube)
        throw std::invalid_argument("build_nd: target support must be [0,1]^n");
    NetworkIR net = concat_networks(make_front(spec), make_appid_bank(spec));
    std::vector<SparseAffine> layers = net.layers();
    layers.push_back(make_readout(f, spec));
    NetworkIR full{std::move(layers)};
    if (full.widths() != stated_widths_nd(spec))
        throw std::logic_error("build_nd: realized widths differ from stated");
    return full;
}

struct ConformanceND {
    bool widths_ok = false;
    bool depth_ok = false;
    std::vector<std::size_t> widths;
    std::vector<std::size_t> stated;
    std::string detail;

    bool ok() const { return widths_ok && depth_ok; }
};

inline ConformanceND conformance_nd(const NetworkIR& net, const BuildSpec& spec) {
    ConformanceND c;
    c.widths = net.widths();
    c.stated = stated_widths_nd(spec);
    c.widths_ok = c.widths == c.stated;
    c.depth_ok = net.depth() == stated_depth_nd(spec);
    if (!c.widths_ok) c.detail = "width tuple mismatch";
    else if (!c.depth_ok) c.detail = "depth mismatch";
    return c;
}

} // namespace hatnet
