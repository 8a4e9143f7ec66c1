#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hatnet/network.hpp"
#include "hatnet/target_function.hpp"

namespace hatnet {

// Two-affine gadget computing g1 exactly for every real input:
// relu(x-1) - 2 relu(x) + relu(x+1) + ... composed as
// W2(relu(W1 x)) with W1 x = (x-1, x, x+1) and W2 = (1, -2, 1).
inline NetworkIR make_hat_gadget() {
    SparseAffine w1(3, 1, {{0, 0, 1.0}, {1, 0, 1.0}, {2, 0, 1.0}},
                    {-1.0, 0.0, 1.0});
    SparseAffine w2(1, 3, {{0, 0, 1.0}, {0, 1, -2.0}, {0, 2, 1.0}}, {0.0});
    return NetworkIR({w1, w2});
}

// Exact shallow interpolation network for a 1-D target: widths
// (1, 3M, M, 1) with M = 2k+1 lattice points (or k+1 on the half lattice).
// The first affine stacks the shifted triples (kx-i-1, kx-i, kx-i+1) for
// ascending i, the second collapses each triple to g1(kx-i), and the last
// weighs them by f(i/k).  Both activations are exact: the triple rows feed
// relu by design, and g1 >= 0 passes the second relu unchanged.
inline NetworkIR build_1d(const TargetFunction& f, long k, bool half = false) {
    if (f.dim != 1)
        throw std::invalid_argument("build_1d: target must be 1-D");
    if (k < 1) throw std::invalid_argument("build_1d: k must be >= 1");
    if (half && f.support != Support::unit_cube)
        throw std::invalid_argument(
            "build_1d: half lattice requires support [0,1]");
    const long lo = half ? 0 : -k;
    const std::size_t M = static_cast<std::size_t>(k - lo + 1);

    std::vector<Triplet> t1;
    std::vector<double> b1;
    b1.reserve(3 * M);
    for (std::size_t idx = 0; idx < M; ++idx) {
        const double i = static_cast<double>(lo + static_cast<long>(idx));
        for (std::size_t s = 0; s < 3; ++s) {
            t1.push_back({3 * idx + s, 0, static_cast<double>(k)});
            b1.push_back(-i - 1.0 + static_cast<double>(s));
        }
    }
    SparseAffine w1(3 * M, 1, std::move(t1), std::move(b1));

    std::vector<Triplet> t2;
    for (std::size_t idx = 0; idx < M; ++idx) {
        t2.push_back({idx, 3 * idx + 0, 1.0});
        t2.push_back({idx, 3 * idx + 1, -2.0});
        t2.push_back({idx, 3 * idx + 2, 1.0});
    }
    SparseAffine w2(M, 3 * M, std::move(t2), std::vector<double>(M, 0.0));

    std::vector<Triplet> t3;
    std::vector<double> node(1);
    for (std::size_t idx = 0; idx < M; ++idx) {
        node[0] = static_cast<double>(lo + static_cast<long>(idx)) /
                  static_cast<double>(k);
        const double fi = f(node);
        if (fi != 0.0) t3.push_back({0, idx, fi});
    }
    SparseAffine w3(1, M, std::move(t3), {0.0});

    return NetworkIR({std::move(w1), std::move(w2), std::move(w3)});
}

struct Conformance1D {
    bool widths_ok = false;
    bool triple_fan_in_ok = false;   // first affine: one weight per row, value k
    bool collapse_pattern_ok = false; // second affine rows exactly (1, -2, 1)
    bool readout_ok = false;          // third affine: single row, no bias
    std::vector<std::size_t> widths;
    std::string detail;

    bool ok() const {
        return widths_ok && triple_fan_in_ok && collapse_pattern_ok && readout_ok;
    }
};

// Structural check that a network has the exact shape build_1d emits.
inline Conformance1D conformance_1d(const NetworkIR& net, long k,
                                    bool half = false) {
    Conformance1D c;
    c.widths = net.widths();
    const std::size_t M = static_cast<std::size_t>(half ? k + 1 : 2 * k + 1);
    c.widths_ok = c.widths == std::vector<std::size_t>{1, 3 * M, M, 1};
    if (!c.widths_ok) {
        c.detail = "widths differ from (1, 3M, M, 1)";
        return c;
    }

    const SparseAffine& w1 = net.layers()[0];
    c.triple_fan_in_ok = w1.nnz() == 3 * M && w1.max_fan_in() == 1;
    for (const Triplet& e : w1.triplets())
        if (e.value != static_cast<double>(k)) c.triple_fan_in_ok = false;

    const SparseAffine& w2 = net.layers()[1];
    c.collapse_pattern_ok = w2.nnz() == 3 * M;
    for (std::size_t idx = 0; idx < M && c.collapse_pattern_ok; ++idx) {
        const Triplet* row = &w2.triplets()[3 * idx];
        c.collapse_pattern_ok =
            row[0] == Triplet{idx, 3 * idx + 0, 1.0} &&
            row[1] == Triplet{idx, 3 * idx + 1, -2.0} &&
            row[2] == Triplet{idx, 3 * idx + 2, 1.0};
    }

    const SparseAffine& w3 = net.layers()[2];
    c.readout_ok = w3.out_dim() == 1 && w3.bias()[0] == 0.0;
    if (!c.ok() && c.detail.empty()) c.detail = "layer weight pattern mismatch";
    return c;
}

} // namespace hatnet
