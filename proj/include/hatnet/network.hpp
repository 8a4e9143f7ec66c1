#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hatnet/sparse_affine.hpp"

namespace hatnet {

inline double relu(double x) { return x > 0.0 ? x : 0.0; }

inline std::vector<double> relu(std::vector<double> v) {
    for (double& x : v) x = relu(x);
    return v;
}

// Pre- and post-activation values of every hidden layer plus the final output.
struct EvalTrace {
    std::vector<std::vector<double>> pre;   // one entry per hidden layer
    std::vector<std::vector<double>> post;  // post[i] = relu(pre[i])
    std::vector<double> output;             // last affine, no activation
};

// Number of weights actually stored vs. the dense count for the same shape,
// plus the largest row fan-in of each layer.
struct ParamCounts {
    std::size_t nnz_total = 0;
    std::size_t dense_total = 0;
    std::vector<std::size_t> per_layer_fan_in_max;
};

// A ReLU network as a chain of sparse affine maps.  With layers A_1..A_{D+1},
// the network computes A_{D+1}(relu(A_D(... relu(A_1(x)) ...))); the final
// affine output is not passed through the activation.  D = depth() is the
// hidden layer count and widths() lists input, hidden, and output dimensions.
class NetworkIR {
public:
    explicit NetworkIR(std::vector<SparseAffine> layers)
        : layers_(std::move(layers)) {
        if (layers_.empty())
            throw std::invalid_argument("NetworkIR: at least one affine layer required");
        for (std::size_t i = 1; i < layers_.size(); ++i)
            if (layers_[i].in_dim() != layers_[i - 1].out_dim())
                throw std::invalid_argument(
                    "NetworkIR: layer " + std::to_string(i) + " expects input " +
                    std::to_string(layers_[i].in_dim()) + " but layer " +
                    std::to_string(i - 1) + " produces " +
                    std::to_string(layers_[i - 1].out_dim()));
    }

    const std::vector<SparseAffine>& layers() const { return layers_; }
    std::size_t depth() const { return layers_.size() - 1; }
    std::size_t input_dim() const { return layers_.front().in_dim(); }
    std::size_t output_dim() const { return layers_.back().out_dim(); }

    std::vector<std::size_t> widths() const {
        std::vector<std::size_t> w;
        w.reserve(layers_.size() + 1);
        w.push_back(layers_.front().in_dim());
        for (const SparseAffine& a : layers_) w.push_back(a.out_dim());
        return w;
    }

    std::vector<double> forward(std::span<const double> x) const {
        std::vector<double> v = layers_.front().apply(x);
        for (std::size_t i = 1; i < layers_.size(); ++i) {
            v = relu(std::move(v));
            v = layers_[i].apply(v);
        }
        return v;
    }

    EvalTrace forward_traced(std::span<const double> x) const {
        EvalTrace trace;
        std::vector<double> v = layers_.front().apply(x);
        for (std::size_t i = 1; i < layers_.size(); ++i) {
            trace.pre.push_back(v);
            v = relu(std::move(v));
            trace.post.push_back(v);
            v = layers_[i].apply(v);
        }
        trace.output = std::move(v);
        return trace;
    }

    ParamCounts count_params() const {
        ParamCounts c;
        for (const SparseAffine& a : layers_) {
            c.nnz_total += a.nnz();
            c.dense_total += a.out_dim() * a.in_dim();
            c.per_layer_fan_in_max.push_back(a.max_fan_in());
        }
        return c;
    }

private:
    std::vector<SparseAffine> layers_;
};

// Chain of `hidden_layers` width-`dim` identity layers.  Relies on
// relu(x) = x for x >= 0, so it reproduces nonnegative inputs exactly.
inline NetworkIR make_identity_chain(std::size_t dim, std::size_t hidden_layers) {
    std::vector<Triplet> eye;
    for (std::size_t i = 0; i < dim; ++i) eye.push_back({i, i, 1.0});
    std::vector<SparseAffine> layers;
    for (std::size_t l = 0; l < hidden_layers + 1; ++l)
        layers.emplace_back(dim, dim, eye, std::vector<double>(dim, 0.0));
    return NetworkIR(std::move(layers));
}

// Composition b(relu(a(x))) as a single network.  The seam applies the
// activation to a's output, so callers must ensure that output is either
// nonnegative or meant to pass through relu.
inline NetworkIR concat_networks(const NetworkIR& a, const NetworkIR& b) {
    if (b.input_dim() != a.output_dim())
        throw std::invalid_argument(
            "concat_networks: second network expects input " +
            std::to_string(b.input_dim()) + " but first produces " +
            std::to_string(a.output_dim()));
    std::vector<SparseAffine> layers = a.layers();
    for (const SparseAffine& l : b.layers()) layers.push_back(l);
    return NetworkIR(std::move(layers));
}

} // namespace hatnet
