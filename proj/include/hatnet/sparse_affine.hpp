#pragma once

#include <cstddef>
#include <algorithm>
#include <span>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace hatnet {

// One weight entry of a sparse affine map: W(row, col) = value.
struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;

    friend bool operator==(const Triplet&, const Triplet&) = default;
};

// Sparse affine map x -> W x + b.  Triplets are kept sorted by (row, col)
// with no duplicate positions; the bias vector always has out_dim entries.
class SparseAffine {
public:
    SparseAffine(std::size_t out_dim, std::size_t in_dim,
                 std::vector<Triplet> triplets, std::vector<double> bias)
        : out_dim_(out_dim), in_dim_(in_dim),
          triplets_(std::move(triplets)), bias_(std::move(bias)) {
        if (out_dim_ == 0 || in_dim_ == 0)
            throw std::invalid_argument("SparseAffine: dimensions must be positive");
        if (bias_.size() != out_dim_)
            throw std::invalid_argument("SparseAffine: bias length " +
                                        std::to_string(bias_.size()) +
                                        " != out_dim " + std::to_string(out_dim_));
        std::sort(triplets_.begin(), triplets_.end(),
                  [](const Triplet& a, const Triplet& b) {
                      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
                  });
        for (std::size_t t = 0; t < triplets_.size(); ++t) {
            const Triplet& e = triplets_[t];
            if (e.row >= out_dim_ || e.col >= in_dim_)
                throw std::invalid_argument(
                    "SparseAffine: triplet (" + std::to_string(e.row) + "," +
                    std::to_string(e.col) + ") outside " +
                    std::to_string(out_dim_) + "x" + std::to_string(in_dim_));
            if (t > 0 && triplets_[t - 1].row == e.row && triplets_[t - 1].col == e.col)
                throw std::invalid_argument(
                    "SparseAffine: duplicate triplet at (" + std::to_string(e.row) +
                    "," + std::to_string(e.col) + ")");
        }
    }

    // Affine map with all weights zero.
    static SparseAffine zero(std::size_t out_dim, std::size_t in_dim) {
        return SparseAffine(out_dim, in_dim, {}, std::vector<double>(out_dim, 0.0));
    }

    std::size_t out_dim() const { return out_dim_; }
    std::size_t in_dim() const { return in_dim_; }
    const std::vector<Triplet>& triplets() const { return triplets_; }
    const std::vector<double>& bias() const { return bias_; }

    // y = W x + b.  Row entries accumulate in ascending column order, so the
    // result is reproducible bit for bit.
    std::vector<double> apply(std::span<const double> x) const {
        if (x.size() != in_dim_) {
            std::ostringstream msg;
            msg << "SparseAffine::apply: input length " << x.size()
                << " does not match in_dim " << in_dim_;
            throw std::invalid_argument(msg.str());
        }
        std::vector<double> y(bias_);
        for (const Triplet& e : triplets_)
            y[e.row] += e.value * x[e.col];
        return y;
    }

    // Dense row-major out_dim x in_dim copy of W (bias not included).
    std::vector<double> dense() const {
        std::vector<double> w(out_dim_ * in_dim_, 0.0);
        for (const Triplet& e : triplets_)
            w[e.row * in_dim_ + e.col] = e.value;
        return w;
    }

    std::size_t nnz() const { return triplets_.size(); }

    // Largest number of weights feeding any single output row.
    std::size_t max_fan_in() const {
        std::size_t best = 0, run = 0;
        for (std::size_t t = 0; t < triplets_.size(); ++t) {
            run = (t > 0 && triplets_[t - 1].row == triplets_[t].row) ? run + 1 : 1;
            best = std::max(best, run);
        }
        return best;
    }

private:
    std::size_t out_dim_;
    std::size_t in_dim_;
    std::vector<Triplet> triplets_;
    std::vector<double> bias_;
};

} // namespace hatnet
