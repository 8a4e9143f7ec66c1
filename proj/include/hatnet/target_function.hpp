#pragma once

#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hatnet {

enum class Support {
    unit_cube,      // [0, 1]^n
    symmetric_cube, // [-1, 1]^n
};

// A target to approximate: a C^1 (or Lipschitz) function together with the
// analytic bounds the error estimates consume.  The evaluator must return 0
// outside the declared support; deriv_bounds[j] dominates sup |d f / d x_j|
// and sup_bound dominates sup |f|.
struct TargetFunction {
    std::string name;
    std::size_t dim = 0;
    Support support = Support::unit_cube;
    std::function<double(std::span<const double>)> evaluator;
    std::vector<double> deriv_bounds;
    double sup_bound = 0.0;

    double operator()(std::span<const double> x) const { return evaluator(x); }

    double support_lo() const {
        return support == Support::unit_cube ? 0.0 : -1.0;
    }
    double support_hi() const { return 1.0; }

    double max_deriv_bound() const {
        double b = 0.0;
        for (double d : deriv_bounds) b = std::max(b, d);
        return b;
    }
};

namespace detail {

struct Factor1D {
    std::function<double(double)> value; // on the support interval
    double deriv_bound;
    double sup_bound;
    Support support;
};

inline TargetFunction product_target(const std::string& family, std::size_t n,
                                     const Factor1D& f) {
    if (n == 0)
        throw std::invalid_argument("target dimension must be positive");
    const double lo = f.support == Support::unit_cube ? 0.0 : -1.0;
    TargetFunction t;
    t.name = family + std::to_string(n);
    t.dim = n;
    t.support = f.support;
    t.evaluator = [f, lo, n](std::span<const double> x) {
        if (x.size() != n)
            throw std::invalid_argument("target evaluator: wrong input dimension");
        double p = 1.0;
        for (double xi : x) {
            // Every factor vanishes at the support boundary, but sin/cos at
            // the edge round to ~1e-32 rather than 0; treat the closed edge
            // as part of the zero set so boundary lattice nodes are exact.
            if (xi <= lo || xi >= 1.0) return 0.0;
            p *= f.value(xi);
        }
        return p;
    };
    // |d/dx_j prod| <= deriv_bound * sup_bound^(n-1); each factor is bounded
    // by sup_bound.
    const double cross = std::pow(f.sup_bound, static_cast<double>(n - 1));
    t.deriv_bounds.assign(n, f.deriv_bound * cross);
    t.sup_bound = std::pow(f.sup_bound, static_cast<double>(n));
    return t;
}

// Multi-frequency factor sum_{s=0..levels} amp * 2^(-s(1+beta)) sin^2(pi 2^s t)
// on [0,1].  Every term and its derivative vanish at 0 and 1, so the zero
// extension is C^1.  The derivative is only Hoelder continuous with exponent
// beta, which keeps the piecewise-linear approximation error of mesh h at the
// first-order scale h^(1+beta) instead of the superconvergent h^2 of smooth
// targets; rate measurements use this factor.
inline constexpr double kMultiscaleBeta = 0.06;
inline constexpr int kMultiscaleLevels = 14;
inline constexpr double kMultiscaleAmp = 0.48;

inline const std::vector<double>& multiscale_coeffs() {
    static const std::vector<double> c = [] {
        std::vector<double> v(kMultiscaleLevels + 1);
        for (int s = 0; s <= kMultiscaleLevels; ++s)
            v[s] = std::pow(2.0, -s * (1.0 + kMultiscaleBeta));
        return v;
    }();
    return c;
}

inline double multiscale_value(double t) {
    const std::vector<double>& c = multiscale_coeffs();
    double acc = 0.0;
    double freq = std::numbers::pi * t;
    for (int s = 0; s <= kMultiscaleLevels; ++s, freq *= 2.0) {
        const double sn = std::sin(freq);
        acc += c[s] * sn * sn;
    }
    return kMultiscaleAmp * acc;
}

inline double multiscale_deriv_bound() {
    double acc = 0.0;
    for (int s = 0; s <= kMultiscaleLevels; ++s)
        acc += std::pow(2.0, -s * kMultiscaleBeta);
    return kMultiscaleAmp * std::numbers::pi * acc;
}

inline double multiscale_sup_bound() {
    double acc = 0.0;
    for (int s = 0; s <= kMultiscaleLevels; ++s)
        acc += std::pow(2.0, -s * (1.0 + kMultiscaleBeta));
    return kMultiscaleAmp * acc;
}

} // namespace detail

// Families available from the registry, instantiated per dimension via
// make_target(family, n) or make_target("<family><n>").
inline std::vector<std::pair<std::string, std::string>> list_target_families() {
    return {
        {"parabola", "prod_j 4 x_j (1 - x_j) on [0,1]^n"},
        {"sine", "prod_j sin^2(pi x_j) on [0,1]^n"},
        {"bump", "prod_j (4 x_j (1 - x_j))^2 on [0,1]^n"},
        {"cosine", "prod_j cos^2(pi x_j / 2) on [-1,1]^n"},
        {"multiscale", "product of multi-frequency C^1 factors on [0,1]^n "
                       "with Hoelder-rough derivative, for rate studies"},
    };
}

// Splits "bump2" into {"bump", 2}; a bare family name yields dim 0.
inline std::pair<std::string, std::size_t> split_target_id(const std::string& id) {
    std::size_t pos = id.size();
    while (pos > 0 && std::isdigit(static_cast<unsigned char>(id[pos - 1])))
        --pos;
    const std::size_t dim = pos == id.size()
                                ? 0
                                : static_cast<std::size_t>(std::stoul(id.substr(pos)));
    return {id.substr(0, pos), dim};
}

inline TargetFunction make_family_target(const std::string& family, std::size_t n) {
    using std::numbers::pi;
    detail::Factor1D f;
    if (family == "parabola") {
        f = {[](double t) { return 4.0 * t * (1.0 - t); },
             4.0, 1.0, Support::unit_cube};
    } else if (family == "sine") {
        f = {[](double t) {
                 const double s = std::sin(pi * t);
                 return s * s;
             },
             pi, 1.0, Support::unit_cube};
    } else if (family == "bump") {
        // d/dt (4t(1-t))^2 = 32 t (1-t)(1-2t), maximal at t = 1/2 - sqrt(3)/6
        // with value 16 sqrt(3) / 9.
        f = {[](double t) {
                 const double p = 4.0 * t * (1.0 - t);
                 return p * p;
             },
             16.0 * std::sqrt(3.0) / 9.0, 1.0, Support::unit_cube};
    } else if (family == "cosine") {
        f = {[](double t) {
                 const double c = std::cos(pi * t / 2.0);
                 return c * c;
             },
             pi / 2.0, 1.0, Support::symmetric_cube};
    } else if (family == "multiscale") {
        f = {[](double t) { return detail::multiscale_value(t); },
             detail::multiscale_deriv_bound(), detail::multiscale_sup_bound(),
             Support::unit_cube};
    } else {
        throw std::invalid_argument("unknown target family: " + family);
    }
    return detail::product_target(family, n, f);
}

// Accepts "bump2", "parabola1", ... (family name with dimension suffix), or a
// bare family name combined with the separately supplied dimension.
inline TargetFunction make_target(const std::string& id,
                                  std::size_t dim_hint = 0) {
    const auto [family, n] = split_target_id(id);
    if (n == 0) {
        if (dim_hint == 0)
            throw std::invalid_argument("target id '" + id +
                                        "' carries no dimension and none was given");
        return make_family_target(family, dim_hint);
    }
    if (dim_hint != 0 && dim_hint != n)
        throw std::invalid_argument("target id '" + id + "' conflicts with n=" +
                                    std::to_string(dim_hint));
    return make_family_target(family, n);
}

} // namespace hatnet
