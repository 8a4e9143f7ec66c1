// Acceptance gate: ten numbered end-to-end checks over the public API, one
// pass/fail line each.  Exits nonzero if any check fails.  All sweeps are
// seeded, so reruns are bit-identical.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hatnet/builder_1d.hpp"
#include "hatnet/builder_nd.hpp"
#include "hatnet/hat_basis.hpp"
#include "hatnet/mult_net.hpp"
#include "hatnet/network.hpp"
#include "hatnet/sampling.hpp"
#include "hatnet/serialize.hpp"
#include "hatnet/target_function.hpp"
#include "hatnet/verify.hpp"

namespace {

using namespace hatnet;

int failures = 0;

void line(int id, bool ok, const std::string& text) {
    std::printf("[%s] %2d %s\n", ok ? "PASS" : "FAIL", id, text.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void info(const std::string& text) {
    std::printf("          %s\n", text.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// 1: the three-relu gadget reproduces the tent exactly.
void check_gadget() {
    WallTimer timer;
    const NetworkIR gadget = make_hat_gadget();
    double dev = 0.0;
    const std::size_t count = 100001;
    std::vector<double> x(1);
    for (std::size_t i = 0; i < count; ++i) {
        x[0] = -2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(count - 1);
        dev = std::max(dev, std::abs(gadget.forward(x)[0] - g1(x[0])));
    }
    const double ms = timer.ms();
    line(1, dev <= 1e-14 && ms < 1000.0,
         "hat gadget vs tent on [-2,2], " + std::to_string(count) +
             " pts: max dev " + fmt(dev) + " (tol 1e-14, " + fmt(ms) + " ms)");
}

// 2 and 3: the shifted hats sum to one, and their distance-weighted sum
// stays below n/(2k), attained at n = k = 1, x = 1/2.
void check_partition_and_moment() {
    WallTimer timer;
    double part_dev = 0.0;
    double moment_excess = -1.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        for (long k : {1L, 2L, 4L, 8L, 16L}) {
            Rng rng(200 + 10 * n + static_cast<std::uint64_t>(k));
            const PointSet pts = random_points(rng, n, 10000, -1.0, 1.0);
            const double bound =
                static_cast<double>(n) / (2.0 * static_cast<double>(k));
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const auto x = pts.point(i);
                part_dev =
                    std::max(part_dev, std::abs(partition_sum(n, k, x) - 1.0));
                moment_excess =
                    std::max(moment_excess, moment_sum(n, k, x) - bound);
            }
        }
    }
    const double ms = timer.ms();
    line(2, part_dev <= 1e-12 && ms < 10000.0,
         "partition of unity, n in 1..4, k in {1,2,4,8,16}, 1e4 pts each: "
         "max |sum - 1| " +
             fmt(part_dev) + " (tol 1e-12, " + fmt(ms) + " ms)");

    const double attained = moment_sum(1, 1, std::vector<double>{0.5});
    line(3,
         moment_excess <= 1e-12 && std::abs(attained - 0.5) <= 1e-12,
         "moment bound n/(2k), same sweep: max excess " + fmt(moment_excess) +
             " (tol 1e-12), attained value " + fmt(attained) + " at n=k=1");
}

// 4: interpolant error stays below deriv * n / (2k) for every registry
// target, and the rough 1-D target's error halves per k doubling.
void check_interpolation_bound() {
    bool bounds_ok = true;
    double worst_excess = -1.0;
    std::map<long, double> rough_errs;
    for (const auto& [family, desc] : list_target_families()) {
        for (std::size_t dim : {1, 2}) {
            const TargetFunction f = make_target(family, dim);
            for (long k : {1L, 2L, 4L, 8L, 16L}) {
                Rng rng(300 + static_cast<std::uint64_t>(k) + 10 * dim);
                const PointSet pts =
                    error_grid(dim, k, f.support_lo(), f.support_hi(),
                               dim == 1 ? 20001 : 101, 2000, rng);
                const Theorem1Gap gap = theorem1_gap(f, k, pts.flat, false);
                worst_excess = std::max(worst_excess, gap.sup_gap - gap.bound);
                if (gap.sup_gap > gap.bound + 1e-9) bounds_ok = false;
                if (family == "multiscale" && dim == 1)
                    rough_errs[k] = gap.sup_gap;
            }
        }
    }
    const double r1 = rough_errs[8] / rough_errs[4];
    const double r2 = rough_errs[16] / rough_errs[8];
    const bool halving_ok =
        r1 >= 0.45 && r1 <= 0.55 && r2 >= 0.45 && r2 <= 0.55;
    line(4, bounds_ok && halving_ok,
         "interpolation bound, 5 families x dims {1,2} x k in {1,2,4,8,16}: "
         "max excess " +
             fmt(worst_excess) + " (tol 1e-9); rough-target halving ratios " +
             fmt(r1) + ", " + fmt(r2) + " (need 0.45..0.55)");
}

// 5: the shallow 1-D network equals the closed-form interpolant and its
// widths match (1, 3(2k+1), 2k+1, 1), or (1, 3(k+1), k+1, 1) restricted.
void check_build_1d() {
    bool widths_ok = true;
    double worst = 0.0;
    for (const auto& [family, desc] : list_target_families()) {
        const TargetFunction f = make_target(family, 1);
        for (long k = 1; k <= 16; ++k) {
            const NetworkIR net = build_1d(f, k);
            const std::size_t w = static_cast<std::size_t>(2 * k + 1);
            if (net.widths() != std::vector<std::size_t>{1, 3 * w, w, 1})
                widths_ok = false;
            const PointSet grid =
                tensor_grid(1, 10000, f.support_lo(), f.support_hi());
            std::vector<double> x(1);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                x[0] = grid.flat[i];
                worst = std::max(worst, std::abs(net.forward(x)[0] -
                                                 interpolant(f, k, x)));
            }
            if (f.support == Support::unit_cube) {
                const NetworkIR res = build_1d(f, k, true);
                const std::size_t h = static_cast<std::size_t>(k + 1);
                if (res.widths() != std::vector<std::size_t>{1, 3 * h, h, 1})
                    widths_ok = false;
            }
        }
    }
    line(5, worst <= 1e-12 && widths_ok,
         "1-D network vs closed-form interpolant, all families, k <= 16, "
         "1e4 pts: max gap " +
             fmt(worst) + " (tol 1e-12), widths exact both lattices");
}

// 6: product blocks meet the 3^r 2^-m ceiling inside the stated footprint.
void check_mult_blocks() {
    WallTimer timer;
    bool ok = true;
    double worst_margin = 0.0;
    for (std::size_t r : {2, 3, 4}) {
        for (std::size_t m : {4, 6, 8, 10}) {
            const NetworkIR net = make_mult({r, m});
            const double bound = mult_error_bound({r, m});
            if (net.depth() > (m + 5) * ceil_log2(r)) ok = false;
            for (std::size_t w : net.widths())
                if (w > 6 * r) ok = false;
            Rng rng(600 + 100 * r + m);
            const PointSet pts = random_points(rng, r, 10000, 0.0, 1.0);
            double err = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const auto x = pts.point(i);
                double prod = 1.0;
                for (double xi : x) prod *= xi;
                err = std::max(err, std::abs(net.forward(x)[0] - prod));
            }
            if (err > bound) ok = false;
            worst_margin = std::max(worst_margin, err / bound);
        }
    }
    const double ms = timer.ms();
    line(6, ok && ms < 30000.0,
         "product blocks, r in {2,3,4}, m in {4,6,8,10}, 1e4 samples: "
         "worst err/bound " +
             fmt(worst_margin) + ", depth <= (m+5)ceil(log2 r), widths <= 6r (" +
             fmt(ms) + " ms)");
}

// 7: the n-D construction matches its stated architecture exactly, each
// cell's product stage tracks the tensor hat, and the composed error stays
// under the per-cell-budget ceiling; the per-axis ceiling is reported.
void check_build_nd() {
    const TargetFunction f = make_target("bump", 2);
    bool conform_ok = true, appid_ok = true, conservative_ok = true;
    int axis_pass = 0, total = 0;
    double largest_ms = 0.0, worst_appid = 0.0;
    for (long k : {1L, 2L, 3L}) {
        for (std::size_t m : {6, 8, 10}) {
            for (bool half : {false, true}) {
                WallTimer timer;
                const BuildSpec spec{2, k, m, half};
                const NetworkIR net = build_nd(f, spec);
                if (!conformance_nd(net, spec).ok()) conform_ok = false;

                const double cell_err =
                    appid_max_cell_error(spec, 1000, 700 + m + 10 * k);
                const double cell_bound = 9.0 * std::pow(2.0, -double(m));
                worst_appid = std::max(worst_appid, cell_err / cell_bound);
                if (cell_err > cell_bound) appid_ok = false;

                Rng rng(710 + m + 10 * static_cast<std::uint64_t>(k));
                const PointSet pts = error_grid(2, k, 0.0, 1.0, 101, 2000, rng);
                const Theorem2Report rep = theorem2_report(f, spec, pts);
                if (!rep.pass_conservative) conservative_ok = false;
                axis_pass += rep.pass_per_axis ? 1 : 0;
                ++total;
                largest_ms = std::max(largest_ms, timer.ms());
            }
        }
    }
    line(7,
         conform_ok && appid_ok && conservative_ok && largest_ms < 120000.0,
         "n=2 builds, k in {1,2,3}, m in {6,8,10}, both lattices: widths/depth "
         "exact, worst cell err/bound " +
             fmt(worst_appid) + ", composed error under the per-cell ceiling "
             "(largest case " +
             fmt(largest_ms) + " ms)");
    info("info: per-axis ceiling (informational) held in " +
         std::to_string(axis_pass) + "/" + std::to_string(total) + " configs");
}

// 8: under the mesh-depth coupling the fitted error slope per unit depth
// is -1/(2 ceil(log2 n)) within 30%.
void check_rate() {
    const RateStudyResult res = rate_study(RateStudyParams{});
    std::string pts;
    for (const RatePoint& p : res.points)
        pts += (pts.empty() ? "" : " ") + std::to_string(p.L) + ":" +
               fmt(p.sup_error);
    line(8, res.slope_ok && res.points.size() >= 5,
         "coupled depth sweep, n=2, " + std::to_string(res.points.size()) +
             " depths: slope " + fmt(res.slope) + " vs expected " +
             fmt(res.expected_slope) + " (need +-30%)");
    info("info: depth:error points " + pts);
}

// 9: the n=2, k=3 build is block sparse: under 5% of dense parameters,
// unit fan-in into the hat stage, fan-in 3 collapses, n taps per cell.
void check_sparsity() {
    const BuildSpec spec{2, 3, 6, false};
    const NetworkIR net = build_nd(make_target("bump", 2), spec);
    const ParamCounts counts = net.count_params();
    const double ratio = static_cast<double>(counts.nnz_total) /
                         static_cast<double>(counts.dense_total);
    const bool wiring_ok = all_mandatory_pass(wiring_rows(spec));
    line(9, ratio < 0.05 && wiring_ok,
         "locality at n=2, k=3: nnz/dense " + fmt(ratio) +
             " (need < 0.05), fan-ins 1 and 3, each cell taps 2 hat outputs");
}

// 10: JSON round trips preserve forward output bit for bit.
void check_serialization() {
    const auto dir =
        std::filesystem::temp_directory_path() / "hatnet_acceptance";
    std::filesystem::create_directories(dir);
    bool ok = true;
    std::size_t points = 0;
    const auto roundtrip = [&](const NetworkIR& net, const std::string& name) {
        const std::string path = (dir / name).string();
        save_json(net, path);
        const NetworkIR back = load_json(path);
        Rng rng(1000);
        const PointSet pts =
            random_points(rng, net.input_dim(), 1000, -0.5, 1.5);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::vector<double> a = net.forward(pts.point(i));
            const std::vector<double> b = back.forward(pts.point(i));
            if (a.size() != b.size() ||
                std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) != 0)
                ok = false;
        }
        points += pts.size();
    };
    roundtrip(build_1d(make_target("parabola", 1), 3), "acc_1d.json");
    roundtrip(build_nd(make_target("bump", 2), BuildSpec{2, 1, 6, false}),
              "acc_nd.json");
    line(10, ok,
         "json round trip: forward bit-identical on " +
             std::to_string(points) + " random points across two models");
}

} // namespace

int main() {
    check_gadget();
    check_partition_and_moment();
    check_interpolation_bound();
    check_build_1d();
    check_mult_blocks();
    check_build_nd();
    check_rate();
    check_sparsity();
    check_serialization();
    std::printf("acceptance: %d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
