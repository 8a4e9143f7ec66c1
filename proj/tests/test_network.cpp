#include <catch2/catch_amalgamated.hpp>

#include "hatnet/network.hpp"
#include "hatnet/sparse_affine.hpp"

using namespace hatnet;

TEST_CASE("sparse affine validates its construction") {
    CHECK_THROWS_AS(SparseAffine(0, 1, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(SparseAffine(1, 0, {}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SparseAffine(2, 2, {}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SparseAffine(2, 2, {{2, 0, 1.0}}, {0.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SparseAffine(2, 2, {{0, 2, 1.0}}, {0.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        SparseAffine(2, 2, {{0, 0, 1.0}, {0, 0, 2.0}}, {0.0, 0.0}),
        std::invalid_argument);
}

TEST_CASE("sparse affine applies y = Wx + b") {
    // W = [[1, 2, 0], [0, 0, -3]], b = [0.5, 1]
    SparseAffine a(2, 3, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 2, -3.0}}, {0.5, 1.0});
    const std::vector<double> x = {1.0, -1.0, 2.0};
    const std::vector<double> y = a.apply(x);
    REQUIRE(y.size() == 2);
    CHECK(y[0] == Catch::Approx(-0.5));
    CHECK(y[1] == Catch::Approx(-5.0));
    CHECK_THROWS_AS(a.apply(std::vector<double>{1.0}), std::invalid_argument);

    const std::vector<double> d = a.dense();
    REQUIRE(d.size() == 6);
    CHECK(d[0] == 1.0);
    CHECK(d[1] == 2.0);
    CHECK(d[2] == 0.0);
    CHECK(d[5] == -3.0);
    CHECK(a.nnz() == 3);
    CHECK(a.max_fan_in() == 2);
}

TEST_CASE("triplets are stored sorted by row then column") {
    SparseAffine a(2, 3, {{1, 2, 5.0}, {0, 1, 2.0}, {0, 0, 1.0}},
                   {0.0, 0.0});
    const std::vector<Triplet>& t = a.triplets();
    REQUIRE(t.size() == 3);
    CHECK(t[0] == Triplet{0, 0, 1.0});
    CHECK(t[1] == Triplet{0, 1, 2.0});
    CHECK(t[2] == Triplet{1, 2, 5.0});
}

TEST_CASE("network validates the layer chain") {
    SparseAffine a(2, 1, {{0, 0, 1.0}, {1, 0, -1.0}}, {0.0, 0.0});
    SparseAffine bad(1, 3, {{0, 0, 1.0}}, {0.0});
    CHECK_THROWS_AS(NetworkIR({a, bad}), std::invalid_argument);
    CHECK_THROWS_AS(NetworkIR({}), std::invalid_argument);
}

TEST_CASE("forward applies relu between affines but not at the output") {
    // First layer produces (x, -x); relu keeps the positive part; the second
    // layer computes their difference minus 1, which may be negative.
    SparseAffine a(2, 1, {{0, 0, 1.0}, {1, 0, -1.0}}, {0.0, 0.0});
    SparseAffine b(1, 2, {{0, 0, 1.0}, {0, 1, -1.0}}, {-1.0});
    NetworkIR net({a, b});
    CHECK(net.depth() == 1);
    CHECK(net.widths() == std::vector<std::size_t>{1, 2, 1});
    CHECK(net.forward(std::vector<double>{2.0})[0] == Catch::Approx(1.0));
    CHECK(net.forward(std::vector<double>{-3.0})[0] == Catch::Approx(-4.0));

    const EvalTrace tr = net.forward_traced(std::vector<double>{-3.0});
    REQUIRE(tr.pre.size() == 1);
    REQUIRE(tr.post.size() == 1);
    CHECK(tr.pre[0] == std::vector<double>{-3.0, 3.0});
    CHECK(tr.post[0] == std::vector<double>{0.0, 3.0});
    CHECK(tr.output == std::vector<double>{-4.0});
}

TEST_CASE("identity chain reproduces nonnegative inputs only") {
    NetworkIR id = make_identity_chain(2, 3);
    CHECK(id.depth() == 3);
    const std::vector<double> y =
        id.forward(std::vector<double>{0.25, 1.5});
    CHECK(y == std::vector<double>{0.25, 1.5});
    // Negative inputs are clipped by the first activation.
    CHECK(id.forward(std::vector<double>{-1.0, 2.0}) ==
          std::vector<double>{0.0, 2.0});
}

TEST_CASE("concatenation composes through an activation seam") {
    NetworkIR a = make_identity_chain(1, 1);
    SparseAffine out(1, 1, {{0, 0, 2.0}}, {1.0});
    NetworkIR b({out});
    NetworkIR c = concat_networks(a, b);
    CHECK(c.depth() == 2);
    CHECK(c.forward(std::vector<double>{3.0})[0] == Catch::Approx(7.0));
    NetworkIR wide = make_identity_chain(2, 1);
    CHECK_THROWS_AS(concat_networks(wide, b), std::invalid_argument);
}

TEST_CASE("parameter counts distinguish stored from dense weights") {
    SparseAffine a(2, 1, {{0, 0, 1.0}, {1, 0, -1.0}}, {0.0, 0.0});
    SparseAffine b(1, 2, {{0, 0, 1.0}}, {0.0});
    NetworkIR net({a, b});
    const ParamCounts c = net.count_params();
    CHECK(c.nnz_total == 3);
    CHECK(c.dense_total == 4);
    CHECK(c.per_layer_fan_in_max == std::vector<std::size_t>{1, 1});
}
