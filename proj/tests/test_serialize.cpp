#include <catch2/catch_amalgamated.hpp>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hatnet/builder_1d.hpp"
#include "hatnet/builder_nd.hpp"
#include "hatnet/sampling.hpp"
#include "hatnet/serialize.hpp"
#include "hatnet/target_function.hpp"

using namespace hatnet;

namespace {

std::filesystem::path scratch_dir() {
    const std::filesystem::path p =
        std::filesystem::temp_directory_path() / "hatnet_serialize_tests";
    std::filesystem::create_directories(p);
    return p;
}

bool networks_equal(const NetworkIR& a, const NetworkIR& b) {
    if (a.layers().size() != b.layers().size()) return false;
    for (std::size_t i = 0; i < a.layers().size(); ++i) {
        const SparseAffine& x = a.layers()[i];
        const SparseAffine& y = b.layers()[i];
        if (x.out_dim() != y.out_dim() || x.in_dim() != y.in_dim()) return false;
        if (x.triplets() != y.triplets()) return false;
        if (x.bias() != y.bias()) return false;
    }
    return true;
}

} // namespace

TEST_CASE("json schema carries widths, triplets, and bias") {
    const NetworkIR g = make_hat_gadget();
    const nlohmann::json j = to_json(g);
    CHECK(j["widths"] == nlohmann::json::array({1, 3, 1}));
    REQUIRE(j["layers"].size() == 2);
    CHECK(j["layers"][0]["out_dim"] == 3);
    CHECK(j["layers"][0]["in_dim"] == 1);
    CHECK(j["layers"][0]["triplets"] ==
          nlohmann::json::parse("[[0,0,1.0],[1,0,1.0],[2,0,1.0]]"));
    CHECK(j["layers"][0]["bias"] == nlohmann::json::parse("[-1.0,0.0,1.0]"));
    CHECK(j["layers"][1]["triplets"] ==
          nlohmann::json::parse("[[0,0,1.0],[0,1,-2.0],[0,2,1.0]]"));
}

TEST_CASE("structural round trip through json") {
    const TargetFunction f1 = make_target("sine", 1);
    const NetworkIR a = build_1d(f1, 3);
    CHECK(networks_equal(a, from_json(to_json(a))));

    const TargetFunction f2 = make_target("parabola", 2);
    const NetworkIR b = build_nd(f2, BuildSpec{2, 1, 4, false});
    CHECK(networks_equal(b, from_json(to_json(b))));
}

TEST_CASE("file round trip forwards bit-identically") {
    const auto dir = scratch_dir();
    const TargetFunction f = make_target("multiscale", 1);
    const NetworkIR net = build_1d(f, 5);
    const std::string path = (dir / "m1.json").string();
    save_json(net, path);
    const NetworkIR back = load_json(path);
    REQUIRE(networks_equal(net, back));

    Rng rng(61);
    for (int s = 0; s < 1000; ++s) {
        const double x = rng.uniform(-1.5, 1.5);
        const double y0 = net.forward(std::vector<double>{x})[0];
        const double y1 = back.forward(std::vector<double>{x})[0];
        CHECK(std::memcmp(&y0, &y1, sizeof(double)) == 0);
    }
}

TEST_CASE("malformed models are rejected with a format error") {
    CHECK_THROWS_AS(from_json(nlohmann::json::parse("{\"widths\":[1,3]}")),
                    ModelFormatError);
    CHECK_THROWS_AS(from_json(nlohmann::json::parse("{\"layers\":[]}")),
                    ModelFormatError);
    CHECK_THROWS_AS(
        from_json(nlohmann::json::parse(
            "{\"layers\":[{\"out_dim\":1,\"in_dim\":1,"
            "\"triplets\":[[0,0]],\"bias\":[0.0]}]}")),
        ModelFormatError);
    // A widths field that disagrees with the layers is an inconsistency.
    const nlohmann::json j = nlohmann::json::parse(
        "{\"widths\":[1,7],"
        "\"layers\":[{\"out_dim\":1,\"in_dim\":1,"
        "\"triplets\":[[0,0,2.0]],\"bias\":[0.0]}]}");
    CHECK_THROWS_AS(from_json(j), ModelFormatError);
    // Out-of-range triplets are structural errors too.
    CHECK_THROWS_AS(
        from_json(nlohmann::json::parse(
            "{\"layers\":[{\"out_dim\":1,\"in_dim\":1,"
            "\"triplets\":[[0,5,1.0]],\"bias\":[0.0]}]}")),
        ModelFormatError);
}

TEST_CASE("io failures are distinguished from format failures") {
    const auto dir = scratch_dir();
    CHECK_THROWS_AS(load_json((dir / "does_not_exist.json").string()),
                    std::ios_base::failure);
    const std::string garbled = (dir / "garbled.json").string();
    std::ofstream(garbled) << "{not json";
    CHECK_THROWS_AS(load_json(garbled), ModelFormatError);
    const NetworkIR g = make_hat_gadget();
    CHECK_THROWS_AS(save_json(g, (dir / "missing" / "x.json").string()),
                    std::ios_base::failure);
}

TEST_CASE("dense csv export writes one file per layer with bias last") {
    const auto dir = scratch_dir();
    const TargetFunction f = make_target("parabola", 1);
    const NetworkIR net = build_1d(f, 1); // widths (1, 9, 3, 1)
    REQUIRE(net.widths() == std::vector<std::size_t>{1, 9, 3, 1});
    const std::vector<std::string> files =
        save_dense_csv(net, (dir / "p_").string());
    REQUIRE(files.size() == 3);

    const std::vector<std::pair<std::size_t, std::size_t>> shapes = {
        {9, 2}, {3, 10}, {1, 4}};
    for (std::size_t l = 0; l < files.size(); ++l) {
        std::ifstream in(files[l]);
        REQUIRE(in.good());
        std::string line;
        std::size_t rows = 0;
        while (std::getline(in, line)) {
            std::size_t fields = 1;
            for (char ch : line)
                if (ch == ',') ++fields;
            CHECK(fields == shapes[l].second);
            ++rows;
        }
        CHECK(rows == shapes[l].first);
    }

    // Spot check: first row of the first file is weight k = 1 and the bias of
    // the lowest triple.
    std::ifstream in(files[0]);
    std::string first;
    std::getline(in, first);
    const std::size_t comma = first.find(',');
    const double w = std::stod(first.substr(0, comma));
    const double b = std::stod(first.substr(comma + 1));
    CHECK(w == net.layers()[0].dense()[0]);
    CHECK(b == net.layers()[0].bias()[0]);
}
