#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pinlab/io.hpp"
#include "pinlab/rng.hpp"

using namespace pinlab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("doubles round-trip through their text form") {
    pinlab::rng g(81);
    auto roundtrip = [](double x) {
        return std::strtod(format_double(x).c_str(), nullptr) == x;
    };
    CHECK(roundtrip(0.0));
    CHECK(roundtrip(1.0 / 3.0));
    CHECK(roundtrip(3.141592653589793));
    CHECK(roundtrip(1e300));
    CHECK(roundtrip(1e-300));
    CHECK(roundtrip(-2.2250738585072014e-308));
    for (int i = 0; i < 1000; ++i) {
        CHECK(roundtrip((g.uniform() - 0.5) * std::pow(10.0, 40.0 * g.uniform() - 20.0)));
    }
}

TEST_CASE("csv files carry a header and arity-checked rows") {
    std::string path = "io_test_tmp.csv";
    {
        csv_writer w(path, {"x", "y"});
        w.row({"1", "2"});
        w.row_values({0.5, -1.25});
        CHECK_THROWS_AS(w.row({"only-one"}), std::runtime_error);
        CHECK(w.path() == path);
    }
    CHECK(slurp(path) == "x,y\n1,2\n0.5,-1.25\n");
    std::remove(path.c_str());
}

TEST_CASE("manifests parse back with their configuration echo") {
    std::string path = "io_test_tmp_manifest.json";
    run_manifest m;
    m.command = "sample";
    m.config_json = "{\"n\":16,\"eps\":2.5}";
    m.seed = 99;
    m.seconds = 1.5;
    m.outputs = {"a.csv", "b.csv"};
    write_manifest(m, path);

    nlohmann::json j = nlohmann::json::parse(slurp(path));
    CHECK(j["schema"] == "manifest.v1");
    CHECK(j["version"] == std::string(kVersion));
    CHECK(j["command"] == "sample");
    CHECK(j["seed"] == 99);
    CHECK(j["config"]["n"] == 16);
    CHECK(j["config"]["eps"] == 2.5);
    CHECK(j["outputs"].size() == 2);
    std::remove(path.c_str());

    run_manifest empty_cfg;
    empty_cfg.command = "verify";
    write_manifest(empty_cfg, path);
    nlohmann::json k = nlohmann::json::parse(slurp(path));
    CHECK(k["config"].is_object());
    CHECK(k["config"].empty());
    std::remove(path.c_str());
}

TEST_CASE("the output directory honours the environment override") {
    const char* before = std::getenv("PINLAB_OUT");
    std::string keep = before ? before : "";

    setenv("PINLAB_OUT", "/tmp/pinlab-io-test", 1);
    CHECK(default_output_dir() == "/tmp/pinlab-io-test");
    unsetenv("PINLAB_OUT");
    CHECK(default_output_dir() == ".");
    setenv("PINLAB_OUT", "", 1);  // empty counts as unset
    CHECK(default_output_dir() == ".");

    if (before)
        setenv("PINLAB_OUT", keep.c_str(), 1);
    else
        unsetenv("PINLAB_OUT");
}
