#include "doctest.h"

#include "eqtk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using eqtk::io::Json;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "eqtk");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = eqtk::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string config(const char* name) { return std::string(EQTK_SOURCE_DIR) + "/configs/" + name; }
std::string fixture(const char* name) { return std::string(EQTK_SOURCE_DIR) + "/tests/data/" + name; }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::istringstream fields(line);
        std::string f;
        while (std::getline(fields, f, ',')) row.push_back(f);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("cli: every subcommand is registered") {
    const auto names = eqtk::cli::command_names();
    for (const char* expected : {"weights wedge", "weights tensor", "weights ext", "cones decompose", "poly volume",
                                 "poly vertices", "poly ratio", "lattice svp", "lattice omega", "lattice mahler",
                                 "count sp", "count constants", "count ballratio", "count growth", "dyn osc",
                                 "dyn wrap", "dyn shear"}) {
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());
    }
}

TEST_CASE("cli: cones decompose on the cylinder example") {
    const auto r = invoke({"--config", config("cylinder_decompose.json"), "cones", "decompose"});
    REQUIRE(r.code == 0);
    const auto doc = Json::parse(r.out);
    CHECK(doc["schema_version"] == eqtk::cli::kSchemaVersion);
    CHECK(doc["config"]["command"] == "cones decompose");
    CHECK(doc["config"]["params"]["dim"] == 3);
    CHECK(doc["result"]["phi_inf"] == Json::array({1}));
    CHECK(doc["result"]["phi1"] == Json::array({0}));
    CHECK(doc["result"]["phi0"] == Json::array({2, 3, 4}));
    CHECK(doc["result"]["w_basis"] == Json::parse(R"([["0","0","1"]])"));
}

TEST_CASE("cli: poly ratio CSV follows (n - 2 sqrt n) / n") {
    const auto r = invoke({"--config", config("cylinder_ratio.json"), "poly", "ratio"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"n", "omega", "vol_split", "vol_full", "ratio", "ratio_real", "contained"});
    CHECK(rows[1][4] == "4/5");
    CHECK(rows[3][4] == "49/50");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double n = std::stod(rows[i][0]);
        CHECK(std::stod(rows[i][5]) == doctest::Approx(1 - 2 / std::sqrt(n)).epsilon(1e-9));
        CHECK(rows[i][6] == "true");
    }
    CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("cli: count sp is byte-identical across runs and thread counts") {
    const auto a = invoke({"--seed", "11", "count", "sp", "--N", "1", "--d", "1", "--R", "128"});
    const auto b = invoke({"--seed", "11", "count", "sp", "--N", "1", "--d", "1", "--R", "128"});
    const auto c = invoke({"--seed", "11", "--threads", "3", "count", "sp", "--N", "1", "--d", "1", "--R", "128"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const auto doc = Json::parse(a.out);
    CHECK(doc["config"]["seed"] == 11);
    CHECK(doc["result"]["rows"][0]["count"] == 2660);
}

TEST_CASE("cli: Monte-Carlo output depends only on the seed") {
    const std::vector<std::string> args{"count", "ballratio", "--N", "1", "--d", "1", "--R", "50", "--samples", "100000"};
    auto with = [&](std::vector<std::string> pre) {
        pre.insert(pre.end(), args.begin(), args.end());
        return invoke(pre);
    };
    const auto a = with({"--seed", "5"});
    const auto b = with({"--seed", "5", "--threads", "4"});
    const auto c = with({"--seed", "6"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
}

TEST_CASE("cli: exit codes") {
    SUBCASE("missing seed for a Monte-Carlo command is a schema error") {
        CHECK(invoke({"count", "ballratio"}).code == 2);
    }
    SUBCASE("malformed flag value") {
        CHECK(invoke({"count", "sp", "--N", "one"}).code == 2);
    }
    SUBCASE("unknown subcommand") {
        CHECK(invoke({"poly", "area"}).code == 2);
    }
    SUBCASE("unbounded polytope") {
        const auto r = invoke({"--config", fixture("halfplane.json"), "poly", "volume"});
        CHECK(r.code == 2);
        CHECK(r.err.find("unbounded") != std::string::npos);
    }
    SUBCASE("config for a different command") {
        CHECK(invoke({"--config", config("cylinder_ratio.json"), "cones", "decompose"}).code == 2);
    }
    SUBCASE("numerical failure") {
        eqtk::cli::RunConfig cfg;
        cfg.command = "lattice svp";
        cfg.params = Json{{"matrix", Json::parse("[[1, 2], [2, 4]]")}};
        std::ostringstream out, err;
        CHECK(eqtk::cli::run(cfg, out, err) == 3);
    }
    SUBCASE("invariant violation") {
        const auto r = invoke({"--config", fixture("escaping_split.json"), "poly", "ratio"});
        CHECK(r.code == 4);
    }
}

TEST_CASE("cli: output file and CSV quoting") {
    const std::string path = "cli_test_output.csv";
    const auto r = invoke({"--config", config("triangle_volume.json"), "--out", path, "--format", "csv", "poly",
                           "vertices"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == "x1,x2\n0,0\n0,1\n1,0\n");
    std::remove(path.c_str());
}
