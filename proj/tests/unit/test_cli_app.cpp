#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "hyperseries/eigen_recursion.hpp"

using namespace hyperseries;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path temp_file(const std::string &name)
{
    return std::filesystem::temp_directory_path() / ("hyperseries_test_" + name);
}

} // namespace

TEST_CASE("coeffs")
{
    auto r = run({"coeffs", "--n", "2", "--lambda", "2", "--delta", "1", "--a0", "1", "--a1", "0", "--order", "2"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["coefficients"] == json::array({1.0, 0.0, -0.5}));
    CHECK(doc["contract_ok"] == true);

    r = run({"coeffs", "--order", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("order must be >= 2") != std::string::npos);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

    r = run({"coeffs"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["coefficients"].size() == 33);

    r = run({"coeffs", "--format", "csv", "--order", "4"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("index,coefficient\n0,1\n1,0\n", 0) == 0);

    CHECK(run({"coeffs", "--lambda", "0"}).code == 2);
    CHECK(run({"coeffs", "--center", "1"}).code == 2);
    CHECK(run({"coeffs", "--n", "1"}).code == 2);
    CHECK(run({"coeffs", "--lambda", "nope"}).code == 2);
    CHECK(run({"coeffs", "--unknown"}).code == 2);
    CHECK(run({"coeffs", "--lambda", "1e300", "--order", "40"}).code == 4);
}

TEST_CASE("params-json fills options not given on the command line")
{
    auto r = run({"coeffs", "--params-json", R"({"n": 3, "lambda": 24, "delta": 2, "order": 2})", "--lambda", "48"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["params"]["n"] == 3);
    CHECK(doc["params"]["lambda"] == 48.0);
    CHECK(doc["coefficients"][2] == -2.0);

    const auto path = temp_file("params.json");
    std::ofstream(path) << R"({"n": 3, "lambda": 24, "delta": 2, "order": 2})";
    r = run({"coeffs", "--params-json", "@" + path.string()});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["coefficients"][2] == -1.0);

    CHECK(run({"coeffs", "--params-json", "{not json"}).code == 2);
    CHECK(run({"coeffs", "--params-json", R"({"bogus": 1})"}).code == 2);
    CHECK(run({"coeffs", "--params-json", "[1, 2]"}).code == 2);

    r = run({"temporal", "--params-json", R"({"A2": [0, 1], "c": 0.5, "t-count": 2})"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["params"]["A2"] == json::array({0.0, 1.0}));
}

TEST_CASE("verify")
{
    auto r = run({"verify"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["checks"].size() == 10);
    CHECK(doc["all_pass"] == true);
    CHECK(run({"verify"}).out == r.out);

    r = run({"verify", "--tamper"});
    CHECK(r.code == 3);
    const auto tampered = json::parse(r.out);
    for (const auto &c : tampered["checks"]) {
        CHECK(c["pass"] == (c["name"] != "residual_vanishing"));
    }
    // The hidden flag does not appear in help.
    CHECK(run({"verify", "--help"}).out.find("tamper") == std::string::npos);
}

TEST_CASE("eigenfun output round-trips bit for bit")
{
    const auto r = run({"eigenfun", "--center", "2", "--n", "3", "--lambda", "-0.7", "--a1", "0.2"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    const EigenParams p{3, -0.7, 1.0, 1.0, 0.2, 2.0};
    const auto s = eigen_coefficients(p, 32);
    REQUIRE(doc["rows"].size() == 20);
    for (const auto &row : doc["rows"]) {
        CHECK(row["trusted"] == true);
        const double eta = row["eta"];
        const auto v = eval_in_eta(s, p.op(), eta);
        CHECK(row["u"].get<double>() == v.value);
        CHECK(row["z"].get<double>() == v.z);
    }

    const auto csv = run({"eigenfun", "--center", "2", "--format", "csv", "--eta-count", "3"});
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "eta,z,u,trusted");
    while (std::getline(lines, line)) {
        double eta = 0, z = 0, u = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &eta, &z, &u) == 3);
        CHECK(u == evaluate(eigen_coefficients(EigenParams{2, 1.0, 1.0, 1.0, 0.0, 2.0}, 32), z));
    }

    const auto wide = run({"eigenfun", "--center", "2", "--eta-min", "0.5", "--eta-max", "3", "--eta-count", "4"});
    CHECK(wide.code == 0);
    CHECK(json::parse(wide.out)["untrusted_count"] == 3);
    CHECK(wide.err.find("warning: 3") != std::string::npos);

    CHECK(run({"eigenfun"}).code == 2);
    CHECK(run({"eigenfun", "--eta-min", "-1", "--eta-max", "1"}).code == 2);
}

TEST_CASE("pde")
{
    auto r = run({"pde", "--center", "2", "--order", "24"});
    REQUIRE(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["pass"] == true);
    CHECK(doc["residual_max"].get<double>() <= doc["tolerance_budget"].get<double>());
    CHECK(doc["values"].size() == 20);
    CHECK(doc["values"][0].size() == 20);
    CHECK(doc["values"][0][0].size() == 2);

    r = run({"pde", "--center", "2", "--order", "24", "--omega-over-alpha", "1", "--f0", "0.5,0.1"});
    REQUIRE(r.code == 0);
    doc = json::parse(r.out);
    CHECK(doc["temporal"]["A2"] == json::array({0.0, 1.0}));
    CHECK(doc["values"][3][5][1].get<double>() != 0.0);

    CHECK(run({"pde", "--center", "2", "--A1", "2"}).code == 2);
    CHECK(run({"pde", "--center", "2", "--A2", "-1", "--omega-over-alpha", "1"}).code == 2);
    CHECK(run({"pde", "--center", "2", "--eta-min", "0.1", "--eta-max", "3"}).code == 2);
}

TEST_CASE("guard")
{
    auto r = run({"guard", "--poly", "1,2", "--delta", "3"});
    REQUIRE(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["leading_coeff_law"]["lhs"] == 24.0);
    CHECK(doc["witness"] == 24.0);

    r = run({"guard", "--seed", "5"});
    REQUIRE(r.code == 0);
    CHECK(run({"guard", "--seed", "5"}).out == r.out);
    CHECK(json::parse(r.out)["polynomials"] == 500);

    CHECK(run({"guard", "--poly", "3"}).code == 2);
    CHECK(run({"guard", "--poly", "1,x"}).code == 2);
}

TEST_CASE("temporal")
{
    auto r = run({"temporal", "--A1", "1", "--A2", "-1", "--f0", "-1", "--t-count", "4"});
    REQUIRE(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["params"]["c"] == json::array({2.0, 0.0}));
    CHECK(doc["rows"][0]["f"] == json::array({-1.0, 0.0}));
    CHECK(doc["rows"][0]["df"][0].get<double>() == doctest::Approx(2.0));

    // 1 - 0.5 e^{t} vanishes at t = ln 2; the grid point is excluded, not failed.
    r = run({"temporal", "--c", "0.5", "--t-min", "0", "--t-max", "1.3862943611198906", "--t-count", "3"});
    REQUIRE(r.code == 0);
    doc = json::parse(r.out);
    CHECK(doc["excluded_times"].size() == 1);
    CHECK(doc["rows"].size() == 2);
    CHECK(doc["pole_time"][0].get<double>() == doctest::Approx(std::log(2.0)));

    CHECK(run({"temporal", "--n", "3", "--c", "3", "--real"}).code == 2);
    CHECK(run({"temporal", "--n", "4", "--c", "3", "--real", "--t-count", "2"}).code == 0);
    CHECK(run({"temporal", "--f0", "0"}).code == 2);
    CHECK(run({"temporal", "--A2", "abc"}).code == 2);
}

TEST_CASE("--out writes the document and prints a summary")
{
    const auto path = temp_file("coeffs.csv");
    std::filesystem::remove(path);
    const auto r = run({"coeffs", "--order", "4", "--format", "csv", "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(slurp(path).rfind("index,coefficient\n", 0) == 0);
    CHECK(json::parse(r.out)["contract_ok"] == true);
    CHECK(run({"coeffs", "--out", "/nonexistent-dir/x.json"}).code == 2);
}
