#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// End-to-end runs of the built CLI binary: exit-code contract, manifest
// completeness, determinism of byte output.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "zenerwave/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
};

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "zw_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const fs::path& spec, const fs::path& out, const std::string& extra = "") {
    std::ostringstream cmd;
    cmd << ZW_CLI_PATH << " --spec " << spec << " --out " << out << " --quiet " << extra;
    const int rc = std::system(cmd.str().c_str());
    return {WEXITSTATUS(rc)};
}

void write_spec(const fs::path& path, const json& j) {
    std::ofstream f(path);
    f << j.dump(2);
}

json case1_spec(const std::string& command) {
    return json{{"command", command},
                {"params",
                 {{"a1", 1.0},
                  {"a2", 20.0},
                  {"b1", 0.1},
                  {"b2", 2.0},
                  {"alpha", 0.5},
                  {"beta", 0.1},
                  {"rod_length", "inf"}}}};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cmd_check: exit codes 0 / 2 / 1") {
    const auto dir = scratch_dir("check");
    write_spec(dir / "ok.json", case1_spec("check"));
    CHECK(run_cli(dir / "ok.json", dir / "ok_out").exit_code == 0);
    const json rep = json::parse(slurp(dir / "ok_out" / "report.json"));
    CHECK(rep["verdict"] == "AdmissibleStrict");

    auto bad = case1_spec("check");
    bad["params"]["b1"] = 5.0;  // td-1 violated (b2 stays 2)
    write_spec(dir / "bad.json", bad);
    CHECK(run_cli(dir / "bad.json", dir / "bad_out").exit_code == 2);
    const json rep2 = json::parse(slurp(dir / "bad_out" / "report.json"));
    CHECK(rep2["verdict"] == "Inadmissible");
    CHECK(rep2["td1_residual"].get<double>() == doctest::Approx(98.0));

    auto broken = case1_spec("check");
    broken["params"].erase("alpha");
    write_spec(dir / "broken.json", broken);
    CHECK(run_cli(dir / "broken.json", dir / "broken_out").exit_code == 1);

    std::ofstream(dir / "syntax.json") << "{ not json";
    CHECK(run_cli(dir / "syntax.json", dir / "syntax_out").exit_code == 1);
}

TEST_CASE("cmd_check: strict flag is honored") {
    const auto dir = scratch_dir("strict");
    // Margins exactly zero: b sized to the ctg restriction line.
    auto spec = case1_spec("check");
    // a1 = b1 * rhs and td-1 kept: margins 0 -> Admissible but not strict.
    const double rhs = 2.04915126902505297;
    spec["params"]["b1"] = 1.0 / rhs;
    spec["params"]["b2"] = 20.0 / rhs;
    write_spec(dir / "edge.json", spec);
    CHECK(run_cli(dir / "edge.json", dir / "lax").exit_code == 0);
    CHECK(run_cli(dir / "edge.json", dir / "strict", "--strict").exit_code == 2);
}

TEST_CASE("cmd_modulus: CSV column sanity and winding certificate") {
    const auto dir = scratch_dir("modulus");
    auto spec = case1_spec("modulus");
    spec["modulus"] = {{"omega_min", 1e-2}, {"omega_max", 1e2}, {"n", 64},
                       {"winding", {{"epsilon", 1e-3}, {"R", 1e3}, {"samples", 2000}}}};
    write_spec(dir / "spec.json", spec);
    REQUIRE(run_cli(dir / "spec.json", dir / "out").exit_code == 0);

    const std::string csv = slurp(dir / "out" / "modulus.csv");
    CHECK(csv.rfind("omega,re_E,im_E,re_M,im_M\n", 0) == 0);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');  // omega
        std::getline(ls, cell, ',');  // re_E
        std::getline(ls, cell, ',');  // im_E
        CHECK(std::stod(cell) >= -1e-12);  // loss stays nonnegative
    }
    CHECK(rows == 64);

    const json cert = json::parse(slurp(dir / "out" / "winding.json"));
    CHECK(cert["winding"].get<long>() == 0);
    CHECK(cert["valid"].get<bool>());
}

TEST_CASE("cmd_kernel and manifest completeness") {
    const auto dir = scratch_dir("kernel");
    auto spec = case1_spec("kernel");
    spec["kernel"] = {{"xs", {0.5, 1.0}}, {"ts", {0.5, 1.0, 1.5}}};
    spec["quadrature"] = {{"abs_tol", 1e-6}};
    write_spec(dir / "spec.json", spec);
    REQUIRE(run_cli(dir / "spec.json", dir / "out").exit_code == 0);

    const json manifest = json::parse(slurp(dir / "out" / "manifest.json"));
    CHECK(manifest["library_version"] == "0.1.0");
    CHECK(manifest["command"] == "kernel");
    REQUIRE(manifest["outputs"].is_array());
    bool found_csv = false;
    for (const auto& f : manifest["outputs"]) {
        const std::string name = f["name"].get<std::string>();
        const fs::path path = dir / "out" / name;
        REQUIRE(fs::exists(path));
        const std::string content = slurp(path);
        CHECK(f["bytes"].get<std::size_t>() == content.size());
        // digest matches content
        CHECK(f["fnv1a64"].get<std::string>() == zenerwave::digest_hex(content));
        found_csv = found_csv || name == "kernel.csv";
    }
    CHECK(found_csv);
}

TEST_CASE("determinism: identical spec gives byte-identical outputs") {
    const auto dir = scratch_dir("determinism");
    auto spec = case1_spec("simulate");
    spec["simulate"] = {{"signal", {{"kind", "dirac"}}},
                        {"xs", {0.5, 1.0, 1.5}},
                        {"ts", {0.5, 1.0}}};
    spec["quadrature"] = {{"abs_tol", 1e-6}};
    spec["seed"] = 42;
    write_spec(dir / "spec.json", spec);
    REQUIRE(run_cli(dir / "spec.json", dir / "a").exit_code == 0);
    REQUIRE(run_cli(dir / "spec.json", dir / "b").exit_code == 0);
    CHECK(slurp(dir / "a" / "field.csv") == slurp(dir / "b" / "field.csv"));
    CHECK(slurp(dir / "a" / "manifest.json") == slurp(dir / "b" / "manifest.json"));
}

TEST_CASE("cmd_simulate: elastic Heaviside step and x = 0 row") {
    const auto dir = scratch_dir("elastic");
    auto spec = case1_spec("simulate");
    spec["params"]["a1"] = 1.0;
    spec["params"]["a2"] = 1.0;
    spec["params"]["b1"] = 0.1;
    spec["params"]["b2"] = 0.1;
    spec["simulate"] = {{"signal", {{"kind", "heaviside"}}},
                        {"xs", {0.0, 0.5, 1.0}},
                        {"ts", {0.25, 0.75, 1.25}}};
    write_spec(dir / "spec.json", spec);
    REQUIRE(run_cli(dir / "spec.json", dir / "out").exit_code == 0);
    // parse u(x,t) back and check the step at t = x
    std::istringstream in(slurp(dir / "out" / "field.csv"));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string xs, ts, us;
        std::getline(ls, xs, ',');
        std::getline(ls, ts, ',');
        std::getline(ls, us, ',');
        const double x = std::stod(xs), t = std::stod(ts), u = std::stod(us);
        const double expect = (x == 0.0) ? 1.0 : (t > x ? 1.0 : (t == x ? 0.5 : 0.0));
        CHECK(u == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("cmd_simulate: numeric failure maps to exit 3") {
    const auto dir = scratch_dir("numfail");
    auto spec = case1_spec("kernel");
    // x far too small for the envelope cutoff with a tight cap.
    spec["kernel"] = {{"xs", {1e-5}}, {"ts", {1.0}}};
    spec["quadrature"] = {{"tau_max_cap", 1e3}};
    write_spec(dir / "spec.json", spec);
    CHECK(run_cli(dir / "spec.json", dir / "out").exit_code == 3);
}
