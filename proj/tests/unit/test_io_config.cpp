#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lsc/bethe.hpp"
#include "lsc/config.hpp"
#include "lsc/errors.hpp"
#include "lsc/run.hpp"
#include "lsc/serialize.hpp"

using namespace lsc;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("double formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5e17}) {
        CHECK(std::stod(io::format_double(v)) == v);
    }
}

TEST_CASE("csv and json serialization of a Bethe state") {
    auto qn = bethe::ground_state_quantum_numbers(6, 2);
    auto st = bethe::solve_bethe(bethe::ModelParams::holomorphic_qcd(6, 2), qn);
    const std::string csv = io::bethe_state_csv(st);
    CHECK(csv.find("index,quantum_number,root") == 0);
    const std::string js = io::bethe_state_json(st);
    CHECK(js.find("\"L\": 6") != std::string::npos);
    CHECK(js.find("\"roots\"") != std::string::npos);
}

TEST_CASE("config parsing is strict") {
    SUBCASE("unknown keys are rejected with a field path") {
        try {
            config::parse_bethe(R"({"L": 8, "N": 2, "bogus": 1})");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("bethe.bogus") != std::string::npos);
        }
    }
    SUBCASE("range violations name the offending field") {
        try {
            config::parse_central_charge(R"({"h": -0.5})");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("central_charge.h") != std::string::npos);
        }
        CHECK_THROWS_AS(config::parse_quench(R"({"L": 7})"), ConfigError);
        CHECK_THROWS_AS(config::parse_thermo(R"({"h": 0.5, "q": 1.0})"), ConfigError);
        CHECK_THROWS_AS(config::parse_thermo(R"({})"), ConfigError);
        CHECK_THROWS_AS(config::parse_dis(R"({"x": 2.0})"), ConfigError);
    }
    SUBCASE("valid configs parse to the documented defaults") {
        const auto c = config::parse_central_charge(R"({"h": 0.5})");
        CHECK(c.l_list.size() == 5);
        CHECK(c.quantization_correction);
        const auto q = config::parse_quench(R"({"L": 16})");
        CHECK(q.geometry == "open");
        CHECK(q.model == "xxx");
        const auto o = config::parse_osee(R"({"L": 10, "operator": "sx"})");
        CHECK(o.op == "sx");
    }
    SUBCASE("backend-specific limits") {
        CHECK_THROWS_AS(config::parse_quench(R"({"L": 16, "model": "s-minus1"})"),
                        ConfigError);
        CHECK_NOTHROW(config::parse_quench(R"({"L": 6, "model": "s-minus1", "n_max": 3})"));
        CHECK_THROWS_AS(config::parse_osee(R"({"L": 10, "operator": "sy"})"), ConfigError);
    }
}

TEST_CASE("run_subcommand maps failures to exit codes") {
    const std::string out_dir =
        (std::filesystem::temp_directory_path() / "lsc_run_test").string();
    SUBCASE("invalid config value gives exit 2 and the field path") {
        const auto cfg = write_temp("lsc_bad.json", R"({"h": -0.5})");
        const auto r = run::run_subcommand("central-charge", cfg, out_dir);
        CHECK(r.exit_code == run::exit_config);
        CHECK(r.message.find("central_charge.h") != std::string::npos);
    }
    SUBCASE("unknown subcommand gives exit 2") {
        const auto cfg = write_temp("lsc_empty.json", R"({})");
        const auto r = run::run_subcommand("frobnicate", cfg, out_dir);
        CHECK(r.exit_code == run::exit_config);
    }
    SUBCASE("missing config file gives exit 2") {
        const auto r = run::run_subcommand("dis", "/nonexistent/x.json", out_dir);
        CHECK(r.exit_code == run::exit_config);
    }
}

TEST_CASE("dis subcommand is deterministic byte for byte") {
    const auto cfg = write_temp(
        "lsc_dis.json", R"({"m": 0.938, "x": 0.01, "Q": 1.0, "c_source": "value", "c": 1.0})");
    const std::string out1 =
        (std::filesystem::temp_directory_path() / "lsc_det1").string();
    const std::string out2 =
        (std::filesystem::temp_directory_path() / "lsc_det2").string();
    const auto r1 = run::run_subcommand("dis", cfg, out1);
    const auto r2 = run::run_subcommand("dis", cfg, out2);
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    for (const char* f : {"dis.json", "dis_S_of_x.csv", "dis_S_of_t.csv"}) {
        CHECK(slurp(out1 + "/" + f) == slurp(out2 + "/" + f));
    }
}

TEST_CASE("atomic write leaves no partial files") {
    const std::string path =
        (std::filesystem::temp_directory_path() / "lsc_atomic.txt").string();
    io::atomic_write(path, "payload\n");
    CHECK(slurp(path) == "payload\n");
    CHECK(!std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove(path);
}

TEST_CASE("chain COO export round-trips the sparse structure") {
    const auto h = chain::heisenberg_proxy(3, false);
    const std::string coo = io::chain_coo(h);
    // 8x8 chain with two bonds: diagonal plus flip entries, all real.
    std::istringstream is(coo);
    std::int64_t r, c;
    double re, im;
    int lines = 0;
    const auto hd = h.dense();
    while (is >> r >> c >> re >> im) {
        CHECK(im == 0.0);
        CHECK(hd(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) ==
              doctest::Approx(re).epsilon(1e-15));
        ++lines;
    }
    CHECK(lines > 0);
}
