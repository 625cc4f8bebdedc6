#include <doctest.h>

#include <json.hpp>

#include "flagein/cli.hpp"

using namespace flagein;
using flagein::cli::CliRequest;
using flagein::cli::CliResult;
using nlohmann::json;

namespace {

CliResult run_args(const std::vector<std::string>& args) {
    std::string out, err;
    int code = flagein::cli::main_entry(args, out, err);
    return CliResult{code, out, err};
}

const char* kSo12ClosedForm =
    R"({"d1-d2":1,"d1+d2":1,"d1-d3":1,"d1+d3":1,"d2-d3":1,"d2+d3":1,)"
    R"("2d1":0.310102,"2d2":0.310102,"2d3":0.310102})";

}  // namespace

TEST_CASE("describe json") {
    auto res = run_args({"describe", "--family", "C", "--partition", "2,2,2", "--format", "json"});
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    CHECK(j["summands"].size() == 9);
    int dim8 = 0, dim6 = 0;
    for (const auto& s : j["summands"]) {
        if (s["dim"] == 8) ++dim8;
        if (s["dim"] == 6) ++dim6;
    }
    CHECK(dim8 == 6);
    CHECK(dim6 == 3);
    CHECK(j["t_root_type"] == "C_3");
    // byte-identical reparse round trip
    CHECK(json::parse(res.out).dump(2) + "\n" == res.out);
}

TEST_CASE("system text matches the printed full-flag shape") {
    auto res = run_args({"system", "--family", "C", "--partition", "1,1,1", "--format", "text"});
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("8 + 2*(") != std::string::npos);
    CHECK(res.out.find("4 + ") != std::string::npos);
    CHECK(res.out.find("= 32*c*") != std::string::npos);
}

TEST_CASE("system json round-trips and latex renders") {
    auto res = run_args({"system", "--family", "D", "--partition", "2,2", "--format", "json"});
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    CHECK(j["scale_factor"] == "12");
    CHECK(json::parse(res.out).dump(2) + "\n" == res.out);

    auto latex = run_args({"system", "--family", "D", "--partition", "2,2", "--format", "latex"});
    REQUIRE(latex.exit_code == 0);
    CHECK(latex.out.find("\\frac") != std::string::npos);
}

TEST_CASE("verify reports the closed-form metric as Einstein") {
    auto res = run_args({"verify", "--family", "D", "--partition", "2,2,2", "--metric",
                         kSo12ClosedForm, "--format", "json"});
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    CHECK(j["einstein"] == true);
    CHECK(j["residual"].get<double>() < 1e-6);
    CHECK(j["c_estimate"].get<double>() == doctest::Approx(0.384495).epsilon(1e-6));
}

TEST_CASE("verify --oracle cross-checks") {
    auto res = run_args({"verify", "--family", "C", "--partition", "2,1", "--metric",
                         R"({"d1-d2":1.3,"d1+d2":0.8,"2d1":1.1,"2d2":0.6})", "--oracle", "--format",
                         "json"});
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    CHECK(j["oracle_max_rel_dev"].get<double>() < 1e-9);
}

TEST_CASE("solve emits records and classification") {
    auto res = run_args({"solve", "--family", "D", "--partition", "2,2,2", "--ansatz", "g=1,f=1",
                         "--format", "json"});
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    REQUIRE(j["records"].size() == 2);
    CHECK(j["classification"][0][1] == "non-isometric");
    CHECK(j["records"][0]["source"] == "numeric");
    CHECK(json::parse(res.out).dump(2) + "\n" == res.out);
}

TEST_CASE("solve output is byte-identical for a fixed seed") {
    std::vector<std::string> args = {"solve", "--family", "C",      "--partition", "2,1",
                                     "--seed", "7",       "--starts", "32",          "--format",
                                     "json"};
    auto a = run_args(args);
    auto b = run_args(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("invariants classifies two metrics") {
    const char* other =
        R"({"d1-d2":1,"d1+d2":1,"d1-d3":1,"d1+d3":1,"d2-d3":1,"d2+d3":1,)"
        R"("2d1":1.289898,"2d2":1.289898,"2d3":1.289898})";
    auto res = run_args({"invariants", "--family", "D", "--partition", "2,2,2", "--metric",
                         kSo12ClosedForm, "--metric", other, "--format", "json"});
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    REQUIRE(j["metrics"].size() == 2);
    CHECK(j["classification"][0][1] == "non-isometric");
    CHECK(j["metrics"][0]["h_invariant"].get<double>() == doctest::Approx(18.23).epsilon(1e-3));
    CHECK(j["metrics"][1]["h_invariant"].get<double>() == doctest::Approx(18.64).epsilon(1e-3));
}

TEST_CASE("validation failures exit with code 2") {
    CHECK(run_args({"describe", "--family", "E", "--partition", "2,2"}).exit_code == 2);
    CHECK(run_args({"describe", "--family", "D", "--partition", "2,1"}).exit_code == 2);
    CHECK(run_args({"describe", "--family", "C", "--partition", "2,x"}).exit_code == 2);
    CHECK(run_args({"describe", "--family", "C", "--partition", "99999999999999"}).exit_code == 2);
    CHECK(run_args({"verify", "--family", "C", "--partition", "2,1", "--metric", "{not json"})
              .exit_code == 2);
    CHECK(run_args({"verify", "--family", "C", "--partition", "2,1", "--metric",
                    R"({"d1-d2":1})"})
              .exit_code == 2);

    auto res = run_args({"system", "--family", "C", "--partition", "2,1", "--ansatz", "g=1,zz"});
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("position") != std::string::npos);
}

TEST_CASE("ansatz grammar") {
    Flag flag = Flag::from_strings("C", {2, 2});
    PolySystem sys = assemble(flag);
    Ansatz a = flagein::cli::parse_ansatz("g=1,f=1,h=*", sys);
    // three classes: g fixed, f fixed, h merged unfixed
    REQUIRE(a.classes.size() == 3);
    PolySystem red = specialize(sys, a);
    CHECK(red.vars == std::vector<std::string>{"h", "c"});

    // individual key overrides its class clause
    Ansatz b = flagein::cli::parse_ansatz("h=*,2d1=3/2", sys);
    PolySystem red2 = specialize(sys, b);
    bool has_single = false;
    for (const KeyBinding& kb : red2.bindings)
        if (kb.key == "2d1" && kb.value && *kb.value == Rational(3, 2)) has_single = true;
    CHECK(has_single);

    CHECK_THROWS_AS(static_cast<void>(flagein::cli::parse_ansatz("g=0", sys)),
                    std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(flagein::cli::parse_ansatz("g=1,g=2", sys)),
                    std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(flagein::cli::parse_ansatz("q=1", sys)),
                    std::invalid_argument);
}

TEST_CASE("help exits zero") {
    CHECK(run_args({"--help"}).exit_code == 0);
}
