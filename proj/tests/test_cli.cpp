#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "pb/cli.hpp"

using namespace pb;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("block emits the series and the trivial order-0 coefficient") {
    Run r = run({"block", "--c", "1", "--delta", "1/3", "--order", "0"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["base"] == "1/3");
    REQUIRE(j["terms"].size() == 1);
    CHECK(j["terms"][0]["coeff"] == "1");
}

TEST_CASE("block at order 1 contains 1/(2 delta)") {
    Run r = run({"block", "--c", "1", "--delta", "1/3", "--order", "1"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["terms"].size() == 2);
    CHECK(j["terms"][1]["coeff"] == "3/2");
}

TEST_CASE("nsr-block runs in both sectors") {
    for (std::string sec : {"ns", "r"}) {
        Run r = run({"nsr-block", "--sector", sec, "--cnsr", "1", "--p", "1/5", "--order", "2"});
        REQUIRE(r.code == 0);
        json j = json::parse(r.out);
        CHECK(j["terms"].size() >= 3);
    }
}

TEST_CASE("tau output is normalized and exact") {
    Run r = run({"tau", "--sigma", "3/10", "--stilde", "1", "--order", "2"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["combined"][0]["exponent"] == "9/100");
    CHECK(j["combined"][0]["coeff"] == "1");
    // exact scalars are strings, never floats
    for (const auto& t : j["combined"]) CHECK(t["coeff"].is_string());
}

TEST_CASE("tau --eval-at appends double-precision evaluations") {
    Run r = run({"tau", "--sigma", "3/10", "--order", "6", "--eval-at", "0.01", "0.02"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["evaluations"].size() == 2);
    // tau is real on this slice (it changes sign at a zero near z ~ 8e-4)
    CHECK(j["evaluations"][0]["re"].get<double>() != 0.0);
    CHECK(std::abs(j["evaluations"][0]["im"].get<double>()) < 1e-12);
}

TEST_CASE("verify subcommands pass and respect formats") {
    Run r = run({"verify", "toda-c1", "--sigma", "3/10", "--order", "3"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["residuals"].empty());
    CHECK(j["residual_exponents"].empty());

    Run c = run({"--format", "csv", "verify", "hook-bn", "--n-max", "3"});
    REQUIRE(c.code == 0);
    CHECK(c.out.find("field,value") == 0);
    CHECK(c.out.find("ok,true") != std::string::npos);
}

TEST_CASE("verify bridge and blockquarter") {
    CHECK(run({"verify", "bridge", "--sigma", "3/10", "--two-n-max", "4"}).code == 0);
    CHECK(run({"verify", "blockquarter", "--sign", "-", "--order", "4"}).code == 0);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"verify", "tau3"}).code == 2);                        // missing --sigma
    CHECK(run({"verify", "tau3", "--sigma", "1/0"}).code == 2);      // malformed rational
    CHECK(run({"verify", "tau3", "--sigma", "1/2"}).code == 2);      // resonant sigma
    CHECK(run({"nope"}).code == 2);                                  // unknown subcommand
    CHECK(run({"verify", "blockquarter", "--sign", "x"}).code == 2); // bad sign
    Run r = run({"verify", "tau3", "--sigma", "1/2"});
    CHECK(r.err.find("resonant") != std::string::npos);
}

TEST_CASE("help exits 0") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"verify", "--help"}).code == 0);
}

TEST_CASE("ode subcommands") {
    Run a = run({"ode", "algebraic", "--sign", "+"});
    REQUIRE(a.code == 0);
    json j = json::parse(a.out);
    CHECK(j["metrics"]["w_dev"].get<double>() <= 1e-10);

    Run c = run({"ode", "compare", "--sigma", "3/10", "--z0", "0.01", "--z1", "0.1",
                 "--order", "10", "--window", "3"});
    CHECK(c.code == 0);
}

TEST_CASE("quick suite passes and the injected sign error is caught and localized") {
    Run ok = run({"suite", "--quick"});
    REQUIRE(ok.code == 0);
    json j = json::parse(ok.out);
    CHECK(j["ok"] == true);

    Run bad = run({"suite", "--quick", "--inject-sign-error"});
    REQUIRE(bad.code == 1);
    json jb = json::parse(bad.out);
    CHECK(jb["ok"] == false);
    int failing = 0;
    std::string which;
    for (const auto& rep : jb["reports"]) {
        if (rep["ok"] == false) {
            ++failing;
            which = rep["check"].get<std::string>();
            CHECK(!rep["residual_exponents"].empty());
        }
    }
    CHECK(failing == 1);
    CHECK(which == "blowup-ns");
}

TEST_CASE("PB_THREADS is validated and does not change output") {
    setenv("PB_THREADS", "banana", 1);
    CHECK(run({"verify", "hook-bn", "--n-max", "2"}).code == 2);
    setenv("PB_THREADS", "0", 1);
    CHECK(run({"verify", "hook-bn", "--n-max", "2"}).code == 2);

    auto strip_seconds = [](std::string s) {
        json j = json::parse(s);
        j.erase("seconds");
        return j.dump();
    };
    setenv("PB_THREADS", "1", 1);
    Run one = run({"verify", "toda-c1", "--sigma", "3/10", "--order", "3"});
    setenv("PB_THREADS", "8", 1);
    Run eight = run({"verify", "toda-c1", "--sigma", "3/10", "--order", "3"});
    unsetenv("PB_THREADS");
    REQUIRE(one.code == 0);
    REQUIRE(eight.code == 0);
    CHECK(strip_seconds(one.out) == strip_seconds(eight.out));
}

TEST_CASE("ln prints exact values") {
    Run r = run({"ln", "--sector", "ns", "--b", "2", "--p", "3/7", "--n", "0"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["lsq"] == "1");
}
