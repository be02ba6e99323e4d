#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

// Integration tests against the installed binary: golden commands, report
// shape, exit codes, and byte stability of exact-field JSON reports.

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(RDN_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::ordered_json run_json(const std::string& args, int expect_code = 0) {
    RunResult r = run_cli(args + " --json");
    CHECK(r.code == expect_code);
    return nlohmann::ordered_json::parse(r.out);
}

} // namespace

TEST_CASE("classification commands and the report envelope") {
    auto j = run_json("eigen classify -g \"(1+x)/(1-x)\" -f \"-x\"");
    CHECK(j["command"] == "eigen classify");
    CHECK(j["field"] == "rat");
    CHECK(j["deg"] == 16);
    CHECK(j["result"]["verdict"] == "Full");
    CHECK(j["result"]["witnesses"].size() == 17);
    CHECK(j["elapsed_ms"] == 0);
    CHECK(j["inputs"].size() == 2);

    auto triv = run_json("eigen classify -g 1 -f x");
    CHECK(triv["result"]["verdict"] == "Full");

    auto ak = run_json("eigen classify -g \"1/(1+x)^2\" -f \"x+x^2\"");
    CHECK(ak["result"]["verdict"] == "Level");
    CHECK(ak["result"]["level"] == 2);

    auto pas = run_json("eigen classify -g pascal_g -f pascal_f");
    CHECK(pas["result"]["verdict"] == "NoEigenvectors");

    // envelope carries exactly the documented keys, in order
    std::vector<std::string> keys;
    for (auto it = pas.begin(); it != pas.end(); ++it) keys.push_back(it.key());
    std::vector<std::string> want = {"command", "field",    "deg",       "inputs",
                                     "result",  "evidence", "elapsed_ms"};
    CHECK(keys == want);
}

TEST_CASE("exact-field JSON reports are byte-stable across runs") {
    const char* cmds[] = {
        "eigen classify -g pascal_g -f pascal_f --json",
        "riordan matrix -g aigner_g -f \"x*aigner_g\" --n 6 --json",
        "stab enumerate --h \"x^2+x^3\" -g 4 --json",
        "series eval -g \"(1+x-sqrt(1-2*x-3*x^2))/(2*x)\" --json",
    };
    for (const char* c : cmds) {
        auto a = run_cli(c);
        auto b = run_cli(c);
        CHECK(a.code == b.code);
        CHECK_MESSAGE(a.out == b.out, "unstable output for: ", c);
    }
}

TEST_CASE("svd command reproduces the directed-animal singular values") {
    auto j = run_json("pseudo svd -g aigner_g -f \"x*aigner_g\" --n 6");
    auto sig = j["result"]["sigma"];
    REQUIRE(sig.size() == 6);
    double expect[6] = {25.976, 2.2139, 1.2161, 0.82230, 0.45169, 0.038497};
    for (int i = 0; i < 6; ++i)
        CHECK(double(sig[size_t(i)]) == doctest::Approx(expect[i]).epsilon(5e-5));
    CHECK(j["result"]["reciprocal_pairs"]["ok"] == true);
    CHECK(j["result"]["structure_ok"] == true);
}

TEST_CASE("riordan commands") {
    auto e = run_json("riordan entry -g pascal_g -f pascal_f -i 6 -j 2");
    CHECK(e["result"]["value"] == "15");

    auto m = run_json("riordan mul -g pascal_g -f pascal_f --g2 pascal_g --f2 pascal_f");
    CHECK(m["result"]["g"][0] == "1");
    CHECK(m["result"]["g"][3] == "8"); // 1/(1-2x)

    auto inv = run_json("riordan inv -g pascal_g -f pascal_f");
    CHECK(inv["result"]["g"][1] == "-1");

    auto dec = run_json("riordan decompose -g pascal_g -f pascal_f --n 6");
    CHECK(dec["result"]["product_matches"] == true);
}

TEST_CASE("series and stab commands") {
    auto inv = run_json("series invert -f \"x/(1+x)\"");
    CHECK(inv["result"]["series"][1] == "1");
    CHECK(inv["result"]["series"][2] == "1"); // x/(1-x)

    auto root = run_json("series root -g \"1-2*x-3*x^2\" --n 2");
    CHECK(root["result"]["series"][0] == "1");
    CHECK(root["result"]["series"][1] == "-1");

    auto st = run_json("stab find --h \"1/(1-x)\" -g \"1+x^2\"");
    auto f = st["result"]["solutions"][0]["f"];
    CHECK(f[1] == "1");
    CHECK(f[2] == "-1");
    CHECK(f[3] == "1"); // F = x - x^2 + x^3

    auto mono = run_json("stab monomial --h \"x^2\" -g \"(1+x)^2\"");
    CHECK(mono["result"]["count"] == 2);
}

TEST_CASE("field and degree flags") {
    auto c = run_json("series eval -g \"1/(1-x)\" --field c64 --deg 4");
    CHECK(c["field"] == "c64");
    CHECK(double(c["result"]["series"][3]["re"]) == doctest::Approx(1.0));

    auto d = run_json("series eval -g x --deg 3");
    CHECK(d["result"]["series"].size() == 4);
}

TEST_CASE("error mapping and exit codes") {
    auto r1 = run_cli("series eval -g \"1+(\" --json");
    CHECK(r1.code == 1);
    auto j1 = nlohmann::json::parse(r1.out);
    CHECK(j1["result"]["error"] == "SyntaxError");

    auto r2 = run_cli("eigen vector -g pascal_g -f pascal_f --level 0 --json");
    CHECK(r2.code == 1);
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2["result"]["error"] == "Inconsistent");

    auto r3 = run_cli("eigen diagonalize -g pascal_g -f pascal_f --json");
    CHECK(r3.code == 1);
    CHECK(nlohmann::json::parse(r3.out)["result"]["error"] == "NotDiagonalizable");

    auto r4 = run_cli("series eval -g \"sqrt(2+x)\" --json");
    CHECK(r4.code == 1);
    CHECK(nlohmann::json::parse(r4.out)["result"]["error"] == "ConstantTermNotOne");

    CHECK(run_cli("nonsense").code == 2);
    CHECK(run_cli("eigen classify --deg 0 -g 1 -f x").code == 2);
    CHECK(run_cli("--help").code == 0);
    // missing required expressions are usage errors, not domain errors
    CHECK(run_cli("eigen classify").code == 2);
    CHECK(run_cli("stab find -g 1").code == 2);
    CHECK(run_cli("riordan mul -g 1 -f x").code == 2);
}
