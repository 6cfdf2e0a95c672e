#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(CCF_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(CCF_SAMPLES) + "/" + name; }

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

std::string write_tmp(const std::string& name, const std::string& text) {
    std::string path = "/tmp/ccf_cli_test_" + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("cumulants free on Catalan moments") {
    Run r = run("cumulants free " + sample("catalan.json"));
    REQUIRE(r.code == 0);
    auto t = json_of(r)["cumulants"]["free"];
    CHECK(t.size() == 10);
    for (auto& [w, v] : t.items()) CHECK(v == (w == "a,a" ? "1" : "0"));
}

TEST_CASE("convolve free add on symmetric Bernoulli files gives central binomials") {
    Run r = run("convolve free add " + sample("bernoulli.json") + " " + sample("bernoulli.json"));
    REQUIRE(r.code == 0);
    auto j = json_of(r);
    CHECK(j["result"]["psi"] == nlohmann::json({"1", "0", "2", "0", "6", "0", "20", "0", "70", "0", "252"}));
    for (auto& c : j["certificates"]) CHECK(c["holds"] == true);
}

TEST_CASE("convolve csv rows") {
    Run r = run("--order 4 --format csv convolve boolean add " + sample("bernoulli.json") + " " + sample("bernoulli.json"));
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("kind,name,index,value\nmoment,phi,0,1\nmoment,phi,1,0\nmoment,phi,2,2\n", 0) == 0);
}

TEST_CASE("jointcheck on consistent marginals") {
    Run r = run("--order 6 jointcheck cyclic_conditional " + sample("marginal_a.json") + " " + sample("marginal_b.json"));
    REQUIRE(r.code == 0);
    std::string s = json_of(r)["summary"];
    CHECK(s.find(" 0 violations") != std::string::npos);
    Run dup = run("--order 4 jointcheck free " + sample("marginal_a.json") + " " + sample("marginal_a.json"));
    CHECK(dup.code == 2);
}

TEST_CASE("graph products") {
    Run f = run("--order 8 graph free " + sample("k2.json") + " " + sample("k2.json"));
    REQUIRE(f.code == 0);
    CHECK(json_of(f)["root_moments"] == nlohmann::json({"1", "0", "2", "0", "6", "0", "20", "0", "70"}));
    Run s = run("--order 6 graph star " + sample("k2.json") + " " + sample("k2.json"));
    CHECK(json_of(s)["root_moments"] == nlohmann::json({"1", "0", "2", "0", "4", "0", "8"}));
    Run c = run("--order 6 graph conditional " + sample("p3.json") + " " + sample("c3.json") + " " + sample("point.json") +
                " " + sample("point.json"));
    CHECK(c.code == 0);
    // a non-point G_1 breaks traciality: verification failures exit with 1
    Run bad = run("--order 6 graph conditional " + sample("p3.json") + " " + sample("k2.json") + " " + sample("k2.json") +
                  " " + sample("point.json"));
    CHECK(bad.code == 1);
    CHECK(json_of(bad)["checks"][0]["holds"] == true);
}

TEST_CASE("limits") {
    Run r = run("--order 8 limits cyclic_boolean_clt --param gamma2=2 --param omega_unit=0");
    REQUIRE(r.code == 0);
    auto j = json_of(r);
    CHECK(j["moments"] == nlohmann::json({"0", "0", "2", "0", "2", "0", "2", "0", "2"}));
    CHECK(j["convergence"]["rows"].size() == 3 * 7);

    Run csv = run("--order 6 --format csv limits free_clt --n 4,16");
    REQUIRE(csv.code == 0);
    CHECK(csv.out.find("\nN,k,gap\n4,0,0\n") != std::string::npos);
    CHECK(run("limits free_clt --n 4,8").code == 2);
    CHECK(run("limits cyclic_boolean_poisson_variant --param lambda_omega=1").code == 1);
    CHECK(run("limits cyclic_conditional_poisson --param omega_unit=2").code == 0);
}

TEST_CASE("transform") {
    Run r = run("--order 6 transform R " + sample("catalan.json"));
    REQUIRE(r.code == 0);
    CHECK(json_of(r)["coefficients"] == nlohmann::json({"0", "0", "1", "0", "0", "0", "0"}));
    CHECK(run("transform nope " + sample("catalan.json")).code == 2);
}

TEST_CASE("input errors exit with 2") {
    CHECK(run("--order 15 cumulants free " + sample("catalan.json")).code == 2);
    CHECK(run("cumulants free /nonexistent.json").code == 2);
    CHECK(run("cumulants free " + write_tmp("bad.json", "{\"alphabet\": [\"a\"],\n \"unit\": 1,\n \"moments\": {")).code == 2);
    CHECK(run("cumulants nosuch " + sample("catalan.json")).code == 2);
    CHECK(run("convolve free add " + sample("catalan.json")).code == 2);
    CHECK(run("convolve conditional add " + sample("catalan.json") + " " + sample("catalan.json")).code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("output is deterministic and --out writes the same bytes") {
    std::string args = "--order 6 --seed 9 limits cyclic_conditional_clt --param omega_unit=1/2";
    Run a = run(args), b = run(args);
    CHECK(a.out == b.out);
    std::string path = "/tmp/ccf_cli_test_out.json";
    REQUIRE(run(args + " --out " + path).code == 0);
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text == a.out);
    Run c = run("--order 6 --seed 10 limits cyclic_conditional_clt --param omega_unit=1/2");
    CHECK(json_of(c)["moments"] == json_of(a)["moments"]);
}
