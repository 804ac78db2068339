#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qf2/script.hpp"

#include "json.hpp"

using namespace qf2;

namespace {

ExecResult run(const std::string& text, ExecOptions opts = {}) {
    return run_script(text, opts);
}

} // namespace

TEST_CASE("parse errors carry positions and exit code 1") {
    CHECK(run("let X = \n").exit_code == 1);
    CHECK(run("bogus Q[1,1]\n").exit_code == 1);        // unknown verb
    CHECK(run("arf Q[1,1\n").exit_code == 1);           // missing bracket
    CHECK(run("arf [1, t)\n").exit_code == 1);          // symbol where form expected
    CHECK(run("e2 undefined_name\n").exit_code == 1);   // unbound name
    CHECK(run("let t = GF(2)(t)\n").exit_code == 1);    // reserved name
    CHECK(run("let F = GF(3)(t)\n").exit_code == 1);    // not a power of two
    CHECK_THROWS_AS((void)parse_script("let A = Q[1,"), script_error);
}

TEST_CASE("print round-trips canonical scripts") {
    std::string canon = "let K = GF(2)(t).adj_sqrt(t)\n"
                        "let phi = perp(Q[1, sqrt#1], scale(t, pf<<t, 1 + t; 1/t]]))\n"
                        "let s = [t*sqrt#1, 1 + t)\n"
                        "arf phi\n"
                        "eq s, s\n"
                        "verify norm-rewrite --trials 3 --seed 5\n";
    Script s1 = parse_script(canon);
    CHECK(print_script(s1) == canon);

    // messy input reprints canonically, and that fixpoints
    std::string messy = "let F=GF(4)(t);; arf Q[g , g^2+t ]\n";
    std::string once = print_script(parse_script(messy));
    CHECK(print_script(parse_script(once)) == once);
}

TEST_CASE("frozen command outputs over the ground field") {
    ExecResult r = run("arf Q[1,1]\n"
                       "inv [1/t, 1+t)\n"
                       "split [1/t, 1+t)\n"
                       "split [1/t, t)\n"
                       "e2 pf<<t; 1]]\n"
                       "hyp perp(Q[1,1], Q[1,1])\n"
                       "eq Q[t, 1/t], Q[t, 1/t]\n");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "nontrivial (rep 1)\n"
                      "{t: 1, t+1: 1, inf: 0}\n"
                      "nonsplit\n"
                      "split\n"
                      "{[1, t)}\n"
                      "yes\n"
                      "yes\n");
}

TEST_CASE("tower commands: transfer, frob, descend") {
    ExecResult r = run("let K = GF(2)(t).adj_sqrt(t)\n"
                       "transfer bil<sqrt#1>\n"
                       "transfer bil<1 + sqrt#1>\n"
                       "frob [1/t * sqrt#1, 1 + sqrt#1)\n"
                       "descend Q[1, sqrt#1]\n");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "<1, t>\n"
                      "<1, t+1>\n"
                      "{[1/t, t+1)}\n"
                      "[1, t]\n");

    // quadratic transfer doubles the dimension and lands over F
    ExecResult r2 = run("let K = GF(2)(t).adj_sqrt(t)\n"
                       "let tphi = Q[1, sqrt#1]\n"
                       "hyp perp(Q[0,0], Q[0,0])\n"
                       "transfer tphi\n");
    CHECK(r2.exit_code == 0);
}

TEST_CASE("library errors exit with code 2") {
    // Frobenius needs a proper extension step
    ExecResult r = run("frob [t, 1+t)\n");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error (command 1)") != std::string::npos);

    // a command after the failing one is not executed
    ExecResult r2 = run("frob [t, 1+t)\nsplit [t, t+1)\n");
    CHECK(r2.output.find("nonsplit") == std::string::npos);
}

TEST_CASE("verify command and JSON schema") {
    ExecOptions jopts;
    jopts.json = true;
    std::string text = "verify split-lift-planted --trials 4 --seed 11\nsplit [1/t, t)\n";
    ExecResult a = run(text, jopts);
    ExecResult b = run(text, jopts);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output); // byte-identical for a fixed seed

    nlohmann::json doc = nlohmann::json::parse(a.output);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 2);
    const auto& rep = doc[0];
    CHECK(rep["statement"] == "split-lift-planted");
    CHECK(rep["seed"] == 11);
    REQUIRE(rep["trials"].is_array());
    REQUIRE(rep["trials"].size() == 4);
    for (const auto& t : rep["trials"]) {
        CHECK(t.contains("instance"));
        CHECK(t.contains("verdict"));
        CHECK(t.contains("certificates"));
        CHECK(t.contains("millis"));
        CHECK(t["verdict"] == "verified");
    }
    CHECK(doc[1]["cmd"] == "split");
    CHECK(doc[1]["result"] == "split");

    // human output carries the same verdict summary
    ExecResult h = run(text);
    CHECK(h.output.find("verified=4 refuted=0 inconclusive=0") != std::string::npos);

    // unknown statement ids are library errors
    CHECK(run("verify no-such-suite --trials 1\n").exit_code == 2);
}

TEST_CASE("timeout guard") {
    ExecOptions opts;
    opts.timeout_ms = 0;
    ExecResult r = run("split [t, t+1)\nsplit [t, t+1)\n", opts);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("timeout") != std::string::npos);
}

TEST_CASE("element language: towers, generators, powers") {
    // mismatch of generator kind against the tower step
    CHECK(run("let K = GF(2)(t).adj_as(t)\narf Q[1, sqrt#1]\n").exit_code == 2);
    // generator index out of range
    CHECK(run("let K = GF(2)(t).adj_sqrt(t)\narf Q[1, sqrt#2]\n").exit_code == 2);
    // g only exists for k > 1
    CHECK(run("arf Q[g, 1]\n").exit_code == 2);

    // arithmetic: (sqrt#1)^2 = t, so [1, t + sqrt#1^2] is split
    ExecResult r = run("let K = GF(2)(t).adj_sqrt(t)\nhyp Q[1, t + sqrt#1^2]\n");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "yes\n");

    // GF(4): g^2 + g = 1, so [1, g^2 + g] is a hyperbolic block
    ExecResult r2 = run("let F = GF(4)(t)\nhyp Q[1, 1 + g^2 + g]\n");
    CHECK(r2.exit_code == 0);
    CHECK(r2.output == "yes\n");

    // let-bound elements embed upward into later towers
    ExecResult r3 = run("let F = GF(2)(t)\nlet b = 1 + t\nlet K = GF(2)(t).adj_sqrt(t)\n"
                        "split [b, t)\n");
    CHECK(r3.exit_code == 0);
}
