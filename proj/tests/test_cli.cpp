#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "shocklab/common.hpp"
#include "shocklab/config.hpp"
#include "shocklab/expr.hpp"
#include "shocklab/profiles.hpp"
#include "shocklab/runner.hpp"

using namespace shocklab;

TEST_CASE("minimal config parses with defaults available") {
    RunConfig cfg = parse_config("psi0 = zero\npsi0_dot = poly_bump:1,4\n", "john.solve");
    CHECK(cfg.get_string("psi0", "") == "zero");
    CHECK(cfg.get_double("U0", 0.9) == 0.9);          // default fills in
    CHECK(cfg.get_long("n_u", 256) == 256);
    CHECK(cfg.get_double("mu_stop", 0.01) == 0.01);
}

TEST_CASE("unknown keys are rejected by name") {
    try {
        parse_config("nu_u = 128\n", "john.solve");
        FAIL("expected UnknownKey");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("nu_u") != std::string::npos);
    }
    RunConfig cfg = parse_config("", "john.solve");
    CHECK_THROWS_AS(apply_override(cfg, "not_a_key", "1"), ConfigError);
}

TEST_CASE("syntax errors carry the line") {
    try {
        parse_config("n_u = 4\nthis line has no equals\n", "john.solve");
        FAIL("expected ParseError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("type errors name the key") {
    RunConfig cfg = parse_config("n_u = lots\n", "john.solve");
    CHECK_THROWS_AS((void)cfg.get_long("n_u", 1), ConfigError);
}

TEST_CASE("serialize round-trips") {
    RunConfig cfg =
        parse_config("psi0 = zero\nn_u = 96\nkappa = 0.5\nseed = 7\n", "john.solve");
    RunConfig back = parse_config(cfg.serialize(), "john.solve");
    CHECK(back.kv == cfg.kv);
    CHECK(back.seed == cfg.seed);
}

TEST_CASE("expression grammar matches the builtin bump") {
    Expr e = Expr::parse("0.05*exp(-1/(1-(r/0.5)^2))");
    Profile1D builtin = cinf_bump_profile(0.05, 0.5);
    for (int i = 0; i <= 49; ++i) {
        double r = 0.01 * i;
        CHECK(e.eval(r) == doctest::Approx(builtin.value(r)).epsilon(1e-12));
    }
    // same through the profile spec route, clamped outside the support
    Profile1D p = parse_profile("expr:0.05*exp(-1/(1-(r/0.5)^2))@0.5");
    CHECK(p.value(0.3) == doctest::Approx(builtin.value(0.3)).epsilon(1e-12));
    CHECK(p.value(0.7) == 0.0);
}

TEST_CASE("expression parse errors carry a column") {
    try {
        (void)Expr::parse("1 + foo(r)");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
    CHECK_THROWS_AS((void)Expr::parse("(1 + r"), ConfigError);
    CHECK_THROWS_AS((void)Expr::parse("2 *"), ConfigError);
    CHECK_THROWS_AS((void)Expr::parse("1 2"), ConfigError);
}

TEST_CASE("expression grammar evaluates") {
    CHECK(Expr::parse("2 + 3*4").eval(0) == doctest::Approx(14.0));
    CHECK(Expr::parse("(2 + 3)*4").eval(0) == doctest::Approx(20.0));
    CHECK(Expr::parse("2^3^2").eval(0) == doctest::Approx(512.0));  // right assoc
    CHECK(Expr::parse("-r^2").eval(3.0) == doctest::Approx(-9.0));
    CHECK(Expr::parse("sin(r)/r").eval(0.5) == doctest::Approx(std::sin(0.5) / 0.5));
    CHECK(Expr::parse("8/4/2").eval(0) == doctest::Approx(1.0));
}

TEST_CASE("zero-data john run summarizes as NoShock") {
    RunConfig cfg = parse_config(
        "psi0 = zero\npsi0_dot = zero\nstart_time = 0\nt_max = 50\nn_u = 32\n", "john.solve");
    auto summary = run_experiment(cfg);
    CHECK(summary["results"]["no_shock"] == true);
    CHECK(summary["results"]["mu_min_final"] == 1.0);
}

TEST_CASE("burgers run reproduces the gaussian blow-up time") {
    RunConfig cfg = parse_config("profile = gaussian:1\nt_max = 1\nn_alpha = 9\n", "burgers");
    auto summary = run_experiment(cfg);
    double T = summary["results"]["blowup_time"];
    CHECK(T == doctest::Approx(std::sqrt(M_E / 2.0)).epsilon(1e-6));
}

TEST_CASE("identical invocations produce byte-identical JSON") {
    const std::string text =
        "psi0 = zero\npsi0_dot = poly_bump:1,4\namplitude = 0.3\nstart_time = -0.5\n"
        "n_u = 48\ns_max = 30\nseed = 11\n";
    RunConfig cfg = parse_config(text, "john.solve");
    std::string a = summary_to_string(run_experiment(cfg));
    std::string b = summary_to_string(run_experiment(parse_config(text, "john.solve")));
    CHECK(a == b);
}

TEST_CASE("sweep validates the lambda list") {
    RunConfig cfg = parse_config(
        "psi0 = zero\npsi0_dot = poly_bump:1,4\nstart_time = -0.5\nn_u = 32\ns_max = 10\n"
        "lambda = 0.3\n",
        "john.sweep");
    CHECK_THROWS_AS((void)run_experiment(cfg), ConfigError);
}

TEST_CASE("sweep on zero data reports undefined spread") {
    RunConfig cfg = parse_config(
        "psi0 = zero\npsi0_dot = zero\nstart_time = 0\nn_u = 32\nt_max = 20\n"
        "lambda = 1.0,2.0\n",
        "john.sweep");
    auto summary = run_experiment(cfg);
    CHECK(summary["results"]["scaling_fit"]["spread_defined"] == false);
    for (const auto& r : summary["results"]["runs"])
        CHECK(r["report"]["no_shock"] == true);
}

TEST_CASE("sweep is deterministic across concurrency levels") {
    const std::string text =
        "psi0 = zero\npsi0_dot = poly_bump:1,4\nstart_time = -0.5\nn_u = 48\ns_max = 60\n"
        "lambda = 0.3,0.25\n";
    setenv("SHOCKLAB_THREADS", "1", 1);
    std::string a = summary_to_string(run_experiment(parse_config(text, "john.sweep")));
    setenv("SHOCKLAB_THREADS", "2", 1);
    std::string b = summary_to_string(run_experiment(parse_config(text, "john.sweep")));
    unsetenv("SHOCKLAB_THREADS");
    CHECK(a == b);
}

TEST_CASE("nullcond fluid subcommand") {
    RunConfig cfg =
        parse_config("lagrangian = exceptional\nk = 0.5\ntol = 1e-10\n", "nullcond.fluid");
    auto summary = run_experiment(cfg);
    CHECK(summary["results"]["exceptional"] == true);
    CHECK(std::fabs(double(summary["results"]["dHdsigma_at_k2"])) <= 1e-10);

    RunConfig q = parse_config("lagrangian = quadratic:1,1\nk = 0.1\n", "nullcond.fluid");
    auto s2 = run_experiment(q);
    CHECK(s2["results"]["exceptional"] == false);
    CHECK(double(s2["results"]["dHdsigma_at_k2"]) ==
          doctest::Approx(-24.0 / (1.06 * 1.06)).epsilon(1e-9));
}

TEST_CASE("nullcond aleph subcommand ranges") {
    RunConfig cfg = parse_config("metric = john\nn_dirs = 512\n", "nullcond.aleph");
    auto summary = run_experiment(cfg);
    CHECK(double(summary["results"]["aleph_plus_range"][0]) == doctest::Approx(-1.0));
    CHECK(double(summary["results"]["aleph_plus_range"][1]) == doctest::Approx(-1.0));
    CHECK(summary["results"]["identically_zero"] == false);

    RunConfig conf = parse_config("metric = conformal:0.8\nn_dirs = 512\n", "nullcond.aleph");
    CHECK(run_experiment(conf)["results"]["identically_zero"] == true);
}

TEST_CASE("nullcond check reads tensor files") {
    // N = inverse Minkowski (the Q0 form): passes
    {
        std::FILE* f = std::fopen("/tmp/shocklab_q0.tensors", "w");
        std::fputs("kind = quadratic\nN = -1 0 0 0  0 1 0 0  0 0 1 0  0 0 0 1\n", f);
        std::fclose(f);
        RunConfig cfg =
            parse_config("tensors = /tmp/shocklab_q0.tensors\nn_dirs = 512\n", "nullcond.check");
        CHECK(run_experiment(cfg)["results"]["passes"] == true);
    }
    // N^{00} = 1 (the (dt Phi)^2 term): fails with violation 1
    {
        std::FILE* f = std::fopen("/tmp/shocklab_tt.tensors", "w");
        std::fputs("N = 1 0 0 0  0 0 0 0  0 0 0 0  0 0 0 0\n", f);
        std::fclose(f);
        RunConfig cfg =
            parse_config("tensors = /tmp/shocklab_tt.tensors\nn_dirs = 512\n", "nullcond.check");
        auto summary = run_experiment(cfg);
        CHECK(summary["results"]["passes"] == false);
        CHECK(double(summary["results"]["max_violation"]) == doctest::Approx(1.0));
    }
}

TEST_CASE("nullcond aleph reads metric files") {
    std::FILE* f = std::fopen("/tmp/shocklab_john.metric", "w");
    std::fputs("kind = scalar_gPsi\n# John metric first Taylor coefficient\n"
               "G2 = 0 0 0 0  0 -1 0 0  0 0 -1 0  0 0 0 -1\n",
               f);
    std::fclose(f);
    RunConfig cfg = parse_config("metric = file:/tmp/shocklab_john.metric\nn_dirs = 256\n",
                                 "nullcond.aleph");
    auto summary = run_experiment(cfg);
    CHECK(double(summary["results"]["aleph_plus_range"][0]) == doctest::Approx(-1.0));
    CHECK(double(summary["results"]["aleph_plus_range"][1]) == doctest::Approx(-1.0));
}

TEST_CASE("lifespan subcommand computes sup and bounds") {
    RunConfig cfg = parse_config(
        "phi0 = zero\nphi0_dot = poly_bump:1,4,1\naleph = john\n"
        "q_points = 129\nsphere_points = 16\nlambda = 0.1,0.05\n",
        "lifespan");
    auto summary = run_experiment(cfg);
    CHECK(double(summary["results"]["sup_value"]) > 0.0);
    auto bounds = summary["results"]["bounds"];
    REQUIRE(bounds.size() == 2);
    // log bound doubles when lambda halves
    CHECK(double(bounds[1]["log_bound"]) ==
          doctest::Approx(2.0 * double(bounds[0]["log_bound"])).epsilon(1e-12));
}
