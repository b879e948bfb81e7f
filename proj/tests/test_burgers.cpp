#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "shocklab/burgers.hpp"
#include "shocklab/common.hpp"
#include "shocklab/profiles.hpp"

using namespace shocklab;

namespace {

// Independent bisection oracle for the launch-point equation x = a + t Psi0(a);
// shares nothing with burgers::evaluate.
double bisect_launch(const Profile1D& p, double t, double x, double lo, double hi) {
    auto f = [&](double a) { return a + t * p.value(a) - x; };
    REQUIRE(f(lo) < 0.0);
    REQUIRE(f(hi) > 0.0);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// First-order upwind finite-volume reference for Burgers (Godunov flux).
std::vector<double> upwind_burgers(const Profile1D& p, double t_end, double x_lo, double x_hi,
                                   int n) {
    double dx = (x_hi - x_lo) / n;
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = p.value(x_lo + (i + 0.5) * dx);
    auto godunov = [](double ul, double ur) {
        auto flux = [](double v) { return 0.5 * v * v; };
        if (ul <= ur) {
            if (ul >= 0.0) return flux(ul);
            if (ur <= 0.0) return flux(ur);
            return 0.0;
        }
        return flux(0.5 * (ul + ur) > 0.0 ? ul : ur);
    };
    double t = 0.0;
    while (t < t_end) {
        double vmax = 1e-12;
        for (double v : u) vmax = std::max(vmax, std::fabs(v));
        double dt = std::min(0.4 * dx / vmax, t_end - t);
        std::vector<double> un(u);
        for (int i = 1; i + 1 < n; ++i) {
            double fr = godunov(u[i], u[i + 1]);
            double fl = godunov(u[i - 1], u[i]);
            un[i] = u[i] - dt / dx * (fr - fl);
        }
        u = un;
        t += dt;
    }
    return u;
}

// Dense-grid minimization of the finite-difference derivative of p.value;
// independent of the derivative evaluator and of blowup_time.
double grid_min_derivative(const Profile1D& p, double R, int n) {
    const double h = 1e-6;
    double best = 0.0;
    for (int i = 0; i <= n; ++i) {
        double a = -R + 2.0 * R * i / n;
        double d = (p.value(a + h) - p.value(a - h)) / (2 * h);
        best = std::min(best, d);
    }
    return best;
}

}  // namespace

TEST_CASE("characteristic positions are the closed form") {
    Profile1D lin = linear_profile(-1.0);
    CHECK(burgers::characteristic_position(lin, 0.5, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    Profile1D z = zero_profile();
    CHECK(burgers::characteristic_position(z, 7.3, 3.0) == doctest::Approx(3.0).epsilon(1e-14));
    Profile1D g = gaussian_profile(1.0, 0.0, 1.0);
    CHECK(burgers::characteristic_position(g, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("jacobian 1 + t Psi0'") {
    Profile1D lin = linear_profile(-1.0);
    CHECK(burgers::jacobian(lin, 1.0, 0.37) == doctest::Approx(0.0).epsilon(1e-14));
    Profile1D c = constant_profile(4.2);
    CHECK(burgers::jacobian(c, 11.0, -3.0) == doctest::Approx(1.0).epsilon(1e-14));

    // gaussian at the inflection point: 1 - sqrt(2/e), checked against a
    // brute-force minimum of the finite-difference derivative
    Profile1D g = gaussian_profile(1.0, 0.0, 1.0);
    double expected = 1.0 - std::sqrt(2.0 / M_E);
    CHECK(burgers::jacobian(g, 1.0, 1.0 / std::sqrt(2.0)) ==
          doctest::Approx(expected).epsilon(1e-10));
    CHECK(1.0 + grid_min_derivative(g, 8.0, 200000) == doctest::Approx(expected).epsilon(1e-7));
}

TEST_CASE("blowup time") {
    CHECK(!burgers::blowup_time(zero_profile()));
    CHECK(!burgers::blowup_time(constant_profile(0.3)));
    auto T_lin = burgers::blowup_time(linear_profile(-1.0));
    REQUIRE(T_lin);
    CHECK(*T_lin == doctest::Approx(1.0).epsilon(1e-9));

    Profile1D g = gaussian_profile(1.0, 0.0, 1.0);
    auto T = burgers::blowup_time(g);
    REQUIRE(T);
    CHECK(*T == doctest::Approx(std::sqrt(M_E / 2.0)).epsilon(1e-9));
    // against the independent dense-grid oracle
    CHECK(*T == doctest::Approx(-1.0 / grid_min_derivative(g, 8.0, 200000)).epsilon(1e-7));
}

TEST_CASE("evaluate inverts the characteristic map") {
    CHECK(burgers::evaluate(zero_profile(), 5.0, 1.0) == doctest::Approx(0.0));
    Profile1D lin = linear_profile(-1.0);
    CHECK(burgers::evaluate(lin, 0.5, 0.5) == doctest::Approx(-1.0).epsilon(1e-10));

    Profile1D g = gaussian_profile(1.0, 0.0, 1.0);
    double v = burgers::evaluate(g, 0.5, 1.0);
    double a = bisect_launch(g, 0.5, 1.0, -9.0, 9.0);
    CHECK(v == doctest::Approx(g.value(a)).epsilon(1e-8));
}

TEST_CASE("evaluate against an upwind finite-volume reference") {
    Profile1D g = gaussian_profile(1.0, 0.0, 1.0);
    const double t = 0.5, x_lo = -6.0, x_hi = 6.0;
    const int n = 6000;
    auto ref = upwind_burgers(g, t, x_lo, x_hi, n);
    double dx = (x_hi - x_lo) / n;
    double worst = 0.0;
    for (int i = n / 4; i < 3 * n / 4; i += 37) {
        double x = x_lo + (i + 0.5) * dx;
        worst = std::max(worst, std::fabs(burgers::evaluate(g, t, x) - ref[i]));
    }
    CHECK(worst < 20.0 * dx);  // first-order reference: O(grid) agreement
}

TEST_CASE("riccati closed form") {
    CHECK(burgers::riccati_slope(0.0, 7.0) == doctest::Approx(0.0));
    CHECK(burgers::riccati_slope(2.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(burgers::riccati_slope(-1.0, 0.999) < -990.0);  // diverging toward t = 1
    CHECK_THROWS_AS((void)burgers::riccati_slope(-1.0, 1.0), NumericalError);
    CHECK_THROWS_AS((void)burgers::riccati_slope(-1.0, 1.5), NumericalError);
}

TEST_CASE("round trip: evaluate after characteristic_position is the identity") {
    Profile1D g = gaussian_profile(0.7, 0.3, 1.2);
    double t = 0.6;
    for (double a : {-2.0, -0.5, 0.0, 0.4, 1.1, 2.5}) {
        if (burgers::jacobian(g, t, a) <= 0.0) continue;
        double x = burgers::characteristic_position(g, t, a);
        CHECK(burgers::evaluate(g, t, x) == doctest::Approx(g.value(a)).epsilon(1e-10));
    }
}

TEST_CASE("sup norm of the solution is conserved") {
    Profile1D g = gaussian_profile(1.0, 0.0, 1.0);
    for (double t : {0.0, 0.4, 0.9}) {
        double sup = 0.0;
        for (int i = 0; i <= 400; ++i) {
            double x = -5.0 + 10.0 * i / 400 + t;  // track the transported support
            sup = std::max(sup, std::fabs(burgers::evaluate(g, t, x)));
        }
        CHECK(sup == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("blow-up time scales inversely with amplitude") {
    Profile1D g = gaussian_profile(1.0, 0.0, 1.0);
    auto T1 = burgers::blowup_time(g);
    REQUIRE(T1);
    for (double lam : {0.5, 0.25}) {
        auto T = burgers::blowup_time(g.scaled(lam));
        REQUIRE(T);
        CHECK(*T * lam == doctest::Approx(*T1).epsilon(1e-9));
    }
}

TEST_CASE("jacobian first vanishes exactly at the blow-up time") {
    Profile1D g = gaussian_profile(1.0, 0.0, 1.0);
    auto T = burgers::blowup_time(g);
    REQUIRE(T);
    // minimum jacobian over a fine fan straddles zero across T*
    auto min_jac = [&](double t) {
        double m = 1e300;
        for (int i = 0; i <= 20000; ++i)
            m = std::min(m, burgers::jacobian(g, t, -4.0 + 8.0 * i / 20000));
        return m;
    };
    CHECK(min_jac(*T * 0.999) > 0.0);
    CHECK(min_jac(*T * 1.001) < 0.0);
    CHECK(std::fabs(min_jac(*T)) < 2e-3);
}

TEST_CASE("synthesized derivative is consistent with value") {
    Profile1D p = Profile1D::from_function(
        [](double x) { return std::sin(1.7 * x) * std::exp(-x * x / 3.0); }, 10.0);
    const double h = 1e-4;
    for (double x : {-1.3, -0.2, 0.0, 0.8, 2.1}) {
        double fd = (p.value(x + h) - p.value(x - h)) / (2 * h);
        CHECK(p.derivative(x) == doctest::Approx(fd).epsilon(1e-6));
    }
}
