#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "shocklab/common.hpp"
#include "shocklab/nullcond.hpp"

using namespace shocklab;
using namespace shocklab::nullcond;

namespace {

Mat4 inverse_minkowski() {
    Mat4 m{};
    at(m, 0, 0) = -1.0;
    at(m, 1, 1) = at(m, 2, 2) = at(m, 3, 3) = 1.0;
    return m;
}

// range of a function over the sphere, as [min, max]
std::pair<double, double> sphere_range(const MetricFamily& mf, bool plus, int n) {
    double lo = 1e300, hi = -1e300;
    for (const Vec3& th : fibonacci_sphere(n)) {
        double v = plus ? aleph_plus(mf, th) : aleph_minus(mf, th);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

}  // namespace

TEST_CASE("Q0 null form passes the classic null condition") {
    QuadraticNonlinearity nl;
    nl.N = inverse_minkowski();
    auto r = check_classic_null(nl, 4096);
    CHECK(r.passes);
    CHECK(r.max_violation <= 1e-12);
}

TEST_CASE("A' proportional to the inverse metric passes") {
    QuadraticNonlinearity nl;
    nl.Aprime = inverse_minkowski();
    CHECK(check_classic_null(nl, 4096).passes);
}

TEST_CASE("the (dt Phi)^2 term fails with violation 1") {
    QuadraticNonlinearity nl;
    Mat4 n{};
    at(n, 0, 0) = 1.0;
    nl.N = n;
    auto r = check_classic_null(nl, 4096);
    CHECK(!r.passes);
    CHECK(r.max_violation == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("violations are cubic in ell for A and quadratic for N") {
    // manual contraction homogeneity at sampled null covectors
    Tens3 A{};
    at(A, 0, 0, 0) = 1.0;
    Mat4 N{};
    at(N, 0, 0) = 1.0;
    for (const Vec3& th : fibonacci_sphere(16)) {
        for (double lam : {0.5, 2.0}) {
            double l1[4] = {1.0, th.x, th.y, th.z};
            double cA1 = 0, cN1 = 0, cAl = 0, cNl = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    cN1 += at(N, i, j) * l1[i] * l1[j];
                    cNl += at(N, i, j) * (lam * l1[i]) * (lam * l1[j]);
                    for (int k = 0; k < 4; ++k) {
                        cA1 += at(A, i, j, k) * l1[i] * l1[j] * l1[k];
                        cAl += at(A, i, j, k) * (lam * l1[i]) * (lam * l1[j]) * (lam * l1[k]);
                    }
                }
            CHECK(cAl == doctest::Approx(lam * lam * lam * cA1).epsilon(1e-12));
            CHECK(cNl == doctest::Approx(lam * lam * cN1).epsilon(1e-12));
        }
    }
    // hence pass/fail is scale independent: scaled tensors give the same verdict
    QuadraticNonlinearity nl;
    nl.A = A;
    nl.N = N;
    bool verdict = check_classic_null(nl, 512).passes;
    for (double lam : {0.5, 2.0}) {
        QuadraticNonlinearity sc;
        Tens3 As = A;
        Mat4 Ns = N;
        for (auto& v : As) v *= lam;
        for (auto& v : Ns) v *= lam;
        sc.A = As;
        sc.N = Ns;
        CHECK(check_classic_null(sc, 512).passes == verdict);
    }
}

TEST_CASE("scalar failure factors of the worked metrics") {
    auto john = john_metric();
    auto conf = conformal_metric(0.7);
    auto off = offdiag_metric();
    for (const Vec3& th : fibonacci_sphere(64)) {
        CHECK(aleph_plus(john, th) == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(aleph_plus(conf, th) == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(aleph_plus(off, th) == doctest::Approx(2.0 * th.x * th.y).epsilon(1e-13));
    }
}

TEST_CASE("system failure factors of the worked equations") {
    auto a = dt_grad_sq_system();
    auto b = dtphi_dttphi_system();
    MetricFamily zero = MetricFamily::system(Tens3{});
    for (const Vec3& th : fibonacci_sphere(64)) {
        CHECK(aleph_plus(a, th) == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(aleph_plus(b, th) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(aleph_plus(zero, th) == doctest::Approx(0.0));
    }
}

TEST_CASE("kind-checked entry points reject mismatched families") {
    Vec3 th{0, 0, 1};
    CHECK(aleph_plus_scalar(john_metric(), th) == doctest::Approx(-1.0));
    CHECK(aleph_plus_system(dtphi_dttphi_system(), th) == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)aleph_plus_scalar(dtphi_dttphi_system(), th), ConfigError);
    CHECK_THROWS_AS((void)aleph_plus_system(john_metric(), th), ConfigError);
}

TEST_CASE("past failure factors") {
    auto john = john_metric();
    auto conf = conformal_metric(1.3);
    auto b = dtphi_dttphi_system();
    for (const Vec3& th : fibonacci_sphere(64)) {
        CHECK(aleph_minus(john, th) == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(aleph_minus(conf, th) == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(aleph_minus(b, th) == doctest::Approx(-1.0).epsilon(1e-13));
    }
}

TEST_CASE("aleph+ vanishes iff aleph- vanishes; range identities per kind") {
    // vanishing equivalence on the conformal family
    auto conf = conformal_metric(2.0);
    auto [clo, chi] = sphere_range(conf, true, 4096);
    auto [mlo, mhi] = sphere_range(conf, false, 4096);
    CHECK(std::max(std::fabs(clo), std::fabs(chi)) <= 1e-12);
    CHECK(std::max(std::fabs(mlo), std::fabs(mhi)) <= 1e-12);

    // scalar case is even in L: range(aleph-) = range(aleph+)
    for (auto mf : {john_metric(), offdiag_metric()}) {
        auto [plo, phi_] = sphere_range(mf, true, 4096);
        auto [qlo, qhi] = sphere_range(mf, false, 4096);
        CHECK(plo == doctest::Approx(qlo).epsilon(1e-12));
        CHECK(phi_ == doctest::Approx(qhi).epsilon(1e-12));
    }
    // system case is odd in L: range(-aleph-) = range(aleph+)
    for (auto mf : {dtphi_dttphi_system(), dt_grad_sq_system()}) {
        auto [plo, phi_] = sphere_range(mf, true, 4096);
        auto [qlo, qhi] = sphere_range(mf, false, 4096);
        CHECK(plo == doctest::Approx(-qhi).epsilon(1e-12));
        CHECK(phi_ == doctest::Approx(-qlo).epsilon(1e-12));
    }
}

TEST_CASE("aleph+ == 0 iff the induced quadratic tensors pass the null check") {
    struct Case {
        MetricFamily mf;
        bool vanishes;
    };
    for (const auto& c : {Case{conformal_metric(0.9), true}, Case{john_metric(), false},
                          Case{offdiag_metric(), false}}) {
        auto [lo, hi] = sphere_range(c.mf, true, 65536);
        bool vanish = std::max(std::fabs(lo), std::fabs(hi)) <= 1e-12;
        CHECK(vanish == c.vanishes);
        CHECK(check_classic_null(induced_nonlinearity(c.mf.G2), 4096).passes == c.vanishes);
    }
}

TEST_CASE("exceptional Lagrangian: H == 1 and dH/dsigma == 0") {
    for (double k : {0.3, 0.5, 0.9}) {
        auto fl = exceptional_lagrangian(k);
        auto fd = fluid_derived(fl);
        CHECK(std::fabs(fd.dHdsigma_at_k2) <= 1e-10);
        CHECK(fd.positivity_ok);
        CHECK(fd.eta0 == doctest::Approx(std::sqrt(1.0 - k * k)).epsilon(1e-12));
        for (double s : {0.05, k * k, 0.8})
            CHECK(fd.H(s) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(is_exceptional(fl, 1e-10));
    }
}

TEST_CASE("linear Lagrangian is the free wave") {
    auto fd = fluid_derived(linear_lagrangian(0.4));
    CHECK(fd.F(0.16) == doctest::Approx(0.0));
    CHECK(fd.H(0.16) == doctest::Approx(0.0));
    CHECK(fd.eta0 == doctest::Approx(1.0));
    CHECK(fd.dHdsigma_at_k2 == doctest::Approx(0.0));
    CHECK(!fd.positivity_ok);  // d2L/dsigma2 = 0
}

TEST_CASE("quadratic Lagrangian: symbolic chain H = 4/(1+6 sigma)") {
    auto fl = quadratic_lagrangian(1.0, 1.0, 0.1);
    auto fd = fluid_derived(fl);
    CHECK(fd.H(0.01) == doctest::Approx(4.0 / 1.06).epsilon(1e-12));
    CHECK(fd.dHdsigma_at_k2 == doctest::Approx(-24.0 / (1.06 * 1.06)).epsilon(1e-10));
    CHECK(!is_exceptional(fl, 1e-10));

    // cross-check the analytic chain with 4th-order finite differences of H
    double h = 1e-4, s0 = 0.01;
    double fdv = (-fd.H(s0 + 2 * h) + 8 * fd.H(s0 + h) - 8 * fd.H(s0 - h) + fd.H(s0 - 2 * h)) /
                 (12 * h);
    CHECK(fd.dHdsigma_at_k2 == doctest::Approx(fdv).epsilon(1e-8));
}

TEST_CASE("H is invariant under constant rescaling of the Lagrangian") {
    FluidLagrangian fl = exceptional_lagrangian(0.5);
    auto scale2 = [](std::function<double(double)> f) {
        return [f](double s) { return 2.0 * f(s); };
    };
    fl.L = scale2(fl.L);
    fl.dL = scale2(fl.dL);
    fl.d2L = scale2(fl.d2L);
    fl.d3L = scale2(fl.d3L);
    auto fd = fluid_derived(fl);
    CHECK(std::fabs(fd.dHdsigma_at_k2) <= 1e-10);
    CHECK(is_exceptional(fl, 1e-10));
    auto ref = fluid_derived(exceptional_lagrangian(0.5));
    for (double s : {0.1, 0.25, 0.5}) CHECK(fd.H(s) == doctest::Approx(ref.H(s)).epsilon(1e-10));

    // same rescaling through the finite-difference path, at its noise floor
    FluidLagrangian fd_mode;
    fd_mode.k = 0.5;
    fd_mode.L = [](double s) { return 2.0 * (1.0 - std::sqrt(1.0 - s)); };
    auto fd2 = fluid_derived(fd_mode);
    CHECK(std::fabs(fd2.dHdsigma_at_k2) <= 1e-7);
    CHECK(is_exceptional(fd_mode, 1e-7));
    for (double s : {0.1, 0.25, 0.5}) CHECK(fd2.H(s) == doctest::Approx(ref.H(s)).epsilon(1e-8));
}

TEST_CASE("chain H agrees with finite differences of the closed form") {
    // chain from finite differences of L vs H = F/(1+sigma F) with analytic F
    FluidLagrangian fd_mode;
    fd_mode.k = 0.3;
    fd_mode.L = [](double s) { return s + 0.7 * s * s; };
    auto numeric = fluid_derived(fd_mode);
    auto analytic = fluid_derived(quadratic_lagrangian(1.0, 0.7, 0.3));
    for (double s : {0.02, 0.09, 0.3})
        CHECK(numeric.H(s) == doctest::Approx(analytic.H(s)).epsilon(1e-8));
    CHECK(numeric.dHdsigma_at_k2 == doctest::Approx(analytic.dHdsigma_at_k2).epsilon(1e-6));
}

TEST_CASE("degenerate sound speed is rejected") {
    // F = -8 puts 1 + sigma F < 0 at sigma = 1/4, so eta^2 = 1 - sigma H < 0
    FluidLagrangian fl;
    fl.k = 0.5;
    fl.L = [](double s) { return std::exp(-4.0 * s); };
    fl.dL = [](double s) { return -4.0 * std::exp(-4.0 * s); };
    fl.d2L = [](double s) { return 16.0 * std::exp(-4.0 * s); };
    fl.d3L = [](double s) { return -64.0 * std::exp(-4.0 * s); };
    CHECK_THROWS_AS((void)fluid_derived(fl), NumericalError);
}
