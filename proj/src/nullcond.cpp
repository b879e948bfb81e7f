#include "shocklab/nullcond.hpp"

#include <cmath>

namespace shocklab::nullcond {

Mat4 symmetrized(const Mat4& m) {
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[4 * i + j] = 0.5 * (at(m, i, j) + at(m, j, i));
    return out;
}

Tens3 symmetrized_last_two(const Tens3& t) {
    Tens3 out{};
    for (int l = 0; l < 4; ++l)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                at(out, l, a, b) = 0.5 * (at(t, l, a, b) + at(t, l, b, a));
    return out;
}

Tens3 symmetrized_first_two(const Tens3& t) {
    Tens3 out{};
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int s = 0; s < 4; ++s)
                at(out, m, n, s) = 0.5 * (at(t, m, n, s) + at(t, n, m, s));
    return out;
}

namespace {

std::array<double, 4> null_covector(const Vec3& theta, double sign) {
    return {sign, theta.x, theta.y, theta.z};
}

double contract2(const Mat4& m, const std::array<double, 4>& l) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += at(m, i, j) * l[i] * l[j];
    return acc;
}

double contract3(const Tens3& t, const std::array<double, 4>& l) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) acc += at(t, i, j, k) * l[i] * l[j] * l[k];
    return acc;
}

}  // namespace

NullCheckResult check_classic_null(const QuadraticNonlinearity& nl, int n_dirs) {
    if (n_dirs < 6) throw ConfigError("check_classic_null: need n_dirs >= 6");
    NullCheckResult res;
    for (const Vec3& theta : fibonacci_sphere(n_dirs)) {
        for (double sign : {1.0, -1.0}) {
            auto ell = null_covector(theta, sign);
            double vA = 0.0, vN = 0.0;
            if (nl.A) vA += std::fabs(contract3(*nl.A, ell));
            if (nl.Aprime) vN += std::fabs(contract2(*nl.Aprime, ell));
            if (nl.N) vN += std::fabs(contract2(*nl.N, ell));
            double v = vA + vN;
            res.max_violation_A = std::max(res.max_violation_A, vA);
            res.max_violation_N = std::max(res.max_violation_N, vN);
            if (v > res.max_violation) {
                res.max_violation = v;
                res.witness = {theta, ell};
            }
        }
    }
    res.passes = res.max_violation <= 1e-12;
    return res;
}

MetricFamily MetricFamily::scalar(const Mat4& G2) {
    MetricFamily mf;
    mf.kind = MetricKind::scalar_gPsi;
    mf.G2 = symmetrized(G2);
    return mf;
}

MetricFamily MetricFamily::system(const Tens3& G3) {
    MetricFamily mf;
    mf.kind = MetricKind::system_gdPhi;
    mf.G3 = symmetrized_last_two(G3);
    return mf;
}

namespace {

double aleph(const MetricFamily& mf, const Vec3& theta, double time_component) {
    const std::array<double, 4> L = {time_component, theta.x, theta.y, theta.z};
    if (mf.kind == MetricKind::scalar_gPsi) {
        double acc = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) acc += at(mf.G2, a, b) * L[a] * L[b];
        return acc;
    }
    // System case: contract the upper index with ell = -m(L, .), the covector
    // of the wave phase. This sign makes the differentiated scalar route agree
    // with the direct scalar contraction on the same equation.
    std::array<double, 4> ell;
    for (int k = 0; k < 4; ++k) {
        double mk = 0.0;
        for (int l = 0; l < 4; ++l) mk += minkowski(k, l) * L[l];
        ell[k] = -mk;
    }
    double acc = 0.0;
    for (int k = 0; k < 4; ++k)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) acc += at(mf.G3, k, a, b) * ell[k] * L[a] * L[b];
    return acc;
}

}  // namespace

double aleph_plus(const MetricFamily& mf, const Vec3& theta) { return aleph(mf, theta, 1.0); }
double aleph_minus(const MetricFamily& mf, const Vec3& theta) { return aleph(mf, theta, -1.0); }

double aleph_plus_scalar(const MetricFamily& mf, const Vec3& theta) {
    if (mf.kind != MetricKind::scalar_gPsi)
        throw ConfigError("WrongKind: aleph_plus_scalar needs a scalar_gPsi family");
    return aleph_plus(mf, theta);
}

double aleph_plus_system(const MetricFamily& mf, const Vec3& theta) {
    if (mf.kind != MetricKind::system_gdPhi)
        throw ConfigError("WrongKind: aleph_plus_system needs a system_gdPhi family");
    return aleph_plus(mf, theta);
}

QuadraticNonlinearity induced_nonlinearity(const Mat4& G2) {
    // Raise both indices: Graised^{ab} = m^{ac} m^{bd} G_{cd}; in the expanded
    // equation the quasilinear coefficient is -Graised and the dangerous
    // semilinear part is proportional to +Graised.
    Mat4 raised{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            at(raised, a, b) = minkowski(a, a) * minkowski(b, b) * at(G2, a, b);
    QuadraticNonlinearity nl;
    Mat4 ap{};
    for (int i = 0; i < 16; ++i) ap[i] = -raised[i];
    nl.Aprime = ap;
    nl.N = raised;
    return nl;
}

MetricFamily john_metric() {
    Mat4 g{};
    at(g, 1, 1) = at(g, 2, 2) = at(g, 3, 3) = -1.0;  // d/dPsi (1+Psi)^{-1} at 0
    return MetricFamily::scalar(g);
}

MetricFamily conformal_metric(double c) {
    Mat4 g{};
    for (int i = 0; i < 4; ++i) at(g, i, i) = c * minkowski(i, i);
    return MetricFamily::scalar(g);
}

MetricFamily offdiag_metric() {
    Mat4 g{};
    at(g, 1, 2) = at(g, 2, 1) = 1.0;
    return MetricFamily::scalar(g);
}

MetricFamily dt_grad_sq_system() {
    // G^l_{ab} = 2 delta^l_a m_{b0}
    Tens3 t{};
    for (int l = 0; l < 4; ++l)
        for (int b = 0; b < 4; ++b) at(t, l, l, b) = 2.0 * minkowski(b, 0);
    return MetricFamily::system(t);
}

MetricFamily dtphi_dttphi_system() {
    // G^l_{ab} = m_{a0} m_{b0} delta_0^l
    Tens3 t{};
    at(t, 0, 0, 0) = 1.0;  // m_00 m_00 = 1
    return MetricFamily::system(t);
}

// ---------------------------------------------------------------------------

namespace {

struct LagDerivs {
    double d1, d2, d3;
};

LagDerivs lag_derivs(const FluidLagrangian& fl, double sigma) {
    if (fl.dL && fl.d2L && fl.d3L) return {fl.dL(sigma), fl.d2L(sigma), fl.d3L(sigma)};
    // 4th-order central stencils with per-order steps balancing truncation
    // against roundoff (a shared tiny step would leave the second and third
    // derivatives roundoff-dominated)
    double scale = (fl.fd_step > 0.0 ? fl.fd_step / 1e-4 : 1.0) * std::max(1.0, sq(fl.k));
    auto sample = [&](double h, std::array<double, 7>& f) {
        for (int i = -3; i <= 3; ++i) {
            double v = fl.L(sigma + i * h);
            if (!std::isfinite(v))
                throw NumericalError("NotDifferentiable: Lagrangian stencil left the domain");
            f[i + 3] = v;
        }
    };
    std::array<double, 7> f;
    double h1 = 1e-4 * scale;
    sample(h1, f);
    double d1 = (-f[5] + 8 * f[4] - 8 * f[2] + f[1]) / (12 * h1);
    double h2 = 3e-4 * scale;
    sample(h2, f);
    double d2 = (-f[5] + 16 * f[4] - 30 * f[3] + 16 * f[2] - f[1]) / (12 * h2 * h2);
    double h3 = 5e-3 * scale;
    sample(h3, f);
    double d3 = (-f[6] + 8 * f[5] - 13 * f[4] + 13 * f[2] - 8 * f[1] + f[0]) /
                (8 * h3 * h3 * h3);
    return {d1, d2, d3};
}

}  // namespace

FluidDerived fluid_derived(const FluidLagrangian& fl) {
    if (fl.k == 0.0) throw ConfigError("fluid_derived: background constant k must be nonzero");
    FluidDerived out;
    out.sigma0 = sq(fl.k);

    FluidLagrangian copy = fl;
    out.G = [copy](double s) { return 2.0 * lag_derivs(copy, s).d1; };
    out.F = [copy](double s) {
        auto d = lag_derivs(copy, s);
        return 2.0 * d.d2 / d.d1;
    };
    auto F = out.F;
    out.H = [F](double s) {
        double f = F(s);
        return f / (1.0 + s * f);
    };
    auto H = out.H;
    out.eta = [H](double s) {
        double e2 = 1.0 - s * H(s);
        if (e2 <= 0.0) throw NumericalError("DegenerateSound: eta^2 <= 0");
        return std::sqrt(e2);
    };

    const double s0 = out.sigma0;
    {
        // dH/dsigma = (F' - F^2) / (1 + sigma F)^2
        auto d = lag_derivs(fl, s0);
        double Fv = 2.0 * d.d2 / d.d1;
        double Fp = 2.0 * (d.d3 * d.d1 - sq(d.d2)) / sq(d.d1);
        out.dHdsigma_at_k2 = (Fp - sq(Fv)) / sq(1.0 + s0 * Fv);
    }

    double Lv = fl.L(s0);
    auto d = lag_derivs(fl, s0);
    double monot = d.d1 - Lv / (2.0 * s0);  // sign of d/dsigma (L / sqrt(sigma))
    out.positivity_ok = s0 > 0.0 && Lv > 0.0 && d.d1 > 0.0 && monot > 0.0 && d.d2 > 0.0;

    out.eta0 = out.eta(s0);
    if (out.positivity_ok && !(out.eta0 > 0.0 && out.eta0 < 1.0))
        throw NumericalError("fluid_derived: positivity holds but eta not in (0,1)");
    return out;
}

bool is_exceptional(const FluidLagrangian& fl, double tol) {
    return std::fabs(fluid_derived(fl).dHdsigma_at_k2) <= tol;
}

FluidLagrangian exceptional_lagrangian(double k) {
    FluidLagrangian fl;
    fl.k = k;
    fl.L = [](double s) { return 1.0 - std::sqrt(1.0 - s); };
    fl.dL = [](double s) { return 0.5 / std::sqrt(1.0 - s); };
    fl.d2L = [](double s) { return 0.25 / std::pow(1.0 - s, 1.5); };
    fl.d3L = [](double s) { return 0.375 / std::pow(1.0 - s, 2.5); };
    return fl;
}

FluidLagrangian linear_lagrangian(double k) {
    FluidLagrangian fl;
    fl.k = k;
    fl.L = [](double s) { return s; };
    fl.dL = [](double) { return 1.0; };
    fl.d2L = [](double) { return 0.0; };
    fl.d3L = [](double) { return 0.0; };
    return fl;
}

FluidLagrangian quadratic_lagrangian(double a, double b, double k) {
    FluidLagrangian fl;
    fl.k = k;
    fl.L = [=](double s) { return a * s + b * s * s; };
    fl.dL = [=](double s) { return a + 2.0 * b * s; };
    fl.d2L = [=](double) { return 2.0 * b; };
    fl.d3L = [](double) { return 0.0; };
    return fl;
}

}  // namespace shocklab::nullcond
