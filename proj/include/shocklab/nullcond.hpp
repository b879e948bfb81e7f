#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shocklab/common.hpp"

namespace shocklab::nullcond {

// Index convention: 0 = t, Minkowski metric m = diag(-1,1,1,1).

using Mat4 = std::array<double, 16>;    // [mu][nu], row-major
using Tens3 = std::array<double, 64>;   // [mu][nu][sigma] (A) or [lambda][alpha][beta] (G3)

inline double& at(Mat4& m, int i, int j) { return m[4 * i + j]; }
inline double at(const Mat4& m, int i, int j) { return m[4 * i + j]; }
inline double& at(Tens3& t, int i, int j, int k) { return t[16 * i + 4 * j + k]; }
inline double at(const Tens3& t, int i, int j, int k) { return t[16 * i + 4 * j + k]; }

constexpr double minkowski(int i, int j) { return i != j ? 0.0 : (i == 0 ? -1.0 : 1.0); }

Mat4 symmetrized(const Mat4& m);
Tens3 symmetrized_last_two(const Tens3& t);   // G3: symmetric in (alpha, beta)
Tens3 symmetrized_first_two(const Tens3& t);  // A: symmetric in (mu, nu)

// Quadratic nonlinearity of a wave equation written as a perturbation of box_m:
// A = Taylor coefficient of the quasilinear part (3-tensor, symmetric in mu,nu),
// Aprime = the system-form 4x4 variant, N = semilinear coefficient.
// Absent parts are treated as zero.
struct QuadraticNonlinearity {
    std::optional<Tens3> A;
    std::optional<Mat4> Aprime;
    std::optional<Mat4> N;
};

struct NullDirection {
    Vec3 theta;                        // unit vector
    std::array<double, 4> ell;        // null covector (sign*1, theta)
};

struct NullCheckResult {
    bool passes = false;
    double max_violation = 0.0;
    double max_violation_A = 0.0;  // cubic part, scales as |lambda|^3
    double max_violation_N = 0.0;  // quadratic part, scales as |lambda|^2
    NullDirection witness;
};

// Evaluate |A lll| + |A' ll| + |N ll| over a Fibonacci sphere of n_dirs
// directions and both ell_0 signs; passes iff the max stays below 1e-12.
NullCheckResult check_classic_null(const QuadraticNonlinearity& nl, int n_dirs);

enum class MetricKind { scalar_gPsi, system_gdPhi };

// First Taylor coefficient of a metric family around the background:
// G2 = d g_{mu nu}/d Psi (scalar case), G3 = d g_{alpha beta}/d (d_lambda Phi).
struct MetricFamily {
    MetricKind kind;
    Mat4 G2{};
    Tens3 G3{};

    static MetricFamily scalar(const Mat4& G2);
    static MetricFamily system(const Tens3& G3);
};

// Future null condition failure factor: the coefficient of the shock-driving
// quadratic terms along outgoing flat null directions L = (1, theta).
double aleph_plus(const MetricFamily& mf, const Vec3& theta);
// Past factor: L replaced by (-1, theta).
double aleph_minus(const MetricFamily& mf, const Vec3& theta);

// Kind-checked entry points; throw "WrongKind" on a mismatched family.
double aleph_plus_scalar(const MetricFamily& mf, const Vec3& theta);
double aleph_plus_system(const MetricFamily& mf, const Vec3& theta);

// Quadratic tensors induced by a scalar metric family in the expanded
// (non-geometric) form of box_{g(Psi)} Psi = 0; check_classic_null on these
// passes iff aleph_plus vanishes identically.
QuadraticNonlinearity induced_nonlinearity(const Mat4& G2);

// Worked metric families.
MetricFamily john_metric();                 // -dt^2 + (1+Psi)^{-1} sum (dx^a)^2
MetricFamily conformal_metric(double c);    // g = (1 + f(Psi)) m, f'(0) = c
MetricFamily offdiag_metric();              // m + Psi (d1 x d2 + d2 x d1)
MetricFamily dt_grad_sq_system();           // box Phi = d_t((m^-1)^{ab} da Phi db Phi)
MetricFamily dtphi_dttphi_system();         // box Phi = 2 d_t Phi d_t^2 Phi

// ---------------------------------------------------------------------------
// Christodoulou's fluid-Lagrangian chain.

struct FluidLagrangian {
    std::function<double(double)> L;    // sigma -> Lagrangian
    double k = 0.0;                     // background constant, nonzero
    // analytic derivatives (optional); finite differences otherwise
    std::function<double(double)> dL, d2L, d3L;
    double fd_step = 0.0;               // 0 -> default 1e-5 * max(1, k^2)
};

struct FluidDerived {
    std::function<double(double)> G;    // 2 dL/dsigma
    std::function<double(double)> F;    // (2/G) dG/dsigma
    std::function<double(double)> H;    // F/(1 + sigma F)
    std::function<double(double)> eta;  // sqrt(1 - sigma H), the sound speed
    double sigma0 = 0.0;                // k^2
    double eta0 = 0.0;
    double dHdsigma_at_k2 = 0.0;        // the null-condition failure analog
    bool positivity_ok = false;
};

// Throws NotDifferentiable (as NumericalError) when the stencil leaves the
// domain and DegenerateSound when eta^2 <= 0.
FluidDerived fluid_derived(const FluidLagrangian& fl);

bool is_exceptional(const FluidLagrangian& fl, double tol);

FluidLagrangian exceptional_lagrangian(double k);          // 1 - sqrt(1 - sigma)
FluidLagrangian linear_lagrangian(double k);               // sigma (free wave)
FluidLagrangian quadratic_lagrangian(double a, double b, double k);  // a sigma + b sigma^2

}  // namespace shocklab::nullcond
