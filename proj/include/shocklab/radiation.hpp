#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "shocklab/common.hpp"
#include "shocklab/profiles.hpp"

namespace shocklab::radiation {

// Compactly supported field on R^3. A radial evaluator, when present, marks
// spherical symmetry and unlocks the 1D quadrature paths.
struct SpatialField {
    std::function<double(const Vec3&)> eval;
    double support_radius = 1.0;
    std::function<Vec3(const Vec3&)> grad;              // optional
    std::function<double(double)> radial;               // optional: f(|y|)
    std::function<double(double)> radial_derivative;    // optional: f'(|y|)

    static SpatialField zero();
    static SpatialField from_radial(const Profile1D& p);
    static SpatialField ball_indicator(double R);
    static SpatialField gaussian();                     // exp(-|y|^2)
    SpatialField scaled(double amplitude) const;
    bool is_zero() const { return support_radius <= 0.0; }
};

struct QuadratureOptions {
    int radial_points = 64;
    int angular_points = 128;
    double abs_tol = 1e-8;
    int max_refinements = 3;
};

// Plane integral of f over P_{q,theta} (the plane through q*theta with unit
// normal theta) by polar quadrature: Gauss-Legendre in radius on the disk of
// radius sqrt(R^2 - q^2), uniform (trapezoid) in angle. One halving refinement
// must move the result by less than abs_tol or QuadratureFailure is thrown.
double radon(const SpatialField& f, double q, const Vec3& theta,
             const QuadratureOptions& opt = {});

struct FriedlanderOptions {
    QuadratureOptions quad;
    double dq_step = 0.0;   // 0 -> support_radius / 512
    bool use_gradient_if_available = true;
};

// Friedlander radiation field of the linear wave with data (phi0, phi0_dot):
//   F(q,theta) = -(1/4pi) d_q Radon[phi0](q,theta) + (1/4pi) Radon[phi0_dot](q,theta).
// d_q by a 5-point central stencil, or via Radon[theta . grad phi0] when the
// gradient evaluator is supplied.
double friedlander(const SpatialField& phi0, const SpatialField& phi0_dot, double q,
                   const Vec3& theta, const FriedlanderOptions& opt = {});

struct RadiationField {
    std::vector<double> q_grid;
    std::vector<Vec3> theta_grid;
    std::vector<std::vector<double>> values;  // [theta][q]
    std::vector<std::vector<double>> d2q;     // [theta][q], NaN on the 2 dropped boundary rows
};

struct GridOptions {
    int q_points = 513;
    int sphere_points = 1024;
    FriedlanderOptions fr;
};

RadiationField build_radiation_field(const SpatialField& phi0, const SpatialField& phi0_dot,
                                     const GridOptions& opt = {});

struct LifespanEstimate {
    double sup_value = 0.0;          // sup of (1/2) aleph+ d2q F; >= 0 for compact data
    double argmax_q = 0.0;
    Vec3 argmax_theta;
    // John-Hormander bound: T >= exp(1/(lambda * sup)); log form is always finite.
    double log_bound(double lambda) const;
    double bound(double lambda) const;   // +inf when degenerate or overflowing
};

using AlephFn = std::function<double(const Vec3&)>;

// Grid supremum of (1/2) aleph+(theta) d^2_q F(q,theta), with one refinement
// pass near the argmax (4x denser in q at the argmax direction and its
// nearest neighbours).
LifespanEstimate john_hormander_sup(const SpatialField& phi0, const SpatialField& phi0_dot,
                                    const AlephFn& aleph, const GridOptions& opt = {});

// True iff the refined supremum exceeds 1e-10 (strict positivity for
// nontrivial data; vacuously false for zero data).
bool positivity_check(const SpatialField& phi0, const SpatialField& phi0_dot,
                      const AlephFn& aleph, const GridOptions& opt = {});

// Seeded property driver: n_trials random nontrivial radial bump pairs, all
// must come out strictly positive.
bool positivity_trials(const AlephFn& aleph, int n_trials, uint64_t seed,
                       const GridOptions& opt = {});

// Christodoulou's shock functional
//   S(U) = int_{S_{0,U}} r {(phi0_dot - k) - eta0 d_r phi0} dS
//        + int_{1-U <= |y| <= 1} {2 (phi0_dot - k) - eta0 d_r phi0} d^3x,
// radial quadrature for spherically symmetric data, sphere x radius product
// quadrature otherwise.
double christodoulou_S(const SpatialField& phi0, const SpatialField& phi0_dot, double k,
                       double eta0, double U, const QuadratureOptions& opt = {});

struct ShockIndicator {
    bool shock_indicated = false;
    std::string note;
};

// Sign structure of Theorem-C's criterion: ell > 0 wants S < 0, ell < 0 wants S > 0.
ShockIndicator christodoulou_criterion(double S_value, double ell);

}  // namespace shocklab::radiation
