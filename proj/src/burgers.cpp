#include "shocklab/burgers.hpp"

#include <algorithm>
#include <cmath>

#include "shocklab/common.hpp"

namespace shocklab::burgers {

double characteristic_position(const Profile1D& profile, double t, double alpha) {
    return alpha + t * profile.value(alpha);
}

double jacobian(const Profile1D& profile, double t, double alpha) {
    return 1.0 + t * profile.derivative(alpha);
}

CharacteristicFan make_fan(const Profile1D& profile, double t, int n_alpha,
                           double alpha_min, double alpha_max) {
    CharacteristicFan fan;
    fan.time = t;
    fan.alphas.resize(n_alpha);
    fan.positions.resize(n_alpha);
    fan.jacobians.resize(n_alpha);
    for (int i = 0; i < n_alpha; ++i) {
        double a = alpha_min + (alpha_max - alpha_min) * i / (n_alpha - 1);
        fan.alphas[i] = a;
        fan.positions[i] = characteristic_position(profile, t, a);
        fan.jacobians[i] = jacobian(profile, t, a);
    }
    return fan;
}

namespace {

double search_window(const Profile1D& profile) {
    return std::isfinite(profile.support_radius) && profile.support_radius > 0.0
               ? profile.support_radius
               : 20.0;  // analytic test profiles; derivative negligible beyond
}

}  // namespace

std::optional<double> blowup_time(const Profile1D& profile, int grid_points) {
    const double R = search_window(profile);
    double best = 0.0, best_a = 0.0;
    for (int i = 0; i <= grid_points; ++i) {
        double a = -R + 2.0 * R * i / grid_points;
        double d = profile.derivative(a);
        if (d < best) {
            best = d;
            best_a = a;
        }
    }
    if (best >= 0.0) return std::nullopt;

    // local Newton polish on the critical-point equation Psi0''(a) = 0,
    // second derivative by central differences of the derivative evaluator
    double h = 2.0 * R / grid_points;
    double a = best_a;
    for (int it = 0; it < 8; ++it) {
        double d2 = (profile.derivative(a + h) - profile.derivative(a - h)) / (2 * h);
        double d3 = (profile.derivative(a + h) - 2 * profile.derivative(a) +
                     profile.derivative(a - h)) /
                    (h * h);
        if (d3 == 0.0) break;
        double step = d2 / d3;
        if (!std::isfinite(step) || std::fabs(step) > 2 * h) break;
        a -= step;
    }
    double polished = profile.derivative(a);
    if (polished < best) best = polished;
    return 1.0 / (-best);
}

double evaluate(const Profile1D& profile, double t, double x) {
    if (t < 0.0) throw NumericalError("burgers::evaluate: t must be nonnegative");
    if (auto T = blowup_time(profile); T && t >= *T)
        throw NumericalError("OutOfLifespan: t >= blow-up time");

    // Bracket the launch point with a fan. Pre-shock, x(a) is strictly increasing.
    const double R = search_window(profile);
    double lo = std::min(x, -R) - 1.0, hi = std::max(x, R) + 1.0;
    const int n = 2048;
    double a_lo = lo, a_hi = hi;
    double f_lo = characteristic_position(profile, t, lo) - x;
    bool bracketed = false;
    for (int i = 1; i <= n; ++i) {
        double a = lo + (hi - lo) * i / n;
        double f = characteristic_position(profile, t, a) - x;
        if (f_lo <= 0.0 && f >= 0.0) {
            a_lo = lo + (hi - lo) * (i - 1) / n;
            a_hi = a;
            bracketed = true;
            break;
        }
        f_lo = f;
    }
    if (!bracketed) throw NumericalError("NoConvergence: no bracket for launch point");

    const double tol = 1e-12;
    const int max_iter = 100;
    double a = 0.5 * (a_lo + a_hi);
    for (int it = 0; it < max_iter; ++it) {
        double f = characteristic_position(profile, t, a) - x;
        if (std::fabs(f) < tol) return profile.value(a);
        if (f > 0.0)
            a_hi = a;
        else
            a_lo = a;
        double J = jacobian(profile, t, a);
        double a_newton = a - f / J;
        // keep Newton inside the bracket; fall back to bisection otherwise
        a = (J > 0.0 && a_newton > a_lo && a_newton < a_hi) ? a_newton
                                                            : 0.5 * (a_lo + a_hi);
        if (a_hi - a_lo < tol * std::max(1.0, std::fabs(a))) return profile.value(a);
    }
    throw NumericalError("NoConvergence: root finding failed (t too close to T*?)");
}

double riccati_slope(double y0, double t) {
    double denom = 1.0 + t * y0;
    if (denom <= 0.0 && y0 < 0.0)
        throw NumericalError("Blowup: Riccati solution diverged before t");
    if (denom == 0.0) throw NumericalError("Blowup: 1 + t*y0 = 0");
    return y0 / denom;
}

}  // namespace shocklab::burgers
