#pragma once

#include <optional>
#include <vector>

#include "shocklab/profiles.hpp"

namespace shocklab::burgers {

// Exact method-of-characteristics machinery for d_t Psi + Psi d_x Psi = 0.
// Characteristics are straight lines x(t,a) = a + t Psi0(a); Psi is constant
// along them and d_x Psi obeys the Riccati equation y' = -y^2, so the solution
// map degenerates exactly where the Jacobian 1 + t Psi0'(a) first vanishes.

struct CharacteristicFan {
    std::vector<double> alphas;     // sorted launch points
    std::vector<double> positions;  // a + t Psi0(a)
    std::vector<double> jacobians;  // 1 + t Psi0'(a)
    double time = 0.0;
};

double characteristic_position(const Profile1D& profile, double t, double alpha);
double jacobian(const Profile1D& profile, double t, double alpha);

CharacteristicFan make_fan(const Profile1D& profile, double t, int n_alpha,
                           double alpha_min, double alpha_max);

// T* = 1 / max_a(-Psi0'(a)), or nullopt when Psi0' >= 0 everywhere.
// Dense-grid minimization of Psi0' over the support followed by a local polish.
std::optional<double> blowup_time(const Profile1D& profile, int grid_points = 100000);

// Solve x = a + t Psi0(a) for the launch point and return Psi0(a).
// Newton with bisection fallback, bracket taken from a characteristic fan.
// Throws OutOfLifespan (t >= T*) or NoConvergence.
double evaluate(const Profile1D& profile, double t, double x);

// Exact Riccati solution y0 / (1 + t y0) of y' = -y^2; throws on blow-up.
double riccati_slope(double y0, double t);

}  // namespace shocklab::burgers
