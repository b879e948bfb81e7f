#pragma once

#include <functional>
#include <limits>
#include <string>

namespace shocklab {

// One-dimensional data profile: value and a consistent derivative evaluator.
// The derivative may be supplied analytically (built-ins) or synthesized by
// 4th-order central differences, so the type stays closed under user-defined
// profiles.
struct Profile1D {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    double support_radius = std::numeric_limits<double>::infinity();

    double operator()(double x) const { return value(x); }

    // Wrap an evaluator, synthesizing the derivative by finite differences.
    static Profile1D from_function(std::function<double(double)> f, double support_radius);

    // amplitude * this
    Profile1D scaled(double amplitude) const;
};

// Built-in profiles.
Profile1D zero_profile();
Profile1D constant_profile(double c);
Profile1D linear_profile(double slope);                        // slope * x
Profile1D gaussian_profile(double a, double c, double w);      // a exp(-((x-c)/w)^2)
Profile1D poly_bump_profile(double a, double p, double R);     // a (1-(x/R)^2)^p on |x| <= R
Profile1D cinf_bump_profile(double a, double R);               // a exp(-1/(1-(x/R)^2)) on |x| < R

// Parse "name" / "name:p1,p2,..." / "expr:<expression>@R" into a profile.
// Expression profiles are clamped to zero outside the declared support radius.
Profile1D parse_profile(const std::string& spec);

}  // namespace shocklab
