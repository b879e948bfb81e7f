#include "shocklab/profiles.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "shocklab/common.hpp"
#include "shocklab/expr.hpp"

namespace shocklab {

Profile1D Profile1D::from_function(std::function<double(double)> f, double support_radius) {
    Profile1D p;
    p.value = f;
    p.support_radius = support_radius;
    const double h = 1e-5;
    p.derivative = [f, h](double x) {
        return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
    };
    return p;
}

Profile1D Profile1D::scaled(double amplitude) const {
    Profile1D p;
    auto v = value, d = derivative;
    p.value = [v, amplitude](double x) { return amplitude * v(x); };
    p.derivative = [d, amplitude](double x) { return amplitude * d(x); };
    p.support_radius = support_radius;
    return p;
}

Profile1D zero_profile() {
    Profile1D p;
    p.value = [](double) { return 0.0; };
    p.derivative = [](double) { return 0.0; };
    p.support_radius = 0.0;
    return p;
}

Profile1D constant_profile(double c) {
    Profile1D p;
    p.value = [c](double) { return c; };
    p.derivative = [](double) { return 0.0; };
    return p;
}

Profile1D linear_profile(double slope) {
    Profile1D p;
    p.value = [slope](double x) { return slope * x; };
    p.derivative = [slope](double) { return slope; };
    return p;
}

Profile1D gaussian_profile(double a, double c, double w) {
    Profile1D p;
    p.value = [=](double x) { return a * std::exp(-sq((x - c) / w)); };
    p.derivative = [=](double x) {
        return -2.0 * (x - c) / sq(w) * a * std::exp(-sq((x - c) / w));
    };
    // effectively compact: below 1e-28 of peak
    p.support_radius = std::fabs(c) + 8.0 * w;
    return p;
}

Profile1D poly_bump_profile(double a, double p_exp, double R) {
    Profile1D p;
    p.value = [=](double x) {
        double y = sq(x / R);
        return y < 1.0 ? a * std::pow(1.0 - y, p_exp) : 0.0;
    };
    p.derivative = [=](double x) {
        double y = sq(x / R);
        return y < 1.0 ? a * p_exp * std::pow(1.0 - y, p_exp - 1.0) * (-2.0 * x / sq(R)) : 0.0;
    };
    p.support_radius = R;
    return p;
}

Profile1D cinf_bump_profile(double a, double R) {
    Profile1D p;
    p.value = [=](double x) {
        double y = sq(x / R);
        return y < 1.0 ? a * std::exp(-1.0 / (1.0 - y)) : 0.0;
    };
    p.derivative = [=](double x) {
        double y = sq(x / R);
        if (y >= 1.0) return 0.0;
        double g = 1.0 - y;
        return a * std::exp(-1.0 / g) * (-2.0 * x / (sq(R) * sq(g)));
    };
    p.support_radius = R;
    return p;
}

Profile1D parse_profile(const std::string& spec) {
    std::string name = spec, args;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        args = spec.substr(colon + 1);
    }
    if (name == "expr") {
        double R = std::numeric_limits<double>::infinity();
        std::string body = args;
        if (auto at = args.rfind('@'); at != std::string::npos) {
            R = std::strtod(args.c_str() + at + 1, nullptr);
            body = args.substr(0, at);
        }
        Expr e = Expr::parse(body);
        auto f = [e, R](double x) { return std::fabs(x) <= R ? e.eval(x) : 0.0; };
        return Profile1D::from_function(f, R);
    }
    std::vector<double> v;
    std::stringstream ss(args);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) v.push_back(std::strtod(tok.c_str(), nullptr));
    auto want = [&](size_t lo, size_t hi) {
        if (v.size() < lo || v.size() > hi)
            throw ConfigError("profile '" + name + "': wrong number of parameters in \"" + spec +
                              "\"");
    };
    if (name == "zero") return zero_profile();
    if (name == "const") {
        want(1, 1);
        return constant_profile(v[0]);
    }
    if (name == "linear") {
        want(1, 1);
        return linear_profile(v[0]);
    }
    if (name == "gaussian") {
        want(1, 3);
        double a = v[0], c = v.size() > 1 ? v[1] : 0.0, w = v.size() > 2 ? v[2] : 1.0;
        return gaussian_profile(a, c, w);
    }
    if (name == "poly_bump") {
        want(2, 3);
        double R = v.size() > 2 ? v[2] : 0.5;
        return poly_bump_profile(v[0], v[1], R);
    }
    if (name == "cinf_bump") {
        want(1, 2);
        double R = v.size() > 1 ? v[1] : 0.5;
        return cinf_bump_profile(v[0], R);
    }
    throw ConfigError("unknown profile '" + name + "'");
}

}  // namespace shocklab
