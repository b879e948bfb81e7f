#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shocklab {

// Error taxonomy, mapped onto CLI exit codes (0 ok, 2 config, 3 numerical, 4 quadrature).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual int exit_code() const { return 1; }
};
struct ConfigError : Error {
    using Error::Error;
    int exit_code() const override { return 2; }
};
struct NumericalError : Error {
    using Error::Error;
    int exit_code() const override { return 3; }
};
struct QuadratureError : Error {
    using Error::Error;
    int exit_code() const override { return 4; }
};

inline double sq(double x) { return x * x; }

// ln(e + tau) for tau represented as s = ln(1 + tau); stable for all s >= 0.
inline double log_e_plus_tau(double s) {
    if (s < 30.0)
        return std::log(M_E + std::expm1(s));
    // e + tau = e^s (1 + (e-1) e^{-s})
    return s + std::log1p((M_E - 1.0) * std::exp(-s));
}

// sign(x) * exp(expo + ln|x|): product e^expo * x without overflowing the
// intermediate when expo is large and x tiny (or vice versa). Returns 0 for x = 0.
inline double scaled_mul(double expo, double x) {
    if (x == 0.0) return 0.0;
    double lg = expo + std::log(std::fabs(x));
    if (lg > 700.0) throw NumericalError("scaled_mul overflow");
    double v = std::exp(lg);
    return x < 0.0 ? -v : v;
}

struct Vec3 {
    double x = 0, y = 0, z = 0;
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double a) const { return {a * x, a * y, a * z}; }
};

// Golden-angle spiral sample of the unit sphere; deterministic, avoids the poles.
std::vector<Vec3> fibonacci_sphere(int n);

// Gauss-Legendre nodes/weights on [a, b]. Nodes by Newton iteration on P_n; cached per order.
struct GaussLegendre {
    std::vector<double> x, w;  // on [-1, 1]
    explicit GaussLegendre(int n);
};
const GaussLegendre& gauss_legendre(int n);

// One-dimensional integral of f over [a, b] with n-point Gauss-Legendre.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

// Deterministic RNG for the property suites (xoshiro-style splitmix; independent of libstdc++).
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next_u64() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform(double a, double b) {
        return a + (b - a) * (next_u64() >> 11) * 0x1.0p-53;
    }
};

}  // namespace shocklab
