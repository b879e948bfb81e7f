#include "shocklab/radiation.hpp"

#include <algorithm>
#include <cmath>

namespace shocklab::radiation {

SpatialField SpatialField::zero() {
    SpatialField f;
    f.eval = [](const Vec3&) { return 0.0; };
    f.support_radius = 0.0;
    f.radial = [](double) { return 0.0; };
    f.radial_derivative = [](double) { return 0.0; };
    return f;
}

SpatialField SpatialField::from_radial(const Profile1D& p) {
    SpatialField f;
    auto v = p.value;
    auto d = p.derivative;
    f.eval = [v](const Vec3& y) { return v(y.norm()); };
    f.grad = [d](const Vec3& y) {
        double r = y.norm();
        if (r == 0.0) return Vec3{};
        return y * (d(r) / r);
    };
    f.radial = v;
    f.radial_derivative = d;
    f.support_radius = p.support_radius;
    return f;
}

SpatialField SpatialField::ball_indicator(double R) {
    SpatialField f;
    f.eval = [R](const Vec3& y) { return y.norm() <= R ? 1.0 : 0.0; };
    f.radial = [R](double r) { return r <= R ? 1.0 : 0.0; };
    f.support_radius = R;
    return f;
}

SpatialField SpatialField::gaussian() {
    SpatialField f;
    f.eval = [](const Vec3& y) { return std::exp(-y.dot(y)); };
    f.grad = [](const Vec3& y) { return y * (-2.0 * std::exp(-y.dot(y))); };
    f.radial = [](double r) { return std::exp(-r * r); };
    f.radial_derivative = [](double r) { return -2.0 * r * std::exp(-r * r); };
    f.support_radius = 8.0;  // below 1.6e-28 beyond
    return f;
}

SpatialField SpatialField::scaled(double a) const {
    SpatialField f = *this;
    auto e = eval;
    f.eval = [e, a](const Vec3& y) { return a * e(y); };
    if (grad) {
        auto g = grad;
        f.grad = [g, a](const Vec3& y) { return g(y) * a; };
    }
    if (radial) {
        auto r = radial;
        f.radial = [r, a](double x) { return a * r(x); };
    }
    if (radial_derivative) {
        auto rd = radial_derivative;
        f.radial_derivative = [rd, a](double x) { return a * rd(x); };
    }
    return f;
}

namespace {

// Deterministic orthonormal basis of the plane with normal theta.
void plane_basis(const Vec3& theta, Vec3& e1, Vec3& e2) {
    Vec3 a = std::fabs(theta.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    double d = a.dot(theta);
    e1 = a - theta * d;
    e1 = e1 * (1.0 / e1.norm());
    e2 = {theta.y * e1.z - theta.z * e1.y, theta.z * e1.x - theta.x * e1.z,
          theta.x * e1.y - theta.y * e1.x};
}

double radon_once(const SpatialField& f, double q, const Vec3& theta, int nr, int na) {
    const double R = f.support_radius;
    double rho_max2 = R * R - q * q;
    if (rho_max2 <= 0.0) return 0.0;
    double rho_max = std::sqrt(rho_max2);

    if (f.radial) {
        // Plane integral of a radial function: 2 pi int_{|q|}^{R} f(s) s ds.
        auto& fr = *(&f.radial);
        return 2.0 * M_PI *
               integrate_gl([&](double s) { return fr(s) * s; }, std::fabs(q), R, nr);
    }

    Vec3 e1, e2;
    plane_basis(theta, e1, e2);
    Vec3 center = theta * q;
    const auto& gl = gauss_legendre(nr);
    double acc = 0.0;
    for (int i = 0; i < nr; ++i) {
        double rho = 0.5 * rho_max * (gl.x[i] + 1.0);
        double wi = 0.5 * rho_max * gl.w[i] * rho;
        double ring = 0.0;
        for (int j = 0; j < na; ++j) {
            double phi = 2.0 * M_PI * j / na;
            Vec3 y = center + e1 * (rho * std::cos(phi)) + e2 * (rho * std::sin(phi));
            ring += f.eval(y);
        }
        acc += wi * ring * (2.0 * M_PI / na);
    }
    return acc;
}

}  // namespace

double radon(const SpatialField& f, double q, const Vec3& theta, const QuadratureOptions& opt) {
    if (std::fabs(theta.norm() - 1.0) > 1e-12)
        throw ConfigError("radon: theta must be a unit vector");
    if (std::fabs(q) >= f.support_radius) return 0.0;

    int nr = opt.radial_points, na = opt.angular_points;
    double prev = radon_once(f, q, theta, nr, na);
    for (int lvl = 0; lvl < opt.max_refinements; ++lvl) {
        nr *= 2;
        na *= 2;
        double cur = radon_once(f, q, theta, nr, na);
        if (std::fabs(cur - prev) <= opt.abs_tol) return cur;
        prev = cur;
    }
    throw QuadratureError("radon: refinement stalled above tolerance");
}

double friedlander(const SpatialField& phi0, const SpatialField& phi0_dot, double q,
                   const Vec3& theta, const FriedlanderOptions& opt) {
    const double inv4pi = 1.0 / (4.0 * M_PI);
    double term_dot =
        phi0_dot.is_zero() ? 0.0 : inv4pi * radon(phi0_dot, q, theta, opt.quad);
    if (phi0.is_zero()) return term_dot;

    double dq_radon;
    if (opt.use_gradient_if_available && phi0.grad) {
        // d/dq Radon[f](q,theta) = Radon[theta . grad f](q,theta)
        auto g = phi0.grad;
        SpatialField dirderiv;
        dirderiv.eval = [g, theta](const Vec3& y) { return theta.dot(g(y)); };
        dirderiv.support_radius = phi0.support_radius;
        dq_radon = radon(dirderiv, q, theta, opt.quad);
    } else {
        double h = opt.dq_step > 0.0 ? opt.dq_step : phi0.support_radius / 512.0;
        auto Rq = [&](double qq) { return radon(phi0, qq, theta, opt.quad); };
        dq_radon = (-Rq(q + 2 * h) + 8 * Rq(q + h) - 8 * Rq(q - h) + Rq(q - 2 * h)) / (12 * h);
    }
    return -inv4pi * dq_radon + term_dot;
}

RadiationField build_radiation_field(const SpatialField& phi0, const SpatialField& phi0_dot,
                                     const GridOptions& opt) {
    RadiationField rf;
    double R = std::max(phi0.support_radius, phi0_dot.support_radius);
    if (R <= 0.0) R = 1.0;
    int nq = opt.q_points;
    rf.q_grid.resize(nq);
    for (int i = 0; i < nq; ++i) rf.q_grid[i] = -R + 2.0 * R * i / (nq - 1);
    rf.theta_grid = fibonacci_sphere(opt.sphere_points);

    const bool radial = phi0.radial && phi0_dot.radial;
    const double h = rf.q_grid[1] - rf.q_grid[0];
    const double nan = std::numeric_limits<double>::quiet_NaN();

    auto fill_row = [&](const Vec3& th, std::vector<double>& vals, std::vector<double>& d2) {
        vals.resize(nq);
        d2.assign(nq, nan);
        for (int i = 0; i < nq; ++i) vals[i] = friedlander(phi0, phi0_dot, rf.q_grid[i], th, opt.fr);
        for (int i = 2; i + 2 < nq; ++i)
            d2[i] = (-vals[i + 2] + 16 * vals[i + 1] - 30 * vals[i] + 16 * vals[i - 1] -
                     vals[i - 2]) /
                    (12 * h * h);
    };

    if (radial) {
        // theta-independent: compute one row, share it
        std::vector<double> vals, d2;
        fill_row(Vec3{0, 0, 1}, vals, d2);
        rf.values.assign(rf.theta_grid.size(), vals);
        rf.d2q.assign(rf.theta_grid.size(), d2);
    } else {
        rf.values.resize(rf.theta_grid.size());
        rf.d2q.resize(rf.theta_grid.size());
        for (size_t k = 0; k < rf.theta_grid.size(); ++k)
            fill_row(rf.theta_grid[k], rf.values[k], rf.d2q[k]);
    }
    return rf;
}

double LifespanEstimate::log_bound(double lambda) const {
    if (lambda <= 0.0) throw ConfigError("lifespan bound: lambda must be positive");
    if (sup_value <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (lambda * sup_value);
}

double LifespanEstimate::bound(double lambda) const {
    double lb = log_bound(lambda);
    return lb > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(lb);
}

LifespanEstimate john_hormander_sup(const SpatialField& phi0, const SpatialField& phi0_dot,
                                    const AlephFn& aleph, const GridOptions& opt) {
    RadiationField rf = build_radiation_field(phi0, phi0_dot, opt);
    LifespanEstimate est;
    est.sup_value = 0.0;
    size_t best_k = 0;
    int best_i = 0;
    bool found = false;
    for (size_t k = 0; k < rf.theta_grid.size(); ++k) {
        double al = aleph(rf.theta_grid[k]);
        for (int i = 2; i + 2 < (int)rf.q_grid.size(); ++i) {
            double v = 0.5 * al * rf.d2q[k][i];
            if (!found || v > est.sup_value) {
                est.sup_value = v;
                best_k = k;
                best_i = i;
                found = true;
            }
        }
    }
    if (!found) return est;  // zero data / degenerate grid
    est.argmax_q = rf.q_grid[best_i];
    est.argmax_theta = rf.theta_grid[best_k];

    // One refinement pass near the argmax: 4x denser q-window there, at the
    // argmax direction and its nearest neighbours.
    const double h = rf.q_grid[1] - rf.q_grid[0];
    std::vector<size_t> dirs = {best_k};
    {
        std::vector<std::pair<double, size_t>> near;
        for (size_t k = 0; k < rf.theta_grid.size(); ++k)
            if (k != best_k)
                near.push_back({-rf.theta_grid[k].dot(rf.theta_grid[best_k]), k});
        std::sort(near.begin(), near.end());
        for (size_t j = 0; j < std::min<size_t>(4, near.size()); ++j)
            dirs.push_back(near[j].second);
    }
    const double hf = h / 4.0;
    for (size_t k : dirs) {
        double al = aleph(rf.theta_grid[k]);
        for (int m = -12; m <= 12; ++m) {
            double q = est.argmax_q + m * hf;
            auto F = [&](double qq) {
                return friedlander(phi0, phi0_dot, qq, rf.theta_grid[k], opt.fr);
            };
            double d2 = (-F(q + 2 * hf) + 16 * F(q + hf) - 30 * F(q) + 16 * F(q - hf) -
                         F(q - 2 * hf)) /
                        (12 * hf * hf);
            double v = 0.5 * al * d2;
            if (v > est.sup_value) {
                est.sup_value = v;
                est.argmax_q = q;
                est.argmax_theta = rf.theta_grid[k];
            }
        }
    }
    if (est.sup_value < 0.0) est.sup_value = 0.0;  // compact data: sup is >= 0, clip noise
    return est;
}

bool positivity_check(const SpatialField& phi0, const SpatialField& phi0_dot,
                      const AlephFn& aleph, const GridOptions& opt) {
    return john_hormander_sup(phi0, phi0_dot, aleph, opt).sup_value > 1e-10;
}

bool positivity_trials(const AlephFn& aleph, int n_trials, uint64_t seed,
                       const GridOptions& opt) {
    Rng rng(seed);
    for (int t = 0; t < n_trials; ++t) {
        double a0 = rng.uniform(-1.0, 1.0);
        double a1 = rng.uniform(-1.0, 1.0);
        if (std::fabs(a0) < 0.05) a0 = 0.3;  // keep the pair nontrivial
        double R0 = rng.uniform(0.3, 1.0), R1 = rng.uniform(0.3, 1.0);
        int p0 = 2 + (int)(rng.next_u64() % 4), p1 = 2 + (int)(rng.next_u64() % 4);
        auto f0 = SpatialField::from_radial(poly_bump_profile(a0, p0, R0));
        auto f1 = SpatialField::from_radial(poly_bump_profile(a1, p1, R1));
        if (!positivity_check(f0, f1, aleph, opt)) return false;
    }
    return true;
}

double christodoulou_S(const SpatialField& phi0, const SpatialField& phi0_dot, double k,
                       double eta0, double U, const QuadratureOptions& opt) {
    if (!(U > 0.0 && U < 1.0)) throw ConfigError("christodoulou_S: U must lie in (0,1)");
    if (!(eta0 > 0.0 && eta0 < 1.0)) throw ConfigError("christodoulou_S: eta0 must lie in (0,1)");
    const double r_in = 1.0 - U;

    if (phi0.radial && phi0_dot.radial) {
        auto dphi0 = [&](double r) {
            if (phi0.radial_derivative) return phi0.radial_derivative(r);
            const double h = 1e-6;
            return (phi0.radial(r + h) - phi0.radial(r - h)) / (2 * h);
        };
        double sphere = 4.0 * M_PI * r_in * r_in * r_in *
                        ((phi0_dot.radial(r_in) - k) - eta0 * dphi0(r_in));
        double volume = 4.0 * M_PI *
                        integrate_gl(
                            [&](double r) {
                                return r * r *
                                       (2.0 * (phi0_dot.radial(r) - k) - eta0 * dphi0(r));
                            },
                            r_in, 1.0, opt.radial_points);
        return sphere + volume;
    }

    // general data: product quadrature, sphere grid x Gauss-Legendre radius
    auto dirs = fibonacci_sphere(1024);
    const double w_dir = 4.0 * M_PI / dirs.size();
    auto radial_deriv = [&](const Vec3& y, const Vec3& th) {
        if (phi0.grad) return th.dot(phi0.grad(y));
        const double h = 1e-6;
        return (phi0.eval(y + th * h) - phi0.eval(y - th * h)) / (2 * h);
    };
    double sphere = 0.0, volume = 0.0;
    for (const Vec3& th : dirs) {
        Vec3 y = th * r_in;
        sphere += r_in * ((phi0_dot.eval(y) - k) - eta0 * radial_deriv(y, th));
        volume += integrate_gl(
            [&](double r) {
                Vec3 z = th * r;
                return r * r * (2.0 * (phi0_dot.eval(z) - k) - eta0 * radial_deriv(z, th));
            },
            r_in, 1.0, opt.radial_points);
    }
    return (sphere * r_in * r_in + volume) * w_dir;
}

ShockIndicator christodoulou_criterion(double S_value, double ell) {
    ShockIndicator out;
    if (ell > 0.0 && S_value < 0.0) {
        out.shock_indicated = true;
        out.note = "ell > 0 and S < 0";
    } else if (ell < 0.0 && S_value > 0.0) {
        out.shock_indicated = true;
        out.note = "ell < 0 and S > 0";
    } else {
        out.shock_indicated = false;
        out.note = "sign structure not met (threshold constant not computable here)";
    }
    return out;
}

}  // namespace shocklab::radiation
