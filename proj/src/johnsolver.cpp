#include "shocklab/johnsolver.hpp"

#include <algorithm>
#include <cmath>

#include "shocklab/common.hpp"

namespace shocklab::john {

namespace {

// r = e^s + (d - u) identically: at s = 0 this is 1 - u + d, and the
// background r = 1 - u + tau is the d = 0 member.
double ln_radius(double s, double u, double d) {
    if (s < 700.0) return std::log(std::exp(s) + (d - u));
    return s + std::log1p((d - u) * std::exp(-s));
}

struct NodeDerived {
    double lr;     // ln r
    double Psi;
    double sqp;    // sqrt(1 + Psi)
    double rP;     // r L Psi
    double rV;     // r mu Lbar Psi
    double es_r;   // e^s / r = (1 + tau) / r
};

NodeDerived derive(double s, double u, double psih, double d, double mu, double W, double Q) {
    NodeDerived nd;
    nd.lr = ln_radius(s, u, d);
    nd.Psi = psih * std::exp(-nd.lr);
    double hp = 1.0 + nd.Psi;
    if (!(hp > 0.0)) throw NumericalError("HyperbolicityLost: 1 + Psi <= 0");
    nd.sqp = std::sqrt(hp);
    nd.rP = Q - nd.sqp * nd.Psi;
    nd.rV = W + mu * nd.sqp * nd.Psi;
    nd.es_r = std::exp(s - nd.lr);
    return nd;
}

struct Slopes {
    std::vector<double> psih, d, mu, W;
};

// d/ds of (psih, d, mu, W) at fixed u; ds = e^s dt eliminates every
// unrepresentable magnitude: all factors below are O(1) up to the shock.
Slopes slopes(const StateSlice& st, double s) {
    int n = st.n();
    Slopes k{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
             std::vector<double>(n)};
    for (int j = 0; j < n; ++j) {
        NodeDerived nd = derive(s, st.u[j], st.psih[j], st.d[j], st.mu[j], st.W[j], st.Q[j]);
        double hp = 1.0 + nd.Psi;
        k.psih[j] = scaled_mul(s, st.Q[j]);
        k.d[j] = st.psih[j] * nd.es_r / (1.0 + nd.sqp);
        k.mu[j] = -nd.es_r * (st.mu[j] * nd.rP + nd.rV) / (4.0 * hp);
        double er2 = std::exp(s - 2.0 * nd.lr);
        k.W[j] = nd.es_r * 0.5 * nd.rP * nd.rV / hp +
                 er2 * 0.25 * st.psih[j] * (nd.rV - st.mu[j] * nd.rP) / nd.sqp;
    }
    return k;
}

double rhs_inside(double s, double u, double psih, double d, double mu, double W, double Qmid) {
    double lr = ln_radius(s, u, d);
    double inv_r = std::exp(-lr);
    double Psi = psih * inv_r;
    double hp = 1.0 + Psi;
    if (!(hp > 0.0)) throw NumericalError("HyperbolicityLost: 1 + Psi <= 0");
    double sqp = std::sqrt(hp);
    double rP = Qmid - sqp * Psi;
    double rV = W + mu * sqp * Psi;
    return 0.25 * (mu * rP * rP + 3.0 * rP * rV) / hp * inv_r +
           0.5 * psih * rV / sqp * inv_r * inv_r;
}

// Recover Q on the new level from the characteristic relation
//   mu d_t Q + 2 d_u Q = RHS,   Q(u=0) = 0,
// discretized as a theta-weighted two-level scheme in t and integrated in u:
//   mu_mid (X - Q_old)/dt + 2 d_u [th X + (1-th) Q_old] = th RHS_new(X) + (1-th) RHS_old.
// th = 1/2 + O(ds) keeps second order while damping the two-level difference
// mode, which otherwise persists once 1/dt underflows at late times. The
// backward-difference term is linear in X and handled implicitly, so the sweep
// is stable for any dt; RHS_new gets one predictor/corrector pass.
std::vector<double> sweep_q(const StateSlice& old_st, double s_old, double s_new, double theta,
                            const std::vector<double>& psih_new,
                            const std::vector<double>& d_new, const std::vector<double>& mu_new,
                            const std::vector<double>& W_new, double inv_dt) {
    int n = old_st.n();
    const double du = old_st.du;
    const std::vector<double>& Qo = old_st.Q;

    std::vector<double> dQo(n), rhs_old(n);
    for (int j = 0; j < n; ++j) {
        if (j == 0)
            dQo[j] = (-3.0 * Qo[0] + 4.0 * Qo[1] - Qo[2]) / (2.0 * du);
        else if (j == n - 1)
            dQo[j] = (3.0 * Qo[n - 1] - 4.0 * Qo[n - 2] + Qo[n - 3]) / (2.0 * du);
        else
            dQo[j] = (Qo[j + 1] - Qo[j - 1]) / (2.0 * du);
        rhs_old[j] = rhs_inside(s_old, old_st.u[j], old_st.psih[j], old_st.d[j], old_st.mu[j],
                                old_st.W[j], Qo[j]);
    }

    auto rhs_new = [&](int j, double Xj) {
        return rhs_inside(s_new, old_st.u[j], psih_new[j], d_new[j], mu_new[j], W_new[j], Xj);
    };
    auto coef = [&](int j) { return 0.5 * (old_st.mu[j] + mu_new[j]) * inv_dt / (2.0 * theta); };
    // explicit part of d_u X at node j (everything except the implicit -coef*X)
    auto expl = [&](int j, double Xj) {
        return (theta * rhs_new(j, Xj) + (1.0 - theta) * rhs_old[j] -
                2.0 * (1.0 - theta) * dQo[j]) /
                   (2.0 * theta) +
               coef(j) * Qo[j];
    };

    std::vector<double> X(n, 0.0);
    for (int j = 0; j + 1 < n; ++j) {
        double Gj = expl(j, X[j]) - coef(j) * X[j];
        double Xt = X[j] + du * Gj;  // predictor
        double a = 0.5 * du * coef(j + 1);
        X[j + 1] = (X[j] + 0.5 * du * (Gj + expl(j + 1, Xt))) / (1.0 + a);
        // flush values with no physical content; otherwise the damped mode
        // parks at the denormal floor and e^s eventually amplifies it
        if (std::fabs(X[j + 1]) < 1e-300) X[j + 1] = 0.0;
    }
    return X;
}

}  // namespace

double StateSlice::tau() const { return std::expm1(s); }
double StateSlice::ln_r(int j) const { return ln_radius(s, u[j], d[j]); }
double StateSlice::r(int j) const {
    double lr = ln_r(j);
    return lr > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(lr);
}
double StateSlice::psi(int j) const { return psih[j] * std::exp(-ln_r(j)); }
double StateSlice::rP(int j) const {
    double p = psi(j);
    return Q[j] - std::sqrt(1.0 + p) * p;
}
double StateSlice::rV(int j) const {
    double p = psi(j);
    return W[j] + mu[j] * std::sqrt(1.0 + p) * p;
}

StateSlice init_state(const DataSpec& data, const GeometricGrid& grid) {
    if (!(grid.U0 > 0.0 && grid.U0 < 1.0))
        throw ConfigError("init_state: U0 must lie in (0,1) (coordinates degenerate at the origin)");
    if (grid.n_u < 4) throw ConfigError("init_state: n_u too small");
    if (!(grid.kappa > 0.0)) throw ConfigError("init_state: kappa must be positive");
    bool start_half = std::fabs(data.start_time + 0.5) < 1e-12;
    if (!start_half && std::fabs(data.start_time) > 1e-12)
        throw ConfigError("init_state: start_time must be 0 or -1/2");
    if (!(data.support_radius > 0.0 && data.support_radius <= 1.0))
        throw ConfigError("init_state: support_radius must lie in (0,1]");
    if (start_half && data.support_radius > 0.5 + 1e-12)
        throw ConfigError("init_state: start at -1/2 requires support in {r <= 1/2}");
    // data must vanish outside the declared support
    for (double rr : {data.support_radius * 1.02 + 1e-6, 0.5 * (data.support_radius + 1.0), 1.0}) {
        if (rr > 1.0 || rr <= data.support_radius) continue;
        if (std::fabs(data.psi0.value(rr)) > 1e-12 || std::fabs(data.psi0_dot.value(rr)) > 1e-12)
            throw ConfigError("init_state: data do not vanish outside support_radius");
    }

    StateSlice st;
    st.s = 0.0;
    st.t_start = start_half ? -0.5 : 0.0;
    st.du = grid.du();
    int n = grid.n_u + 1;
    st.u.resize(n);
    st.psih.resize(n);
    st.d.assign(n, 0.0);
    st.mu.resize(n);
    st.W.resize(n);
    st.Q.resize(n);
    const double lam = data.amplitude;
    for (int j = 0; j < n; ++j) {
        double u = j * st.du;
        double r0 = 1.0 - u;
        double ps = lam * data.psi0.value(r0);
        double psd = lam * data.psi0_dot.value(r0);
        double dps = lam * data.psi0.derivative(r0);
        if (1.0 + ps <= 0.0) throw ConfigError("InvalidData: 1 + Psi0 <= 0");
        double sq0 = std::sqrt(1.0 + ps);
        st.u[j] = u;
        st.psih[j] = r0 * ps;
        st.mu[j] = 1.0 / sq0;
        st.Q[j] = r0 * psd + sq0 * (ps + r0 * dps);
        st.W[j] = st.mu[j] * (r0 * psd - sq0 * (ps + r0 * dps));
    }
    return st;
}

void step_log(StateSlice& st, double ds) {
    if (!(ds > 0.0)) throw ConfigError("step_log: ds must be positive");
    const double s0 = st.s;
    Slopes k0 = slopes(st, s0);

    int n = st.n();
    std::vector<double> psih_p(n), d_p(n), mu_p(n), W_p(n);
    for (int j = 0; j < n; ++j) {
        psih_p[j] = st.psih[j] + ds * k0.psih[j];
        d_p[j] = st.d[j] + ds * k0.d[j];
        mu_p[j] = st.mu[j] + ds * k0.mu[j];
        W_p[j] = st.W[j] + ds * k0.W[j];
    }
    // inv_dt = 1/(tau(s0+ds) - tau(s0)) = e^{-s0} / (e^{ds} - 1); underflow at
    // late times just switches the backward-difference term off, as it should.
    double inv_dt = std::exp(-s0) / std::expm1(ds);
    double theta = 0.5 + std::min(0.2, ds);

    std::vector<double> Q_p = sweep_q(st, s0, s0 + ds, theta, psih_p, d_p, mu_p, W_p, inv_dt);

    StateSlice pred = st;
    pred.s = s0 + ds;
    pred.psih = psih_p;
    pred.d = d_p;
    pred.mu = mu_p;
    pred.W = W_p;
    pred.Q = Q_p;
    Slopes k1 = slopes(pred, s0 + ds);

    for (int j = 0; j < n; ++j) {
        st.psih[j] += 0.5 * ds * (k0.psih[j] + k1.psih[j]);
        st.d[j] += 0.5 * ds * (k0.d[j] + k1.d[j]);
        st.mu[j] += 0.5 * ds * (k0.mu[j] + k1.mu[j]);
        st.W[j] += 0.5 * ds * (k0.W[j] + k1.W[j]);
    }
    st.Q = sweep_q(st, s0, s0 + ds, theta, st.psih, st.d, st.mu, st.W, inv_dt);
    st.s = s0 + ds;

    double mu_min = *std::min_element(st.mu.begin(), st.mu.end());
    if (mu_min <= 0.0)
        throw NumericalError("MuVanished: shock crossed inside a single step");
    for (double v : st.psih)
        if (!std::isfinite(v)) throw NumericalError("step: non-finite state");
}

void step(StateSlice& st, double dt) {
    if (!(dt > 0.0)) throw ConfigError("step: dt must be positive");
    double ds = std::log1p(dt * std::exp(-st.s));
    if (ds <= 0.0) throw NumericalError("step: dt below time resolution at this epoch");
    step_log(st, ds);
}

double check_constraint(const StateSlice& st) {
    double worst = 0.0;
    for (int j = 1; j + 1 < st.n(); ++j) {
        double ddu = (st.d[j + 1] - st.d[j - 1]) / (2.0 * st.du);
        double p = st.psi(j);
        double res = -1.0 + ddu + st.mu[j] * std::sqrt(1.0 + p);
        worst = std::max(worst, std::fabs(res));
    }
    return worst;
}

MonitorRecord diagnostics(const StateSlice& st) {
    MonitorRecord m;
    double lt = log_e_plus_tau(st.s);
    for (int j = 0; j < st.n(); ++j) {
        double lr = st.ln_r(j);
        double Psi = st.psih[j] * std::exp(-lr);
        double hp = 1.0 + Psi;
        double sqp = std::sqrt(hp);
        double rP = st.Q[j] - sqp * Psi;
        double rV = st.W[j] + st.mu[j] * sqp * Psi;
        double r2LPsi = scaled_mul(lr, st.Q[j]) - sqp * st.psih[j];
        double rLmu = -(st.mu[j] * rP + rV) / (4.0 * hp);
        m.r2_LPsi = std::max(m.r2_LPsi, std::fabs(r2LPsi));
        m.r_muLbarPsi = std::max(m.r_muLbarPsi, std::fabs(rV));
        m.r_Psi = std::max(m.r_Psi, std::fabs(st.psih[j]));
        m.mu_dev = std::max(m.mu_dev, std::fabs(st.mu[j] - 1.0) / lt);
        m.eikonal_dev = std::max(m.eikonal_dev, std::fabs(st.d[j]) / lt);
        m.mu_transport = std::max(m.mu_transport, std::fabs(rLmu + 0.25 * rV));
    }
    return m;
}

double transversal_data_derivative(const DataSpec& data, double u) {
    if (!(u >= 0.0 && u < 1.0))
        throw ConfigError("transversal_data_derivative: u must lie in [0,1)");
    double r0 = 1.0 - u;
    return data.amplitude *
           (r0 * (data.psi0_dot.value(r0) - data.psi0.derivative(r0)) - data.psi0.value(r0));
}

double reduced_mu_profile(const DataSpec& data, double u, double t) {
    if (t < 0.0) throw ConfigError("reduced_mu_profile: t must be nonnegative");
    double delta = transversal_data_derivative(data, u);
    return 1.0 - 0.25 * delta * std::log1p(t / (1.0 - u));
}

namespace {

// ln(1 + t(u)) with t(u) = (1-u)(exp(E) - 1), stable for any E = 4/delta.
double ln1p_shock_time(double u, double E) {
    if (E < 30.0) return std::log1p((1.0 - u) * std::expm1(E));
    // 1 + t = (1-u) e^E + u
    return E + std::log(1.0 - u) + std::log1p(u * std::exp(-E) / (1.0 - u));
}

}  // namespace

std::optional<ShockPrediction> predict_shock_time(const DataSpec& data, double U0, int n_u) {
    if (!(U0 > 0.0 && U0 < 1.0)) throw ConfigError("predict_shock_time: U0 must lie in (0,1)");
    bool any = false;
    ShockPrediction best;
    for (int j = 1; j <= n_u; ++j) {
        double u = U0 * j / n_u;
        double delta = transversal_data_derivative(data, u);
        if (delta <= 0.0) continue;
        double ln1p_t = ln1p_shock_time(u, 4.0 / delta);
        if (!any || ln1p_t < best.ln1p_t_star) {
            any = true;
            best.ln1p_t_star = ln1p_t;
            best.u_star = u;
        }
    }
    if (!any) return std::nullopt;
    best.t_star = best.ln1p_t_star > 700.0 ? std::numeric_limits<double>::infinity()
                                           : std::expm1(best.ln1p_t_star);
    return best;
}

ShockReport run(const DataSpec& data, const GeometricGrid& grid, const SolverOptions& opt) {
    if (!(opt.mu_stop > 0.0 && opt.mu_stop <= 0.25))
        throw ConfigError("run: mu_stop must lie in (0, 1/4]");
    StateSlice st = init_state(data, grid);
    const double ds = grid.ds();
    const double s_max = grid.s_max > 0.0 ? grid.s_max : std::log1p(grid.t_max);

    ShockReport rep;
    if (auto pred = predict_shock_time(data, grid.U0)) {
        rep.predicted = true;
        rep.predicted_ln1p = pred->ln1p_t_star;
    }
    const std::vector<double> W0 = st.W;
    std::vector<bool> below_quarter(st.n(), false);
    std::vector<double> mu_prev = st.mu;
    double s_prev = st.s;
    double mu_min_prev = 1.0;
    bool unit_recorded = false;
    double vlower_c = -1.0;

    auto mu_min_of = [&]() { return *std::min_element(st.mu.begin(), st.mu.end()); };
    auto argmin_mu = [&]() {
        return (int)(std::min_element(st.mu.begin(), st.mu.end()) - st.mu.begin());
    };
    auto record = [&]() {
        rep.s_history.push_back(st.s);
        rep.mu_min_history.push_back(mu_min_of());
        if (opt.on_slice) opt.on_slice(st);
    };

    record();
    long step_count = 0;
    while (st.s < s_max - 1e-14 && mu_min_of() > opt.mu_stop) {
        if (mu_min_of() <= opt.mu_floor)
            throw NumericalError("run: mu fell below mu_floor before mu_stop");
        mu_prev = st.mu;
        s_prev = st.s;
        mu_min_prev = mu_min_of();
        double ds_step = std::min(ds, s_max - st.s);
        step_log(st, ds_step);
        ++step_count;

        // point-of-no-return audit: nodes below 1/4 must keep shrinking
        for (int j = 0; j < st.n(); ++j) {
            if (mu_prev[j] < 0.25) {
                ++rep.no_return_checked;
                if (!(st.mu[j] < mu_prev[j])) ++rep.no_return_violations;
            }
            if (below_quarter[j]) {
                ++rep.monotone_checked;
                if (st.mu[j] > mu_prev[j] + 1e-14) ++rep.monotone_violations;
            }
            if (st.mu[j] < 0.25) below_quarter[j] = true;
        }

        MonitorRecord m = diagnostics(st);
        auto acc = [](double& dst, double v) { dst = std::max(dst, v); };
        acc(rep.running.r2_LPsi, m.r2_LPsi);
        acc(rep.running.r_muLbarPsi, m.r_muLbarPsi);
        acc(rep.running.r_Psi, m.r_Psi);
        acc(rep.running.mu_dev, m.mu_dev);
        acc(rep.running.eikonal_dev, m.eikonal_dev);
        acc(rep.running.mu_transport, m.mu_transport);
        if (!unit_recorded && st.s >= std::log(2.0)) {  // tau = 1
            rep.at_unit_time = rep.running;
            unit_recorded = true;
        }

        // blow-up mechanism: |V| (1+tau) ln(e+tau) at the argmin node, fitted at
        // the first sub-1/4 slice and checked thereafter
        int jm = argmin_mu();
        if (st.mu[jm] < 0.25) {
            double lr = st.ln_r(jm);
            double mv = std::fabs(st.rV(jm)) * std::exp(st.s - lr) * log_e_plus_tau(st.s);
            if (vlower_c < 0.0)
                vlower_c = 0.99 * mv;
            else if (mv < vlower_c)
                rep.v_lower_ok = false;
        }

        for (int j = 0; j < st.n(); ++j)
            rep.w_drift = std::max(rep.w_drift, std::fabs(st.W[j] - W0[j]));

        if (step_count % opt.history_stride == 0) record();
    }
    record();
    if (!unit_recorded) rep.at_unit_time = rep.running;
    rep.v_lower_c = std::max(vlower_c, 0.0);

    rep.mu_min_final = mu_min_of();
    int jm = argmin_mu();
    rep.shock_u = st.u[jm];
    if (rep.mu_min_final <= opt.mu_stop) {
        rep.stop = StopReason::MuStop;
        rep.shock = true;
        // linear extrapolation in mu to zero, slope from the last two slices
        double slope = (rep.mu_min_final - mu_min_prev) / (st.s - s_prev);
        rep.lifespan_ln1p = slope < 0.0 ? st.s - rep.mu_min_final / slope : st.s;
        rep.lifespan = rep.lifespan_ln1p > 700.0 ? std::numeric_limits<double>::infinity()
                                                 : std::expm1(rep.lifespan_ln1p);
        rep.lifespan_absolute = st.t_start + rep.lifespan;
    } else {
        rep.stop = StopReason::TimeLimit;  // NoShock: a valid outcome
        rep.shock = false;
        rep.lifespan_ln1p = st.s;
        rep.lifespan = std::expm1(std::min(st.s, 700.0));
        rep.lifespan_absolute = st.t_start + rep.lifespan;
    }
    return rep;
}

}  // namespace shocklab::john
