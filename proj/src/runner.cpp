#include "shocklab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "shocklab/burgers.hpp"
#include "shocklab/common.hpp"
#include "shocklab/johnsolver.hpp"
#include "shocklab/nullcond.hpp"
#include "shocklab/profiles.hpp"
#include "shocklab/radiation.hpp"

namespace shocklab {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << content;
}

// ---------------------------------------------------------------- burgers

json run_burgers(const RunConfig& cfg) {
    Profile1D prof = parse_profile(cfg.get_string("profile", "gaussian:1"));
    double t_max = cfg.get_double("t_max", 2.0);
    int n_alpha = (int)cfg.get_long("n_alpha", 201);
    int n_t = (int)cfg.get_long("n_t", 21);
    double window = std::isfinite(prof.support_radius) && prof.support_radius > 0
                        ? prof.support_radius
                        : 5.0;
    double a_min = cfg.get_double("alpha_min", -window);
    double a_max = cfg.get_double("alpha_max", window);

    auto T = burgers::blowup_time(prof);

    std::string csv = "t,alpha,x,jacobian,psi\n";
    for (int it = 0; it < n_t; ++it) {
        double t = t_max * it / (n_t - 1);
        if (T && t >= *T) break;  // past the shock the fan folds over
        auto fan = burgers::make_fan(prof, t, n_alpha, a_min, a_max);
        for (int i = 0; i < n_alpha; ++i)
            csv += fmt(t) + "," + fmt(fan.alphas[i]) + "," + fmt(fan.positions[i]) + "," +
                   fmt(fan.jacobians[i]) + "," + fmt(prof.value(fan.alphas[i])) + "\n";
    }
    if (cfg.has("out_csv")) write_file(cfg.get_string("out_csv", ""), csv);

    json res;
    res["blowup_time"] = T ? json(*T) : json();
    res["has_blowup"] = bool(T);
    res["n_alpha"] = n_alpha;
    res["t_max"] = t_max;
    return res;
}

// ------------------------------------------------------------------ john

john::DataSpec data_from_config(const RunConfig& cfg, double amplitude_override = -1.0) {
    john::DataSpec data;
    data.psi0 = parse_profile(cfg.get_string("psi0", "zero"));
    data.psi0_dot = parse_profile(cfg.get_string("psi0_dot", "zero"));
    data.support_radius = cfg.get_double("support_radius", 0.5);
    data.amplitude =
        amplitude_override > 0.0 ? amplitude_override : cfg.get_double("amplitude", 1.0);
    data.start_time = cfg.get_double("start_time", -0.5);
    return data;
}

john::GeometricGrid grid_from_config(const RunConfig& cfg) {
    john::GeometricGrid grid;
    grid.U0 = cfg.get_double("U0", 0.9);
    grid.n_u = (int)cfg.get_long("n_u", 256);
    grid.kappa = cfg.get_double("kappa", 0.5);
    grid.t_max = cfg.get_double("t_max", 1e9);
    grid.s_max = cfg.get_double("s_max", 0.0);
    grid.dt_max = cfg.get_double("dt_max", 0.0);
    return grid;
}

json report_to_json(const john::ShockReport& rep) {
    json r;
    r["shock"] = rep.shock;
    r["no_shock"] = !rep.shock;
    r["lifespan_ln1p"] = rep.lifespan_ln1p;
    r["lifespan"] = std::isfinite(rep.lifespan) ? json(rep.lifespan) : json();
    r["lifespan_absolute"] =
        std::isfinite(rep.lifespan_absolute) ? json(rep.lifespan_absolute) : json();
    r["shock_u"] = rep.shock_u;
    r["mu_min_final"] = rep.mu_min_final;
    r["predicted"] = rep.predicted;
    r["predicted_ln1p"] = rep.predicted_ln1p;
    r["w_drift"] = rep.w_drift;
    r["no_return_checked"] = rep.no_return_checked;
    r["no_return_violations"] = rep.no_return_violations;
    r["monotone_checked"] = rep.monotone_checked;
    r["monotone_violations"] = rep.monotone_violations;
    r["v_lower_c"] = rep.v_lower_c;
    r["v_lower_ok"] = rep.v_lower_ok;
    json mon;
    mon["r2_LPsi"] = rep.running.r2_LPsi;
    mon["r_muLbarPsi"] = rep.running.r_muLbarPsi;
    mon["r_Psi"] = rep.running.r_Psi;
    mon["mu_dev"] = rep.running.mu_dev;
    mon["eikonal_dev"] = rep.running.eikonal_dev;
    mon["mu_transport"] = rep.running.mu_transport;
    r["monitors_sup"] = mon;
    json mon1;
    mon1["r2_LPsi"] = rep.at_unit_time.r2_LPsi;
    mon1["r_muLbarPsi"] = rep.at_unit_time.r_muLbarPsi;
    mon1["r_Psi"] = rep.at_unit_time.r_Psi;
    mon1["mu_dev"] = rep.at_unit_time.mu_dev;
    mon1["eikonal_dev"] = rep.at_unit_time.eikonal_dev;
    mon1["mu_transport"] = rep.at_unit_time.mu_transport;
    r["monitors_at_unit_time"] = mon1;
    r["mu_min_history"] = rep.mu_min_history;
    r["s_history"] = rep.s_history;
    return r;
}

std::string slice_csv_header() {
    return "t,u,psi,r,mu,W,Q,s,d,r2_LPsi,r_muLbarPsi,r_Psi,mu_dev,eikonal_dev,mu_transport\n";
}

void append_slice_csv(std::string& csv, const john::StateSlice& st) {
    double lt = log_e_plus_tau(st.s);
    double tau = st.s > 700.0 ? std::numeric_limits<double>::infinity() : std::expm1(st.s);
    double t = st.t_start + tau;
    for (int j = 0; j < st.n(); ++j) {
        double p = st.psi(j);
        double sqp = std::sqrt(1.0 + p);
        double rP = st.rP(j), rV = st.rV(j);
        double r2LPsi = scaled_mul(st.ln_r(j), st.Q[j]) - sqp * st.psih[j];
        double rLmu = -(st.mu[j] * rP + rV) / (4.0 * (1.0 + p));
        csv += fmt(t) + "," + fmt(st.u[j]) + "," + fmt(p) + "," + fmt(st.r(j)) + "," +
               fmt(st.mu[j]) + "," + fmt(st.W[j]) + "," + fmt(st.Q[j]) + "," + fmt(st.s) + "," +
               fmt(st.d[j]) + "," + fmt(std::fabs(r2LPsi)) + "," + fmt(std::fabs(rV)) + "," +
               fmt(std::fabs(st.psih[j])) + "," + fmt(std::fabs(st.mu[j] - 1.0) / lt) + "," +
               fmt(std::fabs(st.d[j]) / lt) + "," + fmt(std::fabs(rLmu + 0.25 * rV)) + "\n";
    }
}

// Refinement triple at (n_u, 2 n_u) against an 8 n_u reference on a fixed
// pre-shock window; returns {solution ratio, constraint ratio}.
std::pair<double, double> measure_order(const john::DataSpec& data, john::GeometricGrid grid,
                                        double s_end) {
    auto run_to = [&](int n_u) {
        john::GeometricGrid g = grid;
        g.n_u = n_u;
        john::StateSlice st = john::init_state(data, g);
        double ds = g.kappa * g.du();
        while (st.s < s_end - 1e-12) john::step_log(st, std::min(ds, s_end - st.s));
        return st;
    };
    john::StateSlice A = run_to(grid.n_u), B = run_to(2 * grid.n_u), R = run_to(8 * grid.n_u);
    auto err = [&](const john::StateSlice& S) {
        int k = (R.n() - 1) / (S.n() - 1);
        double e = 0.0;
        for (int j = 0; j < S.n(); ++j) {
            e = std::max(e, std::fabs(S.psih[j] - R.psih[k * j]));
            e = std::max(e, std::fabs(S.mu[j] - R.mu[k * j]));
            e = std::max(e, std::fabs(S.W[j] - R.W[k * j]));
            e = std::max(e, std::fabs(S.Q[j] - R.Q[k * j]));
        }
        return e;
    };
    return {err(A) / err(B), john::check_constraint(A) / john::check_constraint(B)};
}

json run_john_solve(const RunConfig& cfg) {
    john::DataSpec data = data_from_config(cfg);
    john::GeometricGrid grid = grid_from_config(cfg);
    john::SolverOptions opt;
    opt.mu_stop = cfg.get_double("mu_stop", 0.01);
    opt.history_stride = (int)cfg.get_long("history_stride", 64);

    std::string csv = slice_csv_header();
    if (cfg.has("out_csv"))
        opt.on_slice = [&csv](const john::StateSlice& st) { append_slice_csv(csv, st); };

    john::ShockReport rep = john::run(data, grid, opt);
    if (cfg.has("out_csv")) write_file(cfg.get_string("out_csv", ""), csv);

    json res = report_to_json(rep);
    json g;
    g["U0"] = grid.U0;
    g["n_u"] = grid.n_u;
    g["kappa"] = grid.kappa;
    g["du"] = grid.du();
    res["grid"] = g;
    if (cfg.get_long("order_check", 0) != 0) {
        double s_end = cfg.get_double("order_s", 1.0);
        auto [sol, con] = measure_order(data, grid, s_end);
        json o;
        o["solution_ratio"] = sol;
        o["constraint_ratio"] = con;
        o["window_s"] = s_end;
        res["scheme_order"] = o;
    }
    return res;
}

json run_john_predict(const RunConfig& cfg) {
    john::DataSpec data = data_from_config(cfg);
    double U0 = cfg.get_double("U0", 0.9);
    int n_u = (int)cfg.get_long("n_u", 2048);
    json res;
    auto pred = john::predict_shock_time(data, U0, n_u);
    res["shock_predicted"] = bool(pred);
    if (pred) {
        res["t_star_ln1p"] = pred->ln1p_t_star;
        res["t_star"] = std::isfinite(pred->t_star) ? json(pred->t_star) : json();
        res["u_star"] = pred->u_star;
    }
    return res;
}

json run_john_sweep(const RunConfig& cfg) {
    std::vector<double> lambdas = cfg.get_list("lambda");
    if (lambdas.size() < 2)
        throw ConfigError("UsageError: sweep needs a lambdas list with at least 2 values");

    int max_threads = (int)std::thread::hardware_concurrency();
    if (const char* env = std::getenv("SHOCKLAB_THREADS"))
        max_threads = std::max(1, std::atoi(env));
    int n_threads = std::min<int>(max_threads, (int)lambdas.size());

    struct Outcome {
        bool ok = false;
        std::string error;
        john::ShockReport rep;
    };
    std::vector<Outcome> outs(lambdas.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= lambdas.size()) return;
            try {
                john::DataSpec data = data_from_config(cfg, lambdas[i]);
                john::GeometricGrid grid = grid_from_config(cfg);
                john::SolverOptions opt;
                opt.mu_stop = cfg.get_double("mu_stop", 0.01);
                opt.history_stride = (int)cfg.get_long("history_stride", 64);
                outs[i].rep = john::run(data, grid, opt);
                outs[i].ok = true;
            } catch (const std::exception& e) {
                outs[i].error = e.what();
            }
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    size_t ok_count = 0;
    json runs = json::array();
    std::vector<double> scaled_logs;  // lambda * ln T for shock runs
    for (size_t i = 0; i < lambdas.size(); ++i) {
        json r;
        r["lambda"] = lambdas[i];
        if (outs[i].ok) {
            ++ok_count;
            r["report"] = report_to_json(outs[i].rep);
            if (outs[i].rep.shock)
                scaled_logs.push_back(lambdas[i] * outs[i].rep.lifespan_ln1p);
        } else {
            r["error"] = outs[i].error;
        }
        runs.push_back(r);
    }
    if (ok_count == 0) throw NumericalError("sweep: every run failed");

    json res;
    res["runs"] = runs;
    json fit;
    fit["lambda_ln_T"] = scaled_logs;
    if (scaled_logs.size() >= 2) {
        double lo = *std::min_element(scaled_logs.begin(), scaled_logs.end());
        double hi = *std::max_element(scaled_logs.begin(), scaled_logs.end());
        double mean = 0.0;
        for (double v : scaled_logs) mean += v;
        mean /= scaled_logs.size();
        fit["relative_spread"] = (hi - lo) / mean;
        fit["spread_defined"] = true;
    } else {
        fit["spread_defined"] = false;
        fit["note"] = "fewer than two shock runs; spread undefined";
    }
    res["scaling_fit"] = fit;
    return res;
}

// -------------------------------------------------------------- nullcond

std::map<std::string, std::vector<double>> read_numeric_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open tensor file '" + path + "'");
    std::map<std::string, std::vector<double>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::stringstream ss(line);
        std::string key, eq;
        if (!(ss >> key)) continue;
        if (!(ss >> eq) || eq != "=")
            throw ConfigError("tensor file " + path + " line " + std::to_string(lineno) +
                              ": expected 'key = numbers'");
        std::vector<double> vals;
        double v;
        while (ss >> v) vals.push_back(v);
        out[key] = vals;
    }
    return out;
}

nullcond::QuadraticNonlinearity tensors_from_file(const std::string& path) {
    auto kv = read_numeric_file(path);
    nullcond::QuadraticNonlinearity nl;
    for (const auto& [key, vals] : kv) {
        if (key == "A") {
            if (vals.size() != 64) throw ConfigError("tensor A needs 64 entries");
            nullcond::Tens3 t;
            std::copy(vals.begin(), vals.end(), t.begin());
            nl.A = nullcond::symmetrized_first_two(t);
        } else if (key == "Aprime") {
            if (vals.size() != 16) throw ConfigError("tensor Aprime needs 16 entries");
            nullcond::Mat4 m;
            std::copy(vals.begin(), vals.end(), m.begin());
            nl.Aprime = nullcond::symmetrized(m);
        } else if (key == "N") {
            if (vals.size() != 16) throw ConfigError("tensor N needs 16 entries");
            nullcond::Mat4 m;
            std::copy(vals.begin(), vals.end(), m.begin());
            nl.N = nullcond::symmetrized(m);
        } else if (key != "kind") {
            throw ConfigError("UnknownKey: '" + key + "' in tensor file " + path);
        }
    }
    return nl;
}

nullcond::MetricFamily metric_from_spec(const std::string& spec) {
    std::string name = spec, args;
    if (auto c = spec.find(':'); c != std::string::npos) {
        name = spec.substr(0, c);
        args = spec.substr(c + 1);
    }
    if (name == "john") return nullcond::john_metric();
    if (name == "conformal") return nullcond::conformal_metric(args.empty() ? 1.0 : std::strtod(args.c_str(), nullptr));
    if (name == "offdiag") return nullcond::offdiag_metric();
    if (name == "dt_grad_sq") return nullcond::dt_grad_sq_system();
    if (name == "dtphi_dttphi") return nullcond::dtphi_dttphi_system();
    if (name == "file") {
        auto kv = read_numeric_file(args);
        // kind is the only non-numeric key; fall back on which tensor is present
        bool scalar;
        {
            std::ifstream in(args);
            std::string line, kind;
            while (std::getline(in, line)) {
                std::stringstream ss(line);
                std::string key, eq;
                if (ss >> key >> eq && key == "kind" && eq == "=") ss >> kind;
            }
            if (kind == "scalar_gPsi")
                scalar = true;
            else if (kind == "system_gdPhi")
                scalar = false;
            else
                scalar = kv.count("G2") != 0;
        }
        if (scalar) {
            auto it = kv.find("G2");
            if (it == kv.end() || it->second.size() != 16)
                throw ConfigError("metric file: scalar kind needs G2 with 16 entries");
            nullcond::Mat4 m;
            std::copy(it->second.begin(), it->second.end(), m.begin());
            return nullcond::MetricFamily::scalar(m);
        }
        auto it = kv.find("G3");
        if (it == kv.end() || it->second.size() != 64)
            throw ConfigError("metric file: system kind needs G3 with 64 entries");
        nullcond::Tens3 t;
        std::copy(it->second.begin(), it->second.end(), t.begin());
        return nullcond::MetricFamily::system(t);
    }
    throw ConfigError("unknown metric '" + spec + "'");
}

radiation::AlephFn aleph_from_spec(const std::string& spec) {
    std::string name = spec, args;
    if (auto c = spec.find(':'); c != std::string::npos) {
        name = spec.substr(0, c);
        args = spec.substr(c + 1);
    }
    if (name == "const") {
        double v = std::strtod(args.c_str(), nullptr);
        return [v](const Vec3&) { return v; };
    }
    nullcond::MetricFamily mf = metric_from_spec(spec);
    return [mf](const Vec3& th) { return nullcond::aleph_plus(mf, th); };
}

nullcond::FluidLagrangian lagrangian_from_spec(const std::string& spec, double k) {
    std::string name = spec, args;
    if (auto c = spec.find(':'); c != std::string::npos) {
        name = spec.substr(0, c);
        args = spec.substr(c + 1);
    }
    if (name == "exceptional") return nullcond::exceptional_lagrangian(k);
    if (name == "linear") return nullcond::linear_lagrangian(k);
    if (name == "quadratic") {
        double a = 1.0, b = 1.0;
        if (!args.empty()) {
            std::stringstream ss(args);
            std::string tok;
            if (std::getline(ss, tok, ',')) a = std::strtod(tok.c_str(), nullptr);
            if (std::getline(ss, tok, ',')) b = std::strtod(tok.c_str(), nullptr);
        }
        return nullcond::quadratic_lagrangian(a, b, k);
    }
    throw ConfigError("unknown lagrangian '" + spec + "'");
}

json run_nullcond_check(const RunConfig& cfg) {
    if (!cfg.has("tensors")) throw ConfigError("nullcond.check needs tensors = <file>");
    auto nl = tensors_from_file(cfg.get_string("tensors", ""));
    int n_dirs = (int)cfg.get_long("n_dirs", 4096);
    auto r = nullcond::check_classic_null(nl, n_dirs);
    json res;
    res["passes"] = r.passes;
    res["max_violation"] = r.max_violation;
    res["max_violation_A"] = r.max_violation_A;
    res["max_violation_N"] = r.max_violation_N;
    res["witness_theta"] = {r.witness.theta.x, r.witness.theta.y, r.witness.theta.z};
    res["witness_ell0"] = r.witness.ell[0];
    return res;
}

json run_nullcond_aleph(const RunConfig& cfg) {
    nullcond::MetricFamily mf = metric_from_spec(cfg.get_string("metric", "john"));
    int n_dirs = (int)cfg.get_long("theta_grid", cfg.get_long("n_dirs", 4096));
    auto dirs = fibonacci_sphere(n_dirs);
    double lo_p = 0, hi_p = 0, lo_m = 0, hi_m = 0;
    std::string csv = "theta1,theta2,theta3,aleph_plus,aleph_minus\n";
    bool first = true;
    for (const Vec3& th : dirs) {
        double ap = nullcond::aleph_plus(mf, th);
        double am = nullcond::aleph_minus(mf, th);
        if (first) {
            lo_p = hi_p = ap;
            lo_m = hi_m = am;
            first = false;
        }
        lo_p = std::min(lo_p, ap);
        hi_p = std::max(hi_p, ap);
        lo_m = std::min(lo_m, am);
        hi_m = std::max(hi_m, am);
        csv += fmt(th.x) + "," + fmt(th.y) + "," + fmt(th.z) + "," + fmt(ap) + "," + fmt(am) +
               "\n";
    }
    if (cfg.has("out_csv")) write_file(cfg.get_string("out_csv", ""), csv);
    json res;
    res["aleph_plus_range"] = {lo_p, hi_p};
    res["aleph_minus_range"] = {lo_m, hi_m};
    res["identically_zero"] = std::max(std::fabs(lo_p), std::fabs(hi_p)) <= 1e-12;
    res["n_dirs"] = n_dirs;
    return res;
}

json run_nullcond_fluid(const RunConfig& cfg) {
    double k = cfg.get_double("k", 0.5);
    double tol = cfg.get_double("tol", 1e-10);
    auto fl = lagrangian_from_spec(cfg.get_string("lagrangian", "exceptional"), k);
    auto fd = nullcond::fluid_derived(fl);
    json res;
    res["k"] = k;
    res["sigma0"] = fd.sigma0;
    res["eta0"] = fd.eta0;
    res["dHdsigma_at_k2"] = fd.dHdsigma_at_k2;
    res["positivity_ok"] = fd.positivity_ok;
    res["exceptional"] = std::fabs(fd.dHdsigma_at_k2) <= tol;
    res["G_at_k2"] = fd.G(fd.sigma0);
    res["F_at_k2"] = fd.F(fd.sigma0);
    res["H_at_k2"] = fd.H(fd.sigma0);
    return res;
}

// -------------------------------------------------------------- lifespan

radiation::SpatialField field_from_spec(const std::string& spec) {
    if (spec == "zero") return radiation::SpatialField::zero();
    if (spec.rfind("ball:", 0) == 0)
        return radiation::SpatialField::ball_indicator(std::strtod(spec.c_str() + 5, nullptr));
    if (spec == "gauss3d") return radiation::SpatialField::gaussian();
    return radiation::SpatialField::from_radial(parse_profile(spec));
}

json run_lifespan(const RunConfig& cfg) {
    auto phi0 = field_from_spec(cfg.get_string("phi0", "zero"));
    auto phi0_dot = field_from_spec(cfg.get_string("phi0_dot", "zero"));
    auto aleph = aleph_from_spec(cfg.get_string("aleph", "john"));
    radiation::GridOptions gopt;
    gopt.q_points = (int)cfg.get_long("q_points", 513);
    gopt.sphere_points = (int)cfg.get_long("sphere_points", 1024);

    auto est = radiation::john_hormander_sup(phi0, phi0_dot, aleph, gopt);
    json res;
    res["sup_value"] = est.sup_value;
    res["argmax_q"] = est.argmax_q;
    res["argmax_theta"] = {est.argmax_theta.x, est.argmax_theta.y, est.argmax_theta.z};
    res["degenerate"] = est.sup_value <= 0.0;

    json bounds = json::array();
    for (double lam : cfg.get_list("lambda")) {
        json b;
        b["lambda"] = lam;
        b["log_bound"] = est.sup_value > 0.0 ? json(est.log_bound(lam)) : json();
        double lin = est.sup_value > 0.0 ? est.bound(lam) : 0.0;
        b["bound"] = est.sup_value > 0.0 && std::isfinite(lin) ? json(lin) : json();
        bounds.push_back(b);
    }
    res["bounds"] = bounds;

    if (cfg.has("out_csv")) {
        auto rf = radiation::build_radiation_field(phi0, phi0_dot, gopt);
        std::string csv = "q,theta1,theta2,theta3,F,d2F\n";
        const bool radial = phi0.radial && phi0_dot.radial;
        size_t n_theta_rows = radial ? 1 : rf.theta_grid.size();
        for (size_t kk = 0; kk < n_theta_rows; ++kk) {
            const Vec3& th = rf.theta_grid[kk];
            for (size_t i = 0; i < rf.q_grid.size(); ++i)
                csv += fmt(rf.q_grid[i]) + "," + fmt(th.x) + "," + fmt(th.y) + "," + fmt(th.z) +
                       "," + fmt(rf.values[kk][i]) + "," + fmt(rf.d2q[kk][i]) + "\n";
        }
        write_file(cfg.get_string("out_csv", ""), csv);
    }

    if (cfg.has("chris_lagrangian")) {
        double k = cfg.get_double("chris_k", 0.5);
        auto fl = lagrangian_from_spec(cfg.get_string("chris_lagrangian", "quadratic"), k);
        auto fd = nullcond::fluid_derived(fl);
        json chris;
        chris["eta0"] = fd.eta0;
        chris["ell"] = fd.dHdsigma_at_k2;
        json svals = json::array();
        for (double U : cfg.get_list("chris_U")) {
            double S = radiation::christodoulou_S(phi0, phi0_dot, k, fd.eta0, U);
            auto ind = radiation::christodoulou_criterion(S, fd.dHdsigma_at_k2);
            json e;
            e["U"] = U;
            e["S"] = S;
            e["shock_indicated"] = ind.shock_indicated;
            e["note"] = ind.note;
            svals.push_back(e);
        }
        chris["S"] = svals;
        res["christodoulou"] = chris;
    }
    return res;
}

}  // namespace

json run_experiment(const RunConfig& cfg) {
    json summary;
    summary["subcommand"] = cfg.subcommand;
    summary["config"] = cfg.kv;
    summary["seed"] = cfg.seed;

    if (cfg.subcommand == "burgers")
        summary["results"] = run_burgers(cfg);
    else if (cfg.subcommand == "john.solve")
        summary["results"] = run_john_solve(cfg);
    else if (cfg.subcommand == "john.predict")
        summary["results"] = run_john_predict(cfg);
    else if (cfg.subcommand == "john.sweep")
        summary["results"] = run_john_sweep(cfg);
    else if (cfg.subcommand == "nullcond.check")
        summary["results"] = run_nullcond_check(cfg);
    else if (cfg.subcommand == "nullcond.aleph")
        summary["results"] = run_nullcond_aleph(cfg);
    else if (cfg.subcommand == "nullcond.fluid")
        summary["results"] = run_nullcond_fluid(cfg);
    else if (cfg.subcommand == "lifespan")
        summary["results"] = run_lifespan(cfg);
    else
        throw ConfigError("unknown subcommand '" + cfg.subcommand + "'");
    return summary;
}

json sweep(const RunConfig& cfg) { return run_experiment(cfg); }

std::string summary_to_string(const json& summary) { return summary.dump(2) + "\n"; }

}  // namespace shocklab
