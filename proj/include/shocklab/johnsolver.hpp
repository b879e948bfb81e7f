#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shocklab/profiles.hpp"

namespace shocklab::john {

// Characteristic-coordinate solver for the spherically symmetric model
//   -d_t^2(r Psi) + (1+Psi) d_r^2(r Psi) = -r (d_t Psi)^2 / (1+Psi)
// in geometric coordinates (t, u), u the eikonal function with u = 1 - r on
// the start slice. The evolved unknowns per u-node are
//   psih = r Psi,  d = r - (1-u) - tau,  mu,  W = mu Lbar(r Psi),  Q = L(r Psi),
// with tau = t - t_start carried as s = ln(1 + tau). Everything stays O(1)
// up to the shock, so lifespans of order exp(1/eps) are reachable.

struct DataSpec {
    Profile1D psi0;       // Psi at t_start
    Profile1D psi0_dot;   // d_t Psi at t_start
    double support_radius = 0.5;
    double amplitude = 1.0;     // multiplies both profiles
    double start_time = 0.0;    // 0 or -1/2
};

struct GeometricGrid {
    double U0 = 0.9;            // strip width, in (0,1)
    int n_u = 256;
    double kappa = 0.5;         // ds = kappa * du; dt = kappa*du at the start slice
    double dt_max = 0.0;        // optional cap on the start-slice step (0 = none)
    double t_max = 1e9;         // elapsed-time budget (tau), may exceed double via s_max
    double s_max = 0.0;         // 0 -> derived from t_max
    double du() const { return U0 / n_u; }
    double ds() const {
        double v = kappa * du();
        return dt_max > 0.0 ? std::min(v, dt_max) : v;
    }
};

struct StateSlice {
    double s = 0.0;             // ln(1 + tau)
    double t_start = 0.0;
    double du = 0.0;
    std::vector<double> u;      // nodes, 0..U0
    std::vector<double> psih;   // r Psi
    std::vector<double> d;      // r - (1-u) - tau
    std::vector<double> mu;
    std::vector<double> W;      // mu Lbar(r Psi)
    std::vector<double> Q;      // L(r Psi)

    double tau() const;                    // +inf once past double range
    double ln_r(int j) const;              // log of areal radius, always finite
    double r(int j) const;                 // +inf once past double range
    double psi(int j) const;               // Psi = psih / r
    double rP(int j) const;                // r L(Psi)   = Q - sqrt(1+Psi) Psi
    double rV(int j) const;                // r mu Lbar(Psi) = W + mu sqrt(1+Psi) Psi
    int n() const { return (int)u.size(); }
};

struct MonitorRecord {
    // suprema over nodes of the dispersive-bound quantities
    double r2_LPsi = 0.0;        // r^2 |L Psi|
    double r_muLbarPsi = 0.0;    // r |mu Lbar Psi|
    double r_Psi = 0.0;          // r |Psi|
    double mu_dev = 0.0;         // |mu - 1| / ln(e + tau)
    double eikonal_dev = 0.0;    // |1 - r + tau - u| / ln(e + tau)
    double mu_transport = 0.0;   // |r L mu + (1/4) r mu Lbar Psi|
};

enum class StopReason { MuStop, TimeLimit };

struct ShockReport {
    StopReason stop = StopReason::TimeLimit;
    bool shock = false;                  // min mu reached mu_stop
    double lifespan_ln1p = 0.0;          // ln(1 + tau*) extrapolated to mu = 0
    double lifespan = 0.0;               // elapsed tau*; +inf when past double range
    double lifespan_absolute = 0.0;      // t_start + tau*
    double shock_u = 0.0;                // argmin-mu node
    double mu_min_final = 1.0;
    std::vector<double> mu_min_history;  // per recorded slice
    std::vector<double> s_history;
    MonitorRecord running;               // running suprema over the whole run
    MonitorRecord at_unit_time;          // running suprema at tau = 1
    double predicted_ln1p = 0.0;         // from predict_shock_time (0 if none)
    bool predicted = false;
    double w_drift = 0.0;                // sup_t max_u |W(t,u) - W(0,u)|

    // point-of-no-return audit (nodes with mu < 1/4)
    long no_return_checked = 0;
    long no_return_violations = 0;       // slope failed to be negative
    long monotone_checked = 0;
    long monotone_violations = 0;        // mu increased after first crossing 1/4
    // blow-up mechanism: |mu Lbar Psi| (1+tau) ln(e+tau) at the argmin node,
    // fitted at the first sub-1/4 slice, must never drop below the fit
    double v_lower_c = 0.0;
    bool v_lower_ok = true;
};

struct SolverOptions {
    double mu_stop = 0.01;        // in (0, 1/4]
    double mu_floor = 1e-6;
    int history_stride = 64;      // record every k-th step
    std::function<void(const StateSlice&)> on_slice;  // called on recorded slices
};

StateSlice init_state(const DataSpec& data, const GeometricGrid& grid);

// Advance by elapsed time dt (one predictor-corrector step + Q sweeps).
void step(StateSlice& state, double dt);

// Advance by ds in logarithmic time (the native step).
void step_log(StateSlice& state, double ds);

// || centered d_u r + mu sqrt(1+Psi) ||_inf over interior nodes.
double check_constraint(const StateSlice& state);

MonitorRecord diagnostics(const StateSlice& state);

// [Lbar_flat (r Psi)](t_start, u): closed form r (Psi0_dot - Psi0') - Psi0 at r = 1-u.
double transversal_data_derivative(const DataSpec& data, double u);

// mu(t,u) = 1 - (1/4) delta(u) ln((1-u+t)/(1-u)), the leading-order transport
// of the inverse foliation density with W frozen at its initial value.
double reduced_mu_profile(const DataSpec& data, double u, double t);

struct ShockPrediction {
    double t_star = 0.0;       // elapsed; +inf if past double range
    double ln1p_t_star = 0.0;
    double u_star = 0.0;
};

// Zero of the reduced profile: t(u) = (1-u)(exp(4/delta(u)) - 1) over nodes
// with delta(u) > 0; nullopt when delta <= 0 everywhere (no shock indicated).
std::optional<ShockPrediction> predict_shock_time(const DataSpec& data, double U0,
                                                  int n_u = 2048);

ShockReport run(const DataSpec& data, const GeometricGrid& grid, const SolverOptions& opt = {});

}  // namespace shocklab::john
