#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "newtonflow/problem.hpp"

namespace newtonflow {

enum class SolveStatus {
    Converged,
    MaxIterations,
    MaxTrials,
    LinearSolveFailure,
    NonFinite,
    LineSearchStall,  // damped-Newton baseline only
    GradientStall,    // damped-Newton baseline with grad_tol set
};

const char* to_string(SolveStatus status);

/// Tunable constants of the continuation Newton solver.
///
/// The defaults are the published ones: eta_a = 1e-6, eta1 = 0.25,
/// gamma1 = 2, eta2 = 0.75, gamma2 = 0.5, maxit = 400, dt0 = 1e-2,
/// c_eps = 1e-6, and an infinity-norm residual target of 1e-6.
struct SolverConfig {
    double dt0 = 1e-2;      ///< initial time step
    double c_eps = 1e-6;    ///< regularization constant of the mu switch
    double eta_a = 1e-6;    ///< acceptance threshold on the trust ratio
    double eta1 = 0.25;     ///< |1 - rho| <= eta1 grows dt
    double eta2 = 0.75;     ///< |1 - rho| >= eta2 shrinks dt
    double gamma1 = 2.0;    ///< growth factor
    double gamma2 = 0.5;    ///< shrink factor
    int maxit = 400;        ///< cap on accepted iterations
    double tol = 1e-6;      ///< infinity-norm residual target

    /// Cap on total trial steps including rejections; 10*maxit when unset.
    std::optional<int> max_trials;
    /// Analytic when available, forward differences otherwise; set to force.
    std::optional<JacobianMode> jacobian_mode;
    /// Fixed regularization parameter replacing the mu switch (testing knob;
    /// 0 recovers the unregularized continuation Newton step).
    std::optional<double> mu_override;
    /// Consecutive non-finite trial residuals tolerated before giving up.
    int max_nonfinite_rejections = 50;

    int resolved_max_trials() const { return max_trials ? *max_trials : 10 * maxit; }

    /// Throws std::invalid_argument when the parameter invariants
    /// (0 < eta1 < eta2 < 1, gamma2 < 1 < gamma1, eta_a > 0, ...) fail.
    void validate() const;
};

/// One row of the per-trial trace. `dt` and `mu` are the values used to form
/// the trial step; the residual norms are taken at the trial point.
struct IterationRecord {
    int trial = 0;  ///< 1-based index over all trials, including rejected ones
    int itc = 0;    ///< accepted-iteration counter at the time of the trial
    double dt = 0.0;
    double mu = 0.0;
    double rho = 0.0;
    double res_inf = 0.0;
    double res_2 = 0.0;
    double step_norm = 0.0;
    bool accepted = false;
};

struct SolveReport {
    SolveStatus status = SolveStatus::NonFinite;
    Vector final_x;
    double final_res_inf = std::numeric_limits<double>::infinity();
    int itc = 0;
    int trials = 0;
    long n_feval = 0;
    long n_jeval = 0;
    long n_factor = 0;
    std::vector<IterationRecord> trace;
    double wall_time_seconds = 0.0;
};

/// Snapshot handed to a trial observer after each accept/reject decision.
/// `x` is the current iterate (the trial point when accepted, unchanged
/// otherwise); counters are cumulative.
struct TrialEvent {
    const IterationRecord& record;
    const Vector& x;
    long n_feval = 0;
    long n_jeval = 0;
    long n_factor = 0;
};

using TrialObserver = std::function<void(const TrialEvent&)>;

/// Regularization parameter: c_eps while dt <= 1/c_eps, 1/dt beyond.
double mu_switch(double dt, double c_eps);

/// Solve (mu*I - J) s = F for the regularized Newton step s^P.
Vector newton_step(const Matrix& J, const Vector& F, double mu);

/// Damp the step: s = (dt / (1 + dt)) * sP; the factor lies in (0, 1).
Vector damped_step(const Vector& sP, double dt);

/// Residual trust-region ratio (res_old - res_new) / (res_old - res_pred),
/// or -1 when the predicted reduction res_old - res_pred is not positive.
double trust_ratio(double res_old, double res_new, double res_pred);

/// Adjust the time step from the ratio: grow by gamma1 when |1 - rho| <= eta1,
/// keep when eta1 < |1 - rho| < eta2, shrink by gamma2 otherwise.
double update_dt(double dt, double rho, const SolverConfig& cfg);

/// Continuation Newton method with residual trust-region time stepping.
///
/// Starts from `x0` (the problem's default start when absent) and runs until
/// ||F||_inf < cfg.tol or a failure status applies. Failures are reported in
/// the status, not thrown. One IterationRecord is traced per trial step.
SolveReport solve_cnmtr(const Problem& p, const SolverConfig& cfg = {},
                        std::optional<Vector> x0 = std::nullopt,
                        const TrialObserver& observer = {});

}  // namespace newtonflow
