#include "newtonflow/cnmtr.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace newtonflow {

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::MaxIterations: return "MaxIterations";
        case SolveStatus::MaxTrials: return "MaxTrials";
        case SolveStatus::LinearSolveFailure: return "LinearSolveFailure";
        case SolveStatus::NonFinite: return "NonFinite";
        case SolveStatus::LineSearchStall: return "LineSearchStall";
        case SolveStatus::GradientStall: return "GradientStall";
    }
    return "Unknown";
}

void SolverConfig::validate() const {
    if (!(dt0 > 0)) throw std::invalid_argument("SolverConfig: dt0 must be positive");
    if (!(c_eps > 0)) throw std::invalid_argument("SolverConfig: c_eps must be positive");
    if (!(eta_a > 0)) throw std::invalid_argument("SolverConfig: eta_a must be positive");
    if (!(0 < eta1 && eta1 < eta2 && eta2 < 1)) {
        throw std::invalid_argument("SolverConfig: need 0 < eta1 < eta2 < 1");
    }
    if (!(gamma1 > 1)) throw std::invalid_argument("SolverConfig: gamma1 must exceed 1");
    if (!(0 < gamma2 && gamma2 < 1)) {
        throw std::invalid_argument("SolverConfig: gamma2 must lie in (0,1)");
    }
    if (maxit <= 0) throw std::invalid_argument("SolverConfig: maxit must be positive");
    if (!(tol > 0)) throw std::invalid_argument("SolverConfig: tol must be positive");
    if (max_trials && *max_trials <= 0) {
        throw std::invalid_argument("SolverConfig: max_trials must be positive");
    }
    if (mu_override && !(*mu_override >= 0)) {
        throw std::invalid_argument("SolverConfig: mu_override must be nonnegative");
    }
}

double mu_switch(double dt, double c_eps) {
    return dt <= 1.0 / c_eps ? c_eps : 1.0 / dt;
}

Vector newton_step(const Matrix& J, const Vector& F, double mu) {
    Matrix shifted = -J;
    shifted.diagonal().array() += mu;
    return lu_factor(shifted).solve(F);
}

Vector damped_step(const Vector& sP, double dt) {
    return (dt / (1.0 + dt)) * sP;
}

double trust_ratio(double res_old, double res_new, double res_pred) {
    if (res_old <= res_pred) {
        return -1.0;
    }
    return (res_old - res_new) / (res_old - res_pred);
}

double update_dt(double dt, double rho, const SolverConfig& cfg) {
    const double deviation = std::abs(1.0 - rho);
    if (deviation <= cfg.eta1) return cfg.gamma1 * dt;
    if (deviation < cfg.eta2) return dt;
    return cfg.gamma2 * dt;
}

namespace {

/// Per-solve evaluation bookkeeping around an immutable Problem.
class Evaluator {
public:
    Evaluator(const Problem& p, JacobianMode mode) : p_(p), mode_(mode) {}

    Vector residual(const Vector& x) {
        ++n_feval;
        return p_.residual(x);
    }

    Matrix jacobian(const Vector& x, const Vector& fx) {
        if (mode_ == JacobianMode::Analytic) {
            return p_.jacobian(x);
        }
        n_feval += x.size();
        return forward_difference_jacobian(p_.residual, x, fx);
    }

    long n_feval = 0;

private:
    const Problem& p_;
    JacobianMode mode_;
};

JacobianMode resolve_mode(const Problem& p, const std::optional<JacobianMode>& requested) {
    if (requested) {
        if (*requested == JacobianMode::Analytic && !p.has_analytic_jacobian()) {
            throw std::invalid_argument("solve: analytic Jacobian requested but not registered for " +
                                        p.name);
        }
        return *requested;
    }
    return p.has_analytic_jacobian() ? JacobianMode::Analytic : JacobianMode::ForwardDifference;
}

}  // namespace

SolveReport solve_cnmtr(const Problem& p, const SolverConfig& cfg, std::optional<Vector> x0,
                        const TrialObserver& observer) {
    cfg.validate();
    const auto t_start = std::chrono::steady_clock::now();

    SolveReport report;
    Vector x = x0 ? std::move(*x0) : p.default_start;
    if (x.size() != p.dimension) {
        throw DimensionMismatchError("solve_cnmtr(" + p.name + "): start point has length " +
                                     std::to_string(x.size()) + ", expected " +
                                     std::to_string(p.dimension));
    }

    Evaluator eval(p, resolve_mode(p, cfg.jacobian_mode));
    const int max_trials = cfg.resolved_max_trials();

    auto finish = [&](SolveStatus status, const Vector& fx) {
        report.status = status;
        report.final_x = x;
        report.final_res_inf = fx.allFinite() ? inf_norm(fx)
                                              : std::numeric_limits<double>::quiet_NaN();
        report.n_feval = eval.n_feval;
        report.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return report;
    };

    Vector fx = eval.residual(x);
    if (!fx.allFinite()) {
        return finish(SolveStatus::NonFinite, fx);
    }

    double dt = cfg.dt0;
    double res2 = fx.norm();
    bool success = true;  // flag_success_trialstep
    Matrix J;
    Vector sP;
    double mu = 0.0;
    int nonfinite_run = 0;
    SolveStatus status = SolveStatus::MaxIterations;

    while (report.itc < cfg.maxit) {
        if (success) {
            ++report.itc;
            if (inf_norm(fx) < cfg.tol) {
                status = SolveStatus::Converged;
                break;
            }
            try {
                J = eval.jacobian(x, fx);
                ++report.n_jeval;
            } catch (const NonFiniteJacobianError&) {
                status = SolveStatus::NonFinite;
                break;
            }
            if (!J.allFinite()) {
                status = SolveStatus::NonFinite;
                break;
            }
            mu = cfg.mu_override ? *cfg.mu_override : mu_switch(dt, cfg.c_eps);
            try {
                Matrix shifted = -J;
                shifted.diagonal().array() += mu;
                ++report.n_factor;
                sP = lu_factor(shifted).solve(fx);
            } catch (const Error&) {
                status = SolveStatus::LinearSolveFailure;
                break;
            }
            if (!sP.allFinite()) {
                status = SolveStatus::LinearSolveFailure;
                break;
            }
        }

        if (report.trials >= max_trials) {
            status = SolveStatus::MaxTrials;
            break;
        }
        ++report.trials;

        const double dt_used = dt;
        const Vector s = damped_step(sP, dt_used);
        const Vector x_trial = x + s;
        const Vector f_trial = eval.residual(x_trial);

        IterationRecord rec;
        rec.trial = report.trials;
        rec.itc = report.itc;
        rec.dt = dt_used;
        rec.mu = mu;
        rec.step_norm = s.norm();

        if (!f_trial.allFinite()) {
            rec.rho = -1.0;
            rec.res_inf = std::numeric_limits<double>::quiet_NaN();
            rec.res_2 = std::numeric_limits<double>::quiet_NaN();
            ++nonfinite_run;
            if (nonfinite_run > cfg.max_nonfinite_rejections) {
                rec.accepted = false;
                report.trace.push_back(rec);
                if (observer) {
                    observer(TrialEvent{report.trace.back(), x, eval.n_feval, report.n_jeval,
                                        report.n_factor});
                }
                status = SolveStatus::NonFinite;
                break;
            }
        } else {
            nonfinite_run = 0;
            rec.res_inf = inf_norm(f_trial);
            rec.res_2 = f_trial.norm();
            const double res_pred = (fx + J * s).norm();
            rec.rho = trust_ratio(res2, rec.res_2, res_pred);
        }

        dt = update_dt(dt, rec.rho, cfg);
        rec.accepted = rec.rho >= cfg.eta_a;
        if (rec.accepted) {
            x = x_trial;
            fx = f_trial;
            res2 = rec.res_2;
            success = true;
        } else {
            // Keep x, F, J, mu and the cached step s^P; only dt changed.
            success = false;
        }
        report.trace.push_back(rec);
        if (observer) {
            observer(TrialEvent{report.trace.back(), x, eval.n_feval, report.n_jeval,
                                report.n_factor});
        }
    }

    return finish(status, fx);
}

}  // namespace newtonflow
