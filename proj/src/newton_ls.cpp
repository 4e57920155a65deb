#include "newtonflow/newton_ls.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace newtonflow {

void LineSearchConfig::validate() const {
    if (!(alpha_init > 0)) throw std::invalid_argument("LineSearchConfig: alpha_init must be positive");
    if (!(0 < backtrack_factor && backtrack_factor < 1)) {
        throw std::invalid_argument("LineSearchConfig: backtrack_factor must lie in (0,1)");
    }
    if (!(0 < armijo_c && armijo_c < 1)) {
        throw std::invalid_argument("LineSearchConfig: armijo_c must lie in (0,1)");
    }
    if (max_backtracks < 0) throw std::invalid_argument("LineSearchConfig: max_backtracks must be nonnegative");
    if (maxit <= 0) throw std::invalid_argument("LineSearchConfig: maxit must be positive");
    if (!(tol > 0)) throw std::invalid_argument("LineSearchConfig: tol must be positive");
    if (grad_tol && !(*grad_tol > 0)) {
        throw std::invalid_argument("LineSearchConfig: grad_tol must be positive");
    }
}

SolveReport solve_damped_newton(const Problem& p, const LineSearchConfig& cfg,
                                std::optional<Vector> x0) {
    cfg.validate();
    const auto t_start = std::chrono::steady_clock::now();

    SolveReport report;
    Vector x = x0 ? std::move(*x0) : p.default_start;
    if (x.size() != p.dimension) {
        throw DimensionMismatchError("solve_damped_newton(" + p.name +
                                     "): start point has length " + std::to_string(x.size()) +
                                     ", expected " + std::to_string(p.dimension));
    }
    const bool analytic = cfg.jacobian_mode
                              ? *cfg.jacobian_mode == JacobianMode::Analytic
                              : p.has_analytic_jacobian();
    if (analytic && !p.has_analytic_jacobian()) {
        throw std::invalid_argument("solve_damped_newton: analytic Jacobian requested but not registered");
    }

    auto finish = [&](SolveStatus status, const Vector& fx) {
        report.status = status;
        report.final_x = x;
        report.final_res_inf = fx.allFinite() ? inf_norm(fx)
                                              : std::numeric_limits<double>::quiet_NaN();
        report.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return report;
    };

    Vector fx = p.residual(x);
    ++report.n_feval;
    if (!fx.allFinite()) {
        return finish(SolveStatus::NonFinite, fx);
    }

    while (true) {
        if (inf_norm(fx) < cfg.tol) {
            return finish(SolveStatus::Converged, fx);
        }
        Matrix J;
        if (analytic) {
            J = p.jacobian(x);
        } else {
            J = forward_difference_jacobian(p.residual, x, fx);
            report.n_feval += x.size();
        }
        ++report.n_jeval;
        if (!J.allFinite()) {
            return finish(SolveStatus::NonFinite, fx);
        }
        if (cfg.grad_tol && (J.transpose() * fx).norm() < *cfg.grad_tol) {
            return finish(SolveStatus::GradientStall, fx);
        }
        if (report.itc >= cfg.maxit) {
            return finish(SolveStatus::MaxIterations, fx);
        }

        Vector s;
        try {
            ++report.n_factor;
            s = lu_factor(J).solve(-fx);
        } catch (const Error&) {
            return finish(SolveStatus::LinearSolveFailure, fx);
        }
        if (!s.allFinite()) {
            return finish(SolveStatus::LinearSolveFailure, fx);
        }

        // Armijo backtracking on f = 0.5*||F||^2 whose Newton directional
        // derivative is exactly -2 f(x).
        const double f0 = 0.5 * fx.squaredNorm();
        const double res2 = fx.norm();
        double alpha = cfg.alpha_init;
        bool found = false;
        Vector x_trial, f_trial;
        for (int k = 0; k <= cfg.max_backtracks; ++k) {
            x_trial = x + alpha * s;
            f_trial = p.residual(x_trial);
            ++report.n_feval;
            ++report.trials;

            IterationRecord rec;
            rec.trial = report.trials;
            rec.itc = report.itc;
            rec.dt = alpha;
            rec.step_norm = alpha * s.norm();
            bool ok = false;
            if (f_trial.allFinite()) {
                rec.res_inf = inf_norm(f_trial);
                rec.res_2 = f_trial.norm();
                const double ft = 0.5 * f_trial.squaredNorm();
                ok = ft <= f0 - cfg.armijo_c * alpha * 2.0 * f0;
                rec.rho = trust_ratio(res2, rec.res_2, (1.0 - alpha) * res2);
            } else {
                rec.res_inf = std::numeric_limits<double>::quiet_NaN();
                rec.res_2 = std::numeric_limits<double>::quiet_NaN();
                rec.rho = -1.0;
            }
            rec.accepted = ok;
            report.trace.push_back(rec);
            if (ok) {
                found = true;
                break;
            }
            alpha *= cfg.backtrack_factor;
        }
        if (!found) {
            return finish(SolveStatus::LineSearchStall, fx);
        }
        x = x_trial;
        fx = f_trial;
        ++report.itc;
    }
}

}  // namespace newtonflow
