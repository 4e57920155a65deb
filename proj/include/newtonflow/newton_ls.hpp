#pragma once

#include "newtonflow/cnmtr.hpp"

namespace newtonflow {

/// Damped Newton with Armijo backtracking on the merit f(x) = 0.5*||F(x)||^2.
struct LineSearchConfig {
    double alpha_init = 1.0;
    double backtrack_factor = 0.5;
    double armijo_c = 1e-4;
    int max_backtracks = 40;
    int maxit = 400;
    double tol = 1e-6;  ///< infinity-norm residual target
    /// When set, also terminate as soon as ||J^T F||_2 < grad_tol. This is
    /// the classical merit-gradient test; it can stop far from a root on
    /// badly scaled systems, which is precisely what it is here to show.
    std::optional<double> grad_tol;
    std::optional<JacobianMode> jacobian_mode;

    void validate() const;
};

/// Classical damped Newton baseline: x+ = x + alpha*s with J s = -F and
/// backtracking until f(x + alpha*s) <= f(x) - armijo_c * alpha * 2 f(x).
///
/// No regularization: a singular Jacobian is reported as LinearSolveFailure.
/// Trace rows record one entry per line-search trial with dt = alpha.
SolveReport solve_damped_newton(const Problem& p, const LineSearchConfig& cfg = {},
                                std::optional<Vector> x0 = std::nullopt);

}  // namespace newtonflow
