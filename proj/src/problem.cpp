#include "newtonflow/problem.hpp"

#include <cmath>
#include <limits>

namespace newtonflow {

Vector evaluate_residual(const Problem& p, const Vector& x) {
    if (x.size() != p.dimension) {
        throw DimensionMismatchError("evaluate_residual(" + p.name + "): point has length " +
                                     std::to_string(x.size()) + ", expected " +
                                     std::to_string(p.dimension));
    }
    Vector fx = p.residual(x);
    if (fx.size() != p.dimension) {
        throw DimensionMismatchError("evaluate_residual(" + p.name + "): residual has length " +
                                     std::to_string(fx.size()));
    }
    if (!fx.allFinite()) {
        throw NonFiniteResidualError("evaluate_residual(" + p.name +
                                     "): residual contains NaN or Inf components");
    }
    return fx;
}

Matrix forward_difference_jacobian(const std::function<Vector(const Vector&)>& f,
                                   const Vector& x, const Vector& fx) {
    static const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    const Index n = x.size();
    Matrix J(fx.size(), n);
    Vector xp = x;
    for (Index j = 0; j < n; ++j) {
        const double h = sqrt_eps * std::max(1.0, std::abs(x[j]));
        xp[j] = x[j] + h;
        const double h_actual = xp[j] - x[j];  // representable step
        J.col(j) = (f(xp) - fx) / h_actual;
        xp[j] = x[j];
    }
    return J;
}

Matrix evaluate_jacobian(const Problem& p, const Vector& x, JacobianMode mode) {
    if (x.size() != p.dimension) {
        throw DimensionMismatchError("evaluate_jacobian(" + p.name + "): point has length " +
                                     std::to_string(x.size()) + ", expected " +
                                     std::to_string(p.dimension));
    }
    Matrix J;
    if (mode == JacobianMode::Analytic) {
        if (!p.has_analytic_jacobian()) {
            throw Error("evaluate_jacobian(" + p.name + "): no analytic Jacobian registered");
        }
        J = p.jacobian(x);
    } else {
        J = forward_difference_jacobian(p.residual, x, p.residual(x));
    }
    if (!J.allFinite()) {
        throw NonFiniteJacobianError("evaluate_jacobian(" + p.name +
                                     "): Jacobian contains NaN or Inf entries");
    }
    return J;
}

Problem affine_problem(std::string name, Matrix A, Vector b, Vector start) {
    const int n = static_cast<int>(A.rows());
    Problem p;
    p.name = std::move(name);
    p.dimension = n;
    p.residual = [A, b](const Vector& x) -> Vector { return A * x + b; };
    p.jacobian = [A](const Vector&) -> Matrix { return A; };
    p.default_start = std::move(start);
    return p;
}

}  // namespace newtonflow
