#pragma once

#include <functional>
#include <string>
#include <vector>

#include "newtonflow/linalg.hpp"

namespace newtonflow {

/// How the solver obtains J(x).
enum class JacobianMode {
    Analytic,
    ForwardDifference,
};

/// A square system of nonlinear equations F(x) = 0 with metadata.
///
/// Problems are immutable values: residual and jacobian must be pure
/// functions, so a Problem can be shared freely across threads. Evaluation
/// counters live with the caller (see SolveReport), never here.
struct Problem {
    std::string name;
    int dimension = 0;
    std::function<Vector(const Vector&)> residual;
    /// Optional analytic Jacobian; empty when only finite differences apply.
    std::function<Matrix(const Vector&)> jacobian;
    Vector default_start;
    /// Vectors c with c^T F(x) = 0 for all x (linear conservation laws).
    std::vector<Vector> conservation_vectors;
    /// Exact roots, when known in closed form.
    std::vector<Vector> known_solutions;
    /// True when the problem family is defined for other dimensions.
    bool scalable = false;

    bool has_analytic_jacobian() const { return static_cast<bool>(jacobian); }
};

/// Evaluate F(x), rejecting NaN/Inf components.
///
/// Throws DimensionMismatchError when x has the wrong length and
/// NonFiniteResidualError when any component of F(x) is not finite
/// (the solvers turn the latter into a reported status, never a crash).
Vector evaluate_residual(const Problem& p, const Vector& x);

/// Evaluate J(x) analytically or by one-sided differences.
///
/// Forward differences use column j = (F(x + h_j e_j) - F(x)) / h_j with
/// h_j = sqrt(machine epsilon) * max(1, |x_j|).
Matrix evaluate_jacobian(const Problem& p, const Vector& x, JacobianMode mode);

/// Forward-difference Jacobian of an arbitrary map, reusing fx = f(x).
Matrix forward_difference_jacobian(const std::function<Vector(const Vector&)>& f,
                                   const Vector& x, const Vector& fx);

/// Build the affine problem F(x) = A*x + b with the given start point.
Problem affine_problem(std::string name, Matrix A, Vector b, Vector start);

}  // namespace newtonflow
