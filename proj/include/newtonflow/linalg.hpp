#pragma once

#include <Eigen/Dense>

#include "newtonflow/errors.hpp"

namespace newtonflow {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Max-norm of a vector; 0 for an empty vector.
inline double inf_norm(const Vector& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

/// Induced infinity norm (max absolute row sum).
inline double matrix_inf_norm(const Matrix& A) {
    return A.size() == 0 ? 0.0 : A.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Pivots at or below this magnitude are treated as exact singularity.
inline constexpr double kPivotFloor = 1e-300;

/// Row-pivoted dense LU decomposition P*A = L*U.
///
/// Wraps Eigen's PartialPivLU behind the error contract used by the
/// solvers: construction rejects non-finite input and surfaces vanishing
/// pivots as SingularMatrixError instead of producing Inf/NaN solutions.
class LuFactorization {
public:
    Index dimension() const { return lu_.rows(); }

    /// Packed factors: unit-lower L below the diagonal, U on and above it.
    const Matrix& packed_factors() const { return lu_.matrixLU(); }

    /// Row permutation P with P*A = L*U.
    const Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic>& permutation() const {
        return lu_.permutationP();
    }

    /// Smallest pivot magnitude, min_i |U(i,i)|.
    double min_pivot_magnitude() const { return min_pivot_; }

    Vector solve(const Vector& b) const {
        if (b.size() != dimension()) {
            throw DimensionMismatchError("lu_solve: right-hand side has length " +
                                         std::to_string(b.size()) + ", expected " +
                                         std::to_string(dimension()));
        }
        return lu_.solve(b);
    }

private:
    friend LuFactorization lu_factor(const Matrix& A);

    Eigen::PartialPivLU<Matrix> lu_;
    double min_pivot_ = 0.0;
};

/// Factorize a square matrix with row partial pivoting.
///
/// Throws NonFiniteInputError for NaN/Inf entries, DimensionMismatchError for
/// non-square input, SingularMatrixError when a pivot magnitude is at or
/// below kPivotFloor.
LuFactorization lu_factor(const Matrix& A);

/// Solve A*x = b using a factorization from lu_factor.
Vector lu_solve(const LuFactorization& factorization, const Vector& b);

}  // namespace newtonflow
