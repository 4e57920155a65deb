#include "newtonflow/linalg.hpp"

namespace newtonflow {

LuFactorization lu_factor(const Matrix& A) {
    if (A.rows() != A.cols()) {
        throw DimensionMismatchError("lu_factor: matrix is " + std::to_string(A.rows()) +
                                     "x" + std::to_string(A.cols()) + ", expected square");
    }
    if (!A.allFinite()) {
        throw NonFiniteInputError("lu_factor: matrix contains NaN or Inf entries");
    }
    LuFactorization f;
    f.lu_.compute(A);
    const Index n = A.rows();
    double min_pivot = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
        min_pivot = std::min(min_pivot, std::abs(f.lu_.matrixLU()(i, i)));
    }
    f.min_pivot_ = n == 0 ? 0.0 : min_pivot;
    if (n > 0 && min_pivot <= kPivotFloor) {
        throw SingularMatrixError("lu_factor: pivot magnitude " + std::to_string(min_pivot) +
                                  " at or below singularity floor");
    }
    return f;
}

Vector lu_solve(const LuFactorization& factorization, const Vector& b) {
    return factorization.solve(b);
}

}  // namespace newtonflow
