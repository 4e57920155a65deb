#include "newtonflow/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace newtonflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vector constant_vector(int n, double value) {
    return Vector::Constant(n, value);
}

// ---------------------------------------------------------------------------
// Exam 1: Robertson autocatalytic reaction, n = 3.
// F1 = -0.04 x1 + 1e4 x2 x3
// F2 =  0.04 x1 - 1e4 x2 x3 - 3e7 x2^2
// F3 =  3e7 x2^2
// Mass conservation: (1,1,1)^T F(x) = 0 for all x, so J is singular
// everywhere. Start is the classical initial composition (1, 0, 0).
Problem make_robertson() {
    Problem p;
    p.name = "Robertson autocatalytic reaction";
    p.dimension = 3;
    p.residual = [](const Vector& x) -> Vector {
        const double r = 1e4 * x[1] * x[2];
        const double q = 3e7 * x[1] * x[1];
        Vector f(3);
        f << -0.04 * x[0] + r, 0.04 * x[0] - r - q, q;
        return f;
    };
    p.jacobian = [](const Vector& x) -> Matrix {
        Matrix J(3, 3);
        J << -0.04, 1e4 * x[2], 1e4 * x[1],
             0.04, -1e4 * x[2] - 6e7 * x[1], -1e4 * x[1],
             0.0, 6e7 * x[1], 0.0;
        return J;
    };
    p.default_start = (Vector(3) << 1.0, 0.0, 0.0).finished();
    p.conservation_vectors = {constant_vector(3, 1.0)};
    p.known_solutions = {(Vector(3) << 0.0, 0.0, 1.0).finished()};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 2: E5 chemical pyrolysis kinetics, n = 4.
// Rates: r1 = A y1, r2 = B y1 y3, r3 = C*M y2 y3, r4 = C y4 with
// A = 7.89e-10, B = 1.1e7, C*M = 1.13e9, C = 1.13e3.
// F = (-r1 - r2, r1 - r3, r1 - r2 - r3 + r4, r2 - r4).
// Conservation: -F2 + F3 + F4 = 0, i.e. c = (0, -1, 1, 1).
Problem make_e5() {
    static constexpr double A = 7.89e-10, B = 1.1e7, CM = 1.13e9, C = 1.13e3;
    Problem p;
    p.name = "E5 chemical pyrolysis";
    p.dimension = 4;
    p.residual = [](const Vector& y) -> Vector {
        const double r1 = A * y[0];
        const double r2 = B * y[0] * y[2];
        const double r3 = CM * y[1] * y[2];
        const double r4 = C * y[3];
        Vector f(4);
        f << -r1 - r2, r1 - r3, r1 - r2 - r3 + r4, r2 - r4;
        return f;
    };
    p.jacobian = [](const Vector& y) -> Matrix {
        Matrix J(4, 4);
        J << -A - B * y[2], 0.0, -B * y[0], 0.0,
             A, -CM * y[2], -CM * y[1], 0.0,
             A - B * y[2], -CM * y[2], -B * y[0] - CM * y[1], C,
             B * y[2], 0.0, B * y[0], -C;
        return J;
    };
    p.default_start = constant_vector(4, 1.0);
    p.conservation_vectors = {(Vector(4) << 0.0, -1.0, 1.0, 1.0).finished()};
    p.known_solutions = {(Vector(4) << 0.0, 0.0, 1.0, 0.0).finished()};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 3: atmospheric pollution kinetics (POLLU), n = 20, 25 reactions.
// Encoded as a mass-action reaction table so residual and Jacobian share one
// source of truth.
struct Reaction {
    double k;
    int a;  // first reactant index (0-based)
    int b;  // optional second reactant, -1 for unary rates
    std::vector<std::pair<int, double>> stoich;  // (equation row, coefficient)
};

const std::vector<Reaction>& pollution_reactions() {
    static const std::vector<Reaction> reactions = {
        {.35, 0, -1, {{0, -1}, {1, 1}, {2, 1}}},
        {.266e2, 1, 3, {{0, 1}, {1, -1}, {3, -1}}},
        {.123e5, 4, 1, {{0, 1}, {1, -1}, {4, -1}, {5, 1}}},
        {.86e-3, 6, -1, {{4, 2}, {6, -1}, {7, 1}}},
        {.82e-3, 6, -1, {{6, -1}, {7, 1}}},
        {.15e5, 6, 5, {{4, 1}, {5, -1}, {6, -1}, {7, 1}}},
        {.13e-3, 8, -1, {{4, 1}, {7, 1}, {8, -1}, {9, 1}}},
        {.24e5, 8, 5, {{5, -1}, {8, -1}, {10, 1}}},
        {.165e5, 10, 1, {{0, 1}, {1, -1}, {9, 1}, {10, -1}, {11, 1}}},
        {.9e4, 10, 0, {{0, -1}, {10, -1}, {12, 1}}},
        {.22e-1, 12, -1, {{0, 1}, {10, 1}, {12, -1}}},
        {.12e5, 9, 1, {{0, 1}, {1, -1}, {9, -1}, {13, 1}}},
        {.188e1, 13, -1, {{4, 1}, {6, 1}, {13, -1}}},
        {.163e5, 0, 5, {{0, -1}, {5, -1}, {14, 1}}},
        {.48e7, 2, -1, {{2, -1}, {3, 1}}},
        {.35e-3, 3, -1, {{3, -1}, {15, 1}}},
        {.175e-1, 3, -1, {{2, 1}, {3, -1}}},
        {.1e9, 15, -1, {{5, 2}, {15, -1}}},
        {.444e12, 15, -1, {{2, 1}, {15, -1}}},
        {.124e4, 16, 5, {{4, 1}, {5, -1}, {16, -1}, {17, 1}}},
        {.21e1, 18, -1, {{1, 1}, {18, -1}}},
        {.578e1, 18, -1, {{0, 1}, {2, 1}, {18, -1}}},
        {.474e-1, 0, 3, {{0, -1}, {3, -1}, {18, 1}}},
        {.178e4, 18, 0, {{0, -1}, {18, -1}, {19, 1}}},
        {.312e1, 19, -1, {{0, 1}, {18, 1}, {19, -1}}},
    };
    return reactions;
}

Problem make_pollution() {
    Problem p;
    p.name = "Pollution kinetics";
    p.dimension = 20;
    p.residual = [](const Vector& y) -> Vector {
        Vector f = Vector::Zero(20);
        for (const Reaction& r : pollution_reactions()) {
            const double rate = r.b < 0 ? r.k * y[r.a] : r.k * y[r.a] * y[r.b];
            for (const auto& [row, coef] : r.stoich) f[row] += coef * rate;
        }
        return f;
    };
    p.jacobian = [](const Vector& y) -> Matrix {
        Matrix J = Matrix::Zero(20, 20);
        for (const Reaction& r : pollution_reactions()) {
            if (r.b < 0) {
                for (const auto& [row, coef] : r.stoich) J(row, r.a) += coef * r.k;
            } else {
                for (const auto& [row, coef] : r.stoich) {
                    J(row, r.a) += coef * r.k * y[r.b];
                    J(row, r.b) += coef * r.k * y[r.a];
                }
            }
        }
        return J;
    };
    Vector y0 = Vector::Zero(20);
    y0[1] = 0.2;
    y0[3] = 0.04;
    y0[6] = 0.1;
    y0[7] = 0.3;
    y0[8] = 0.01;
    y0[16] = 0.007;
    p.default_start = y0;
    return p;
}

// ---------------------------------------------------------------------------
// Exam 4: equilibrium of the longitudinal aircraft motion model, n = 5.
// F(x) = A_s x + A_c u + phi(x) with the three control surfaces fixed at
// u = (elevator, aileron, rudder) = (-0.05, 0.1, 0).
Problem make_aircraft() {
    static const Matrix As = (Matrix(5, 5) <<
        -3.933, 0.107, 0.126, 0.0, -9.99,
        0.0, -0.987, 0.0, -22.95, 0.0,
        0.002, 0.0, -0.235, 0.0, 5.67,
        0.0, 1.0, 0.0, -1.0, 0.0,
        0.0, 0.0, -1.0, 0.0, -0.196).finished();
    static const Matrix Ac = (Matrix(5, 3) <<
        0.0, -45.83, -7.64,
        -28.37, 0.0, 0.0,
        0.0, -0.921, -6.51,
        -0.168, 0.0, 0.0,
        0.0, -0.0071, 0.0).finished();
    static const Vector controls = (Vector(3) << -0.05, 0.1, 0.0).finished();
    static const Vector bias = Ac * controls;

    Problem p;
    p.name = "Aircraft stability";
    p.dimension = 5;
    p.residual = [](const Vector& x) -> Vector {
        Vector phi(5);
        phi << -0.727 * x[1] * x[2] + 8.39 * x[2] * x[3] - 684.4 * x[3] * x[4] +
                   63.5 * x[3] * x[1],
            0.949 * x[0] * x[2] + 0.173 * x[0] * x[4],
            -0.716 * x[0] * x[1] - 1.578 * x[0] * x[3] + 1.132 * x[3] * x[1],
            -x[0] * x[4],
            x[0] * x[3];
        return As * x + bias + phi;
    };
    p.jacobian = [](const Vector& x) -> Matrix {
        Matrix J = As;
        J(0, 1) += -0.727 * x[2] + 63.5 * x[3];
        J(0, 2) += -0.727 * x[1] + 8.39 * x[3];
        J(0, 3) += 8.39 * x[2] - 684.4 * x[4] + 63.5 * x[1];
        J(0, 4) += -684.4 * x[3];
        J(1, 0) += 0.949 * x[2] + 0.173 * x[4];
        J(1, 2) += 0.949 * x[0];
        J(1, 4) += 0.173 * x[0];
        J(2, 0) += -0.716 * x[1] - 1.578 * x[3];
        J(2, 1) += -0.716 * x[0] + 1.132 * x[3];
        J(2, 3) += -1.578 * x[0] + 1.132 * x[1];
        J(3, 0) += -x[4];
        J(3, 4) += -x[0];
        J(4, 0) += x[3];
        J(4, 3) += x[0];
        return J;
    };
    p.default_start = constant_vector(5, 1.0);
    return p;
}

// ---------------------------------------------------------------------------
// Exam 5: F(x) = sin(5x) - x, n = 1. Roots 0 and +-0.519148...
// The start 0.5 lies in the basin of the positive root; the all-ones point
// does not (the Newton flow from there runs into 5 cos(5x) = 1).
Problem make_sine() {
    Problem p;
    p.name = "sin(5x) - x";
    p.dimension = 1;
    p.residual = [](const Vector& x) -> Vector {
        Vector f(1);
        f << std::sin(5.0 * x[0]) - x[0];
        return f;
    };
    p.jacobian = [](const Vector& x) -> Matrix {
        Matrix J(1, 1);
        J << 5.0 * std::cos(5.0 * x[0]) - 1.0;
        return J;
    };
    p.default_start = constant_vector(1, 0.5);
    p.known_solutions = {Vector::Zero(1)};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 6: exp(x^2 + y^2) - 3 = 0, x + y - sin(3(x + y)) = 0, n = 2.
// J is exactly singular on the whole line x = y; the classical start
// (0.81, 0.82) sits right next to it.
Problem make_exp_sine() {
    Problem p;
    p.name = "Exponential-trigonometric system";
    p.dimension = 2;
    p.residual = [](const Vector& x) -> Vector {
        Vector f(2);
        const double s = x[0] + x[1];
        f << std::exp(x[0] * x[0] + x[1] * x[1]) - 3.0, s - std::sin(3.0 * s);
        return f;
    };
    p.jacobian = [](const Vector& x) -> Matrix {
        const double e = std::exp(x[0] * x[0] + x[1] * x[1]);
        const double c = 1.0 - 3.0 * std::cos(3.0 * (x[0] + x[1]));
        Matrix J(2, 2);
        J << 2.0 * x[0] * e, 2.0 * x[1] * e, c, c;
        return J;
    };
    p.default_start = (Vector(2) << 0.81, 0.82).finished();
    const double a = std::sqrt(std::log(3.0) / 2.0);
    p.known_solutions = {(Vector(2) << a, -a).finished(), (Vector(2) << -a, a).finished()};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 7: the linear system x = 0, -2y = 0.
Problem make_linear_diag() {
    Problem p;
    p.name = "Linear diagonal system";
    p.dimension = 2;
    p.residual = [](const Vector& x) -> Vector {
        Vector f(2);
        f << x[0], -2.0 * x[1];
        return f;
    };
    p.jacobian = [](const Vector&) -> Matrix {
        Matrix J(2, 2);
        J << 1.0, 0.0, 0.0, -2.0;
        return J;
    };
    p.default_start = constant_vector(2, 1.0);
    p.known_solutions = {Vector::Zero(2)};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 8: extended Rosenbrock, n even.
// f_{2i-1} = 10 (x_{2i} - x_{2i-1}^2), f_{2i} = 1 - x_{2i-1}.
Problem make_ext_rosenbrock(int n) {
    Problem p;
    p.name = "Extended Rosenbrock";
    p.dimension = n;
    p.scalable = true;
    p.residual = [n](const Vector& x) -> Vector {
        Vector f(n);
        for (int i = 0; i < n; i += 2) {
            f[i] = 10.0 * (x[i + 1] - x[i] * x[i]);
            f[i + 1] = 1.0 - x[i];
        }
        return f;
    };
    p.jacobian = [n](const Vector& x) -> Matrix {
        Matrix J = Matrix::Zero(n, n);
        for (int i = 0; i < n; i += 2) {
            J(i, i) = -20.0 * x[i];
            J(i, i + 1) = 10.0;
            J(i + 1, i) = -1.0;
        }
        return J;
    };
    Vector x0(n);
    for (int i = 0; i < n; i += 2) {
        x0[i] = -1.2;
        x0[i + 1] = 1.0;
    }
    p.default_start = x0;
    p.known_solutions = {constant_vector(n, 1.0)};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 9: extended Powell singular, n divisible by 4. The Jacobian is
// rank-deficient at the root x* = 0.
Problem make_ext_powell(int n) {
    const double s5 = std::sqrt(5.0);
    const double s10 = std::sqrt(10.0);
    Problem p;
    p.name = "Extended Powell singular";
    p.dimension = n;
    p.scalable = true;
    p.residual = [n, s5, s10](const Vector& x) -> Vector {
        Vector f(n);
        for (int i = 0; i < n; i += 4) {
            const double a = x[i], b = x[i + 1], c = x[i + 2], d = x[i + 3];
            f[i] = a + 10.0 * b;
            f[i + 1] = s5 * (c - d);
            f[i + 2] = (b - 2.0 * c) * (b - 2.0 * c);
            f[i + 3] = s10 * (a - d) * (a - d);
        }
        return f;
    };
    p.jacobian = [n, s5, s10](const Vector& x) -> Matrix {
        Matrix J = Matrix::Zero(n, n);
        for (int i = 0; i < n; i += 4) {
            const double a = x[i], b = x[i + 1], c = x[i + 2], d = x[i + 3];
            J(i, i) = 1.0;
            J(i, i + 1) = 10.0;
            J(i + 1, i + 2) = s5;
            J(i + 1, i + 3) = -s5;
            J(i + 2, i + 1) = 2.0 * (b - 2.0 * c);
            J(i + 2, i + 2) = -4.0 * (b - 2.0 * c);
            J(i + 3, i) = 2.0 * s10 * (a - d);
            J(i + 3, i + 3) = -2.0 * s10 * (a - d);
        }
        return J;
    };
    Vector x0(n);
    for (int i = 0; i < n; i += 4) {
        x0[i] = 3.0;
        x0[i + 1] = -1.0;
        x0[i + 2] = 0.0;
        x0[i + 3] = 1.0;
    }
    p.default_start = x0;
    p.known_solutions = {Vector::Zero(n)};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 10: trigonometric system,
// f_i = n - sum_j cos x_j + i (1 - cos x_i) - sin x_i.
Problem make_trigonometric(int n) {
    Problem p;
    p.name = "Trigonometric system";
    p.dimension = n;
    p.scalable = true;
    p.residual = [n](const Vector& x) -> Vector {
        const double cos_sum = x.array().cos().sum();
        Vector f(n);
        for (int i = 0; i < n; ++i) {
            f[i] = n - cos_sum + (i + 1) * (1.0 - std::cos(x[i])) - std::sin(x[i]);
        }
        return f;
    };
    p.jacobian = [n](const Vector& x) -> Matrix {
        Matrix J(n, n);
        for (int j = 0; j < n; ++j) J.col(j).setConstant(std::sin(x[j]));
        for (int i = 0; i < n; ++i) {
            J(i, i) += (i + 1) * std::sin(x[i]) - std::cos(x[i]);
        }
        return J;
    };
    p.default_start = constant_vector(n, 1.0 / n);
    p.known_solutions = {Vector::Zero(n)};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 11: helical valley, n = 3, with the angle
// theta = atan(x2/x1)/(2 pi), shifted by 1/2 for x1 < 0.
Problem make_helical() {
    auto theta = [](double x1, double x2) {
        if (x1 > 0.0) return std::atan(x2 / x1) / (2.0 * kPi);
        if (x1 < 0.0) return std::atan(x2 / x1) / (2.0 * kPi) + 0.5;
        return x2 >= 0.0 ? 0.25 : -0.25;
    };
    Problem p;
    p.name = "Helical valley";
    p.dimension = 3;
    p.residual = [theta](const Vector& x) -> Vector {
        Vector f(3);
        f << 10.0 * (x[2] - 10.0 * theta(x[0], x[1])),
            10.0 * (std::sqrt(x[0] * x[0] + x[1] * x[1]) - 1.0), x[2];
        return f;
    };
    p.jacobian = [](const Vector& x) -> Matrix {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        const double r = std::sqrt(r2);
        Matrix J(3, 3);
        J << 100.0 / (2.0 * kPi) * x[1] / r2, -100.0 / (2.0 * kPi) * x[0] / r2, 10.0,
            10.0 * x[0] / r, 10.0 * x[1] / r, 0.0,
            0.0, 0.0, 1.0;
        return J;
    };
    p.default_start = (Vector(3) << -1.0, 0.0, 0.0).finished();
    p.known_solutions = {(Vector(3) << 1.0, 0.0, 0.0).finished()};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 12: gradient system of the Wood function, n = 4; root (1,1,1,1).
Problem make_wood() {
    Problem p;
    p.name = "Wood function gradient";
    p.dimension = 4;
    p.residual = [](const Vector& x) -> Vector {
        const double a = x[0], b = x[1], c = x[2], d = x[3];
        Vector f(4);
        f << -400.0 * a * (b - a * a) - 2.0 * (1.0 - a),
            200.0 * (b - a * a) + 20.2 * (b - 1.0) + 19.8 * (d - 1.0),
            -360.0 * c * (d - c * c) - 2.0 * (1.0 - c),
            180.0 * (d - c * c) + 20.2 * (d - 1.0) + 19.8 * (b - 1.0);
        return f;
    };
    p.jacobian = [](const Vector& x) -> Matrix {
        const double a = x[0], b = x[1], c = x[2], d = x[3];
        Matrix J = Matrix::Zero(4, 4);
        J(0, 0) = -400.0 * (b - 3.0 * a * a) + 2.0;
        J(0, 1) = -400.0 * a;
        J(1, 0) = -400.0 * a;
        J(1, 1) = 220.2;
        J(1, 3) = 19.8;
        J(2, 2) = -360.0 * (d - 3.0 * c * c) + 2.0;
        J(2, 3) = -360.0 * c;
        J(3, 2) = -360.0 * c;
        J(3, 3) = 200.2;
        J(3, 1) = 19.8;
        return J;
    };
    p.default_start = (Vector(4) << -3.0, -1.0, -3.0, -1.0).finished();
    p.known_solutions = {constant_vector(4, 1.0)};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 13: extended Cragg-Levy system, n divisible by 4.
// Block: ((e^a - b)^2, 10 (b - c)^3, tan^2(c - d), d - 1); root (0,1,1,1).
Problem make_cragg_levy(int n) {
    Problem p;
    p.name = "Extended Cragg-Levy";
    p.dimension = n;
    p.scalable = true;
    p.residual = [n](const Vector& x) -> Vector {
        Vector f(n);
        for (int i = 0; i < n; i += 4) {
            const double a = x[i], b = x[i + 1], c = x[i + 2], d = x[i + 3];
            const double u = std::exp(a) - b;
            const double v = b - c;
            const double t = std::tan(c - d);
            f[i] = u * u;
            f[i + 1] = 10.0 * v * v * v;
            f[i + 2] = t * t;
            f[i + 3] = d - 1.0;
        }
        return f;
    };
    p.jacobian = [n](const Vector& x) -> Matrix {
        Matrix J = Matrix::Zero(n, n);
        for (int i = 0; i < n; i += 4) {
            const double a = x[i], b = x[i + 1], c = x[i + 2], d = x[i + 3];
            const double ea = std::exp(a);
            const double u = ea - b;
            const double v = b - c;
            const double t = std::tan(c - d);
            const double dtan = 2.0 * t * (1.0 + t * t);
            J(i, i) = 2.0 * u * ea;
            J(i, i + 1) = -2.0 * u;
            J(i + 1, i + 1) = 30.0 * v * v;
            J(i + 1, i + 2) = -30.0 * v * v;
            J(i + 2, i + 2) = dtan;
            J(i + 2, i + 3) = -dtan;
            J(i + 3, i + 3) = 1.0;
        }
        return J;
    };
    Vector x0(n);
    for (int i = 0; i < n; i += 4) {
        x0[i] = 1.0;
        x0[i + 1] = 2.0;
        x0[i + 2] = 2.0;
        x0[i + 3] = 2.0;
    }
    p.default_start = x0;
    Vector sol(n);
    for (int i = 0; i < n; i += 4) {
        sol[i] = 0.0;
        sol[i + 1] = 1.0;
        sol[i + 2] = 1.0;
        sol[i + 3] = 1.0;
    }
    p.known_solutions = {sol};
    return p;
}

// Broyden tridiagonal form g_i = (3 - 2 x_i) x_i - x_{i-1} - 2 x_{i+1} + 1
// with x_0 = x_{n+1} = 0; shared by exams 14 and 17.
double broyden_component(const Vector& x, int i) {
    const int n = static_cast<int>(x.size());
    const double left = i > 0 ? x[i - 1] : 0.0;
    const double right = i + 1 < n ? x[i + 1] : 0.0;
    return (3.0 - 2.0 * x[i]) * x[i] - left - 2.0 * right + 1.0;
}

// ---------------------------------------------------------------------------
// Exam 14: singular Broyden, f_i = g_i^2; J vanishes at the root.
Problem make_singular_broyden(int n) {
    Problem p;
    p.name = "Singular Broyden";
    p.dimension = n;
    p.scalable = true;
    p.residual = [n](const Vector& x) -> Vector {
        Vector f(n);
        for (int i = 0; i < n; ++i) {
            const double g = broyden_component(x, i);
            f[i] = g * g;
        }
        return f;
    };
    p.jacobian = [n](const Vector& x) -> Matrix {
        Matrix J = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            const double g = broyden_component(x, i);
            J(i, i) = 2.0 * g * (3.0 - 4.0 * x[i]);
            if (i > 0) J(i, i - 1) = -2.0 * g;
            if (i + 1 < n) J(i, i + 1) = -4.0 * g;
        }
        return J;
    };
    p.default_start = constant_vector(n, -1.0);
    return p;
}

// ---------------------------------------------------------------------------
// Exam 15: tridiagonal system, root at the all-ones vector, start 12*ones.
Problem make_tridiagonal_system(int n) {
    Problem p;
    p.name = "Tridiagonal system";
    p.dimension = n;
    p.scalable = true;
    p.residual = [n](const Vector& x) -> Vector {
        Vector f(n);
        f[0] = 4.0 * (x[0] - x[1] * x[1]);
        for (int i = 1; i + 1 < n; ++i) {
            f[i] = 8.0 * x[i] * (x[i] * x[i] - x[i - 1]) - 2.0 * (1.0 - x[i]) +
                   4.0 * (x[i] - x[i + 1] * x[i + 1]);
        }
        f[n - 1] = 8.0 * x[n - 1] * (x[n - 1] * x[n - 1] - x[n - 2]) - 2.0 * (1.0 - x[n - 1]);
        return f;
    };
    p.jacobian = [n](const Vector& x) -> Matrix {
        Matrix J = Matrix::Zero(n, n);
        J(0, 0) = 4.0;
        J(0, 1) = -8.0 * x[1];
        for (int i = 1; i + 1 < n; ++i) {
            J(i, i - 1) = -8.0 * x[i];
            J(i, i) = 24.0 * x[i] * x[i] - 8.0 * x[i - 1] + 6.0;
            J(i, i + 1) = -8.0 * x[i + 1];
        }
        J(n - 1, n - 2) = -8.0 * x[n - 1];
        J(n - 1, n - 1) = 24.0 * x[n - 1] * x[n - 1] - 8.0 * x[n - 2] + 2.0;
        return J;
    };
    p.default_start = constant_vector(n, 12.0);
    p.known_solutions = {constant_vector(n, 1.0)};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 16: discrete two-point boundary value problem,
// f_i = 2 x_i - x_{i-1} - x_{i+1} + h^2 (x_i + t_i + 1)^3 / 2.
Problem make_discrete_bvp(int n) {
    const double h = 1.0 / (n + 1);
    Problem p;
    p.name = "Discrete boundary value problem";
    p.dimension = n;
    p.scalable = true;
    p.residual = [n, h](const Vector& x) -> Vector {
        Vector f(n);
        for (int i = 0; i < n; ++i) {
            const double left = i > 0 ? x[i - 1] : 0.0;
            const double right = i + 1 < n ? x[i + 1] : 0.0;
            const double w = x[i] + (i + 1) * h + 1.0;
            f[i] = 2.0 * x[i] - left - right + 0.5 * h * h * w * w * w;
        }
        return f;
    };
    p.jacobian = [n, h](const Vector& x) -> Matrix {
        Matrix J = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            const double w = x[i] + (i + 1) * h + 1.0;
            J(i, i) = 2.0 + 1.5 * h * h * w * w;
            if (i > 0) J(i, i - 1) = -1.0;
            if (i + 1 < n) J(i, i + 1) = -1.0;
        }
        return J;
    };
    Vector x0(n);
    for (int i = 0; i < n; ++i) {
        const double t = (i + 1) * h;
        x0[i] = t * (t - 1.0);
    }
    p.default_start = x0;
    return p;
}

// ---------------------------------------------------------------------------
// Exam 17: Broyden tridiagonal, f_i = g_i.
Problem make_broyden_tridiagonal(int n) {
    Problem p;
    p.name = "Broyden tridiagonal";
    p.dimension = n;
    p.scalable = true;
    p.residual = [n](const Vector& x) -> Vector {
        Vector f(n);
        for (int i = 0; i < n; ++i) f[i] = broyden_component(x, i);
        return f;
    };
    p.jacobian = [n](const Vector& x) -> Matrix {
        Matrix J = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            J(i, i) = 3.0 - 4.0 * x[i];
            if (i > 0) J(i, i - 1) = -1.0;
            if (i + 1 < n) J(i, i + 1) = -2.0;
        }
        return J;
    };
    p.default_start = constant_vector(n, -1.0);
    return p;
}

// ---------------------------------------------------------------------------
// Exam 18: central-difference discretization of the Troesch continuation
// boundary value problem u'' = lambda sinh(lambda u), u(0) = 0, u(1) = 1,
// with lambda = 5 on five interior grid points.
Problem make_troesch(int n) {
    const double lambda = 5.0;
    const double h = 1.0 / (n + 1);
    Problem p;
    p.name = "Troesch boundary value problem";
    p.dimension = n;
    p.scalable = true;
    p.residual = [n, h, lambda](const Vector& x) -> Vector {
        Vector f(n);
        for (int i = 0; i < n; ++i) {
            const double left = i > 0 ? x[i - 1] : 0.0;
            const double right = i + 1 < n ? x[i + 1] : 1.0;
            f[i] = (left - 2.0 * x[i] + right) / (h * h) - lambda * std::sinh(lambda * x[i]);
        }
        return f;
    };
    p.jacobian = [n, h, lambda](const Vector& x) -> Matrix {
        Matrix J = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            J(i, i) = -2.0 / (h * h) - lambda * lambda * std::cosh(lambda * x[i]);
            if (i > 0) J(i, i - 1) = 1.0 / (h * h);
            if (i + 1 < n) J(i, i + 1) = 1.0 / (h * h);
        }
        return J;
    };
    p.default_start = Vector::Zero(n);
    return p;
}

// ---------------------------------------------------------------------------
// Exam 19: Box three-dimensional system at t = (0.1, 0.2, 0.3).
Problem make_box() {
    static const Vector t = (Vector(3) << 0.1, 0.2, 0.3).finished();
    Problem p;
    p.name = "Box three-dimensional";
    p.dimension = 3;
    p.residual = [](const Vector& x) -> Vector {
        Vector f(3);
        for (int i = 0; i < 3; ++i) {
            f[i] = std::exp(-t[i] * x[0]) - std::exp(-t[i] * x[1]) -
                   x[2] * (std::exp(-t[i]) - std::exp(-10.0 * t[i]));
        }
        return f;
    };
    p.jacobian = [](const Vector& x) -> Matrix {
        Matrix J(3, 3);
        for (int i = 0; i < 3; ++i) {
            J(i, 0) = -t[i] * std::exp(-t[i] * x[0]);
            J(i, 1) = t[i] * std::exp(-t[i] * x[1]);
            J(i, 2) = -(std::exp(-t[i]) - std::exp(-10.0 * t[i]));
        }
        return J;
    };
    p.default_start = (Vector(3) << 0.0, 10.0, 20.0).finished();
    p.known_solutions = {(Vector(3) << 1.0, 10.0, 1.0).finished(),
                         (Vector(3) << 10.0, 1.0, -1.0).finished()};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 20: x1^2 + x2^2 - 2 = 0, e^{x1 - 1} + x2^2 - 2 = 0; roots (1, +-1).
Problem make_circle_exp() {
    Problem p;
    p.name = "Circle-exponential system";
    p.dimension = 2;
    p.residual = [](const Vector& x) -> Vector {
        Vector f(2);
        f << x[0] * x[0] + x[1] * x[1] - 2.0, std::exp(x[0] - 1.0) + x[1] * x[1] - 2.0;
        return f;
    };
    p.jacobian = [](const Vector& x) -> Matrix {
        Matrix J(2, 2);
        J << 2.0 * x[0], 2.0 * x[1], std::exp(x[0] - 1.0), 2.0 * x[1];
        return J;
    };
    p.default_start = (Vector(2) << 2.0, 0.5).finished();
    p.known_solutions = {(Vector(2) << 1.0, 1.0).finished(),
                         (Vector(2) << 1.0, -1.0).finished()};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 21: Powell badly scaled, 1e4 x1 x2 = 1, e^{-x1} + e^{-x2} = 1.0001.
Problem make_powell_badly_scaled() {
    Problem p;
    p.name = "Powell badly scaled";
    p.dimension = 2;
    p.residual = [](const Vector& x) -> Vector {
        Vector f(2);
        f << 1e4 * x[0] * x[1] - 1.0, std::exp(-x[0]) + std::exp(-x[1]) - 1.0001;
        return f;
    };
    p.jacobian = [](const Vector& x) -> Matrix {
        Matrix J(2, 2);
        J << 1e4 * x[1], 1e4 * x[0], -std::exp(-x[0]), -std::exp(-x[1]);
        return J;
    };
    p.default_start = (Vector(2) << 0.0, 1.0).finished();
    return p;
}

// ---------------------------------------------------------------------------
// Exam 22: steady state of the Brusselator autocatalytic reaction model
// (A = 1, B = 3): F = (A + x^2 y - (B + 1) x, B x - x^2 y); root (1, 3).
Problem make_brusselator() {
    static constexpr double A = 1.0, B = 3.0;
    Problem p;
    p.name = "Brusselator equilibrium";
    p.dimension = 2;
    p.residual = [](const Vector& x) -> Vector {
        Vector f(2);
        f << A + x[0] * x[0] * x[1] - (B + 1.0) * x[0], B * x[0] - x[0] * x[0] * x[1];
        return f;
    };
    p.jacobian = [](const Vector& x) -> Matrix {
        Matrix J(2, 2);
        J << 2.0 * x[0] * x[1] - (B + 1.0), x[0] * x[0], B - 2.0 * x[0] * x[1],
            -x[0] * x[0];
        return J;
    };
    p.default_start = constant_vector(2, 1.0);
    p.known_solutions = {(Vector(2) << 1.0, 3.0).finished()};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 23: equilibrium of the chemical Akzo Nobel reaction kinetics, n = 6.
// Rates r1 = k1 y1^4 sqrt(y2), r2 = k2 y3 y4, r3 = (k2/K) y1 y5,
// r4 = k3 y1 y4^2, r5 = k4 y6^2 sqrt(y2), inflow klA (p/H - y2).
// sqrt(y2) restricts the domain to y2 >= 0; outside it the residual is NaN
// and the solver's rejection path takes over.
Problem make_akzo() {
    static constexpr double k1 = 18.7, k2 = 0.58, k3 = 0.09, k4 = 0.42;
    static constexpr double K = 34.4, klA = 3.3, Ks = 115.83, pCO2 = 0.9, H = 737.0;
    Problem p;
    p.name = "Chemical Akzo Nobel equilibrium";
    p.dimension = 6;
    p.residual = [](const Vector& y) -> Vector {
        const double sq = std::sqrt(y[1]);  // NaN for y2 < 0, by design
        const double y1p4 = y[0] * y[0] * y[0] * y[0];
        const double r1 = k1 * y1p4 * sq;
        const double r2 = k2 * y[2] * y[3];
        const double r3 = k2 / K * y[0] * y[4];
        const double r4 = k3 * y[0] * y[3] * y[3];
        const double r5 = k4 * y[5] * y[5] * sq;
        const double fin = klA * (pCO2 / H - y[1]);
        Vector f(6);
        f << -2.0 * r1 + r2 - r3 - r4,
            -0.5 * r1 - r4 - 0.5 * r5 + fin,
            r1 - r2 + r3,
            -r2 + r3 - 2.0 * r4,
            r2 - r3 + r5,
            Ks * y[0] * y[3] - y[5];
        return f;
    };
    p.jacobian = [](const Vector& y) -> Matrix {
        const double sq = std::sqrt(y[1]);
        const double y1p3 = y[0] * y[0] * y[0];
        const double dr1_1 = 4.0 * k1 * y1p3 * sq;
        const double dr1_2 = 0.5 * k1 * y1p3 * y[0] / sq;
        const double dr5_2 = 0.5 * k4 * y[5] * y[5] / sq;
        const double dr5_6 = 2.0 * k4 * y[5] * sq;
        const double dr3_1 = k2 / K * y[4];
        const double dr3_5 = k2 / K * y[0];
        const double dr4_1 = k3 * y[3] * y[3];
        const double dr4_4 = 2.0 * k3 * y[0] * y[3];
        Matrix J = Matrix::Zero(6, 6);
        J(0, 0) = -2.0 * dr1_1 - dr3_1 - dr4_1;
        J(0, 1) = -2.0 * dr1_2;
        J(0, 2) = k2 * y[3];
        J(0, 3) = k2 * y[2] - dr4_4;
        J(0, 4) = -dr3_5;
        J(1, 0) = -0.5 * dr1_1 - dr4_1;
        J(1, 1) = -0.5 * dr1_2 - 0.5 * dr5_2 - klA;
        J(1, 3) = -dr4_4;
        J(1, 5) = -0.5 * dr5_6;
        J(2, 0) = dr1_1 + dr3_1;
        J(2, 1) = dr1_2;
        J(2, 2) = -k2 * y[3];
        J(2, 3) = -k2 * y[2];
        J(2, 4) = dr3_5;
        J(3, 0) = dr3_1 - 2.0 * dr4_1;
        J(3, 2) = -k2 * y[3];
        J(3, 3) = -k2 * y[2] - 2.0 * dr4_4;
        J(3, 4) = dr3_5;
        J(4, 0) = -dr3_1;
        J(4, 1) = dr5_2;
        J(4, 2) = k2 * y[3];
        J(4, 3) = k2 * y[2];
        J(4, 4) = -dr3_5;
        J(4, 5) = dr5_6;
        J(5, 0) = Ks * y[3];
        J(5, 3) = Ks * y[0];
        J(5, 5) = -1.0;
        return J;
    };
    p.default_start =
        (Vector(6) << 0.444, 0.00123, 0.0, 0.007, 0.0, Ks * 0.444 * 0.007).finished();
    p.known_solutions = {(Vector(6) << 0.0, pCO2 / H, 0.0, 0.0, 0.0, 0.0).finished()};
    return p;
}

// ---------------------------------------------------------------------------
// Exam 24: Brown almost linear,
// f_i = x_i + sum(x) - (n+1) for i < n, f_n = prod(x) - 1.
Problem make_brown(int n) {
    Problem p;
    p.name = "Brown almost linear";
    p.dimension = n;
    p.scalable = true;
    p.residual = [n](const Vector& x) -> Vector {
        const double sum = x.sum();
        Vector f(n);
        for (int i = 0; i + 1 < n; ++i) f[i] = x[i] + sum - (n + 1.0);
        f[n - 1] = x.prod() - 1.0;
        return f;
    };
    p.jacobian = [n](const Vector& x) -> Matrix {
        Matrix J = Matrix::Ones(n, n);
        for (int i = 0; i + 1 < n; ++i) J(i, i) = 2.0;
        for (int j = 0; j < n; ++j) {
            double prod = 1.0;
            for (int k = 0; k < n; ++k) {
                if (k != j) prod *= x[k];
            }
            J(n - 1, j) = prod;
        }
        return J;
    };
    p.default_start = constant_vector(n, 0.5);
    p.known_solutions = {constant_vector(n, 1.0)};
    return p;
}

// ---------------------------------------------------------------------------
// Exams 25/26: tridiagonal eigenvalue problems as (n+1)-dimensional systems
// in the unknowns (x, lambda): A x - lambda x = 0, x^T x = 1.
// Exam 25: A symmetric with diagonal 2 and off-diagonals 1.
// Exam 26: A nonsymmetric with diagonal 1, superdiagonal 1, subdiagonal 2.
Problem make_eigen_problem(int order, double diag, double super, double sub, bool symmetric) {
    const int n = order;
    Problem p;
    p.name = symmetric ? "Symmetric tridiagonal eigenproblem" : "Nonsymmetric tridiagonal eigenproblem";
    p.dimension = n + 1;
    p.scalable = true;
    p.residual = [n, diag, super, sub](const Vector& z) -> Vector {
        const double lambda = z[n];
        Vector f(n + 1);
        double xtx = 0.0;
        for (int i = 0; i < n; ++i) {
            double ax = diag * z[i];
            if (i > 0) ax += sub * z[i - 1];
            if (i + 1 < n) ax += super * z[i + 1];
            f[i] = ax - lambda * z[i];
            xtx += z[i] * z[i];
        }
        f[n] = xtx - 1.0;
        return f;
    };
    p.jacobian = [n, diag, super, sub](const Vector& z) -> Matrix {
        const double lambda = z[n];
        Matrix J = Matrix::Zero(n + 1, n + 1);
        for (int i = 0; i < n; ++i) {
            J(i, i) = diag - lambda;
            if (i > 0) J(i, i - 1) = sub;
            if (i + 1 < n) J(i, i + 1) = super;
            J(i, n) = -z[i];
            J(n, i) = 2.0 * z[i];
        }
        return J;
    };
    Vector z0(n + 1);
    z0.head(n).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
    z0[n] = 1.0;
    p.default_start = z0;

    // Closed-form eigenpair k = 1 of tridiag(sub, diag, super):
    // lambda = diag + 2 sqrt(super*sub) cos(pi/(n+1)),
    // x_i proportional to (sub/super)^{i/2} sin(i pi/(n+1)).
    // Skipped for the nonsymmetric matrix at large order, where the geometric
    // weight overflows double before normalization.
    if (symmetric || n <= 600) {
        const double theta = kPi / (n + 1);
        const double growth = std::sqrt(sub / super);
        Vector v(n);
        double w = 1.0;
        for (int i = 0; i < n; ++i) {
            w *= growth;
            v[i] = w * std::sin((i + 1) * theta);
        }
        v.normalize();
        Vector sol(n + 1);
        sol.head(n) = v;
        sol[n] = diag + 2.0 * std::sqrt(super * sub) * std::cos(theta);
        p.known_solutions = {sol};
    }
    return p;
}

// ---------------------------------------------------------------------------
// Registry.

struct RegistryEntry {
    int exam;
    const char* name;
    int paper_size;  ///< published size parameter (matrix order for 25/26)
    std::optional<int> desk_size;
    bool scalable;
    SourceTag tag;
    std::function<Problem(int)> build;  ///< size parameter -> Problem
    std::function<bool(int)> size_ok;
    const char* size_requirement;
};

const std::vector<RegistryEntry>& registry() {
    auto any = [](int n) { return n >= 1; };
    auto even = [](int n) { return n >= 2 && n % 2 == 0; };
    auto mult4 = [](int n) { return n >= 4 && n % 4 == 0; };
    auto at_least2 = [](int n) { return n >= 2; };
    static const std::vector<RegistryEntry> entries = {
        {1, "Robertson autocatalytic reaction", 3, {}, false, SourceTag::InPaper,
         [](int) { return make_robertson(); }, any, ""},
        {2, "E5 chemical pyrolysis", 4, {}, false, SourceTag::StandardReference,
         [](int) { return make_e5(); }, any, ""},
        {3, "Pollution kinetics", 20, {}, false, SourceTag::StandardReference,
         [](int) { return make_pollution(); }, any, ""},
        {4, "Aircraft stability", 5, {}, false, SourceTag::StandardReference,
         [](int) { return make_aircraft(); }, any, ""},
        {5, "sin(5x) - x", 1, {}, false, SourceTag::InPaper,
         [](int) { return make_sine(); }, any, ""},
        {6, "Exponential-trigonometric system", 2, {}, false, SourceTag::InPaper,
         [](int) { return make_exp_sine(); }, any, ""},
        {7, "Linear diagonal system", 2, {}, false, SourceTag::InPaper,
         [](int) { return make_linear_diag(); }, any, ""},
        {8, "Extended Rosenbrock", 3000, 300, true, SourceTag::InPaper,
         make_ext_rosenbrock, even, "an even dimension"},
        {9, "Extended Powell singular", 3000, 300, true, SourceTag::InPaper,
         make_ext_powell, mult4, "a dimension divisible by 4"},
        {10, "Trigonometric system", 3000, 300, true, SourceTag::StandardReference,
         make_trigonometric, any, ""},
        {11, "Helical valley", 3, {}, false, SourceTag::StandardReference,
         [](int) { return make_helical(); }, any, ""},
        {12, "Wood function gradient", 4, {}, false, SourceTag::InPaper,
         [](int) { return make_wood(); }, any, ""},
        {13, "Extended Cragg-Levy", 3000, 300, true, SourceTag::StandardReference,
         make_cragg_levy, mult4, "a dimension divisible by 4"},
        {14, "Singular Broyden", 3000, 300, true, SourceTag::InPaper,
         make_singular_broyden, at_least2, "dimension >= 2"},
        {15, "Tridiagonal system", 10, {}, true, SourceTag::StandardReference,
         make_tridiagonal_system, at_least2, "dimension >= 2"},
        {16, "Discrete boundary value problem", 10, {}, true, SourceTag::StandardReference,
         make_discrete_bvp, any, ""},
        {17, "Broyden tridiagonal", 100, {}, true, SourceTag::InPaper,
         make_broyden_tridiagonal, at_least2, "dimension >= 2"},
        {18, "Troesch boundary value problem", 5, {}, true, SourceTag::StandardReference,
         make_troesch, any, ""},
        {19, "Box three-dimensional", 3, {}, false, SourceTag::StandardReference,
         [](int) { return make_box(); }, any, ""},
        {20, "Circle-exponential system", 2, {}, false, SourceTag::InPaper,
         [](int) { return make_circle_exp(); }, any, ""},
        {21, "Powell badly scaled", 2, {}, false, SourceTag::InPaper,
         [](int) { return make_powell_badly_scaled(); }, any, ""},
        {22, "Brusselator equilibrium", 2, {}, false, SourceTag::StandardReference,
         [](int) { return make_brusselator(); }, any, ""},
        {23, "Chemical Akzo Nobel equilibrium", 6, {}, false, SourceTag::StandardReference,
         [](int) { return make_akzo(); }, any, ""},
        {24, "Brown almost linear", 10, {}, true, SourceTag::InPaper,
         make_brown, at_least2, "dimension >= 2"},
        {25, "Symmetric tridiagonal eigenproblem", 3000, 30, true, SourceTag::InPaper,
         [](int n) { return make_eigen_problem(n, 2.0, 1.0, 1.0, true); }, at_least2,
         "matrix order >= 2"},
        {26, "Nonsymmetric tridiagonal eigenproblem", 3000, 30, true, SourceTag::InPaper,
         [](int n) { return make_eigen_problem(n, 1.0, 1.0, 2.0, false); }, at_least2,
         "matrix order >= 2"},
    };
    return entries;
}

const RegistryEntry& find_entry(int exam) {
    for (const RegistryEntry& e : registry()) {
        if (e.exam == exam) return e;
    }
    throw UnknownProblemError("no registered problem with exam number " + std::to_string(exam));
}

}  // namespace

const char* to_string(SourceTag tag) {
    return tag == SourceTag::InPaper ? "in-paper" : "standard-reference";
}

Problem get_problem(int exam, std::optional<int> n_override) {
    const RegistryEntry& e = find_entry(exam);
    int size = e.paper_size;
    if (n_override) {
        if (!e.scalable) {
            throw IncompatibleDimensionError("exam " + std::to_string(exam) +
                                             " (" + e.name + ") is not scalable");
        }
        if (!e.size_ok(*n_override)) {
            throw IncompatibleDimensionError("exam " + std::to_string(exam) + " requires " +
                                             e.size_requirement + ", got " +
                                             std::to_string(*n_override));
        }
        size = *n_override;
    }
    return e.build(size);
}

std::vector<ManifestEntry> registry_manifest() {
    std::vector<ManifestEntry> manifest;
    manifest.reserve(registry().size());
    for (const RegistryEntry& e : registry()) {
        // Build desk-sized (cheap) instances to report annotation flags.
        Problem p = e.build(e.desk_size.value_or(std::min(e.paper_size, 300)));
        ManifestEntry m;
        m.exam = e.exam;
        m.name = e.name;
        m.dimension = e.exam == 25 || e.exam == 26 ? e.paper_size + 1 : e.paper_size;
        m.has_analytic_jacobian = p.has_analytic_jacobian();
        m.source_tag = e.tag;
        m.has_conservation = !p.conservation_vectors.empty();
        m.has_known_solution = !p.known_solutions.empty();
        m.scalable = e.scalable;
        manifest.push_back(std::move(m));
    }
    return manifest;
}

const std::vector<int>& core_exams() {
    static const std::vector<int> core = {1, 5, 6, 7, 8, 9, 12, 14, 17, 20, 21, 24, 25, 26};
    return core;
}

std::optional<int> desk_dimension(int exam) {
    return find_entry(exam).desk_size;
}

}  // namespace newtonflow
