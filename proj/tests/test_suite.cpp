#include <doctest.h>

#include <random>
#include <set>

#include "newtonflow/cnmtr.hpp"
#include "newtonflow/suite.hpp"

using namespace newtonflow;

TEST_CASE("manifest lists all 26 exams, sorted and unique") {
    const auto manifest = registry_manifest();
    REQUIRE(manifest.size() == 26);
    std::set<int> seen;
    int prev = 0;
    for (const ManifestEntry& m : manifest) {
        CHECK(m.exam > prev);
        prev = m.exam;
        seen.insert(m.exam);
        CHECK(m.has_analytic_jacobian);
    }
    CHECK(seen.size() == 26);

    CHECK(manifest[0].has_conservation);       // Robertson
    CHECK(manifest[23].exam == 24);
    CHECK(manifest[23].dimension == 10);       // Brown almost linear
    CHECK(manifest[24].dimension == 3000 + 1); // eigenproblem adds lambda
}

TEST_CASE("core exams are always registered") {
    const auto manifest = registry_manifest();
    std::set<int> exams;
    for (const ManifestEntry& m : manifest) exams.insert(m.exam);
    for (int exam : core_exams()) {
        CHECK(exams.count(exam) == 1);
    }
    CHECK(core_exams() == std::vector<int>{1, 5, 6, 7, 8, 9, 12, 14, 17, 20, 21, 24, 25, 26});
}

TEST_CASE("published dimensions and overrides") {
    CHECK(get_problem(5).dimension == 1);
    CHECK(get_problem(6).dimension == 2);
    CHECK(get_problem(17).dimension == 100);
    CHECK(get_problem(8, 40).dimension == 40);
    CHECK(get_problem(25, 30).dimension == 31);

    CHECK_THROWS_AS(get_problem(99), UnknownProblemError);
    CHECK_THROWS_AS(get_problem(0), UnknownProblemError);
    CHECK_THROWS_AS(get_problem(8, 41), IncompatibleDimensionError);   // odd
    CHECK_THROWS_AS(get_problem(9, 42), IncompatibleDimensionError);   // not /4
    CHECK_THROWS_AS(get_problem(13, 6), IncompatibleDimensionError);   // not /4
    CHECK_THROWS_AS(get_problem(5, 2), IncompatibleDimensionError);    // not scalable
}

TEST_CASE("desk dimensions shrink only the large problems") {
    CHECK(desk_dimension(8) == 300);
    CHECK(desk_dimension(9) == 300);
    CHECK(desk_dimension(10) == 300);
    CHECK(desk_dimension(13) == 300);
    CHECK(desk_dimension(14) == 300);
    CHECK(desk_dimension(25) == 30);
    CHECK(desk_dimension(26) == 30);
    CHECK(!desk_dimension(1).has_value());
    CHECK(!desk_dimension(17).has_value());
}

TEST_CASE("Robertson conservation identity at sampled points") {
    const Problem p = get_problem(1);
    REQUIRE(p.conservation_vectors.size() == 1);
    const Vector& c = p.conservation_vectors[0];
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int sample = 0; sample < 100; ++sample) {
        Vector x = p.default_start;
        for (int i = 0; i < x.size(); ++i) x[i] += u(rng);
        const Vector f = p.residual(x);
        CHECK(std::abs(c.dot(f)) <= 1e-12 * c.norm() * f.norm() + 1e-300);
    }
}

TEST_CASE("conservation annotations hold for every registered vector") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const ManifestEntry& m : registry_manifest()) {
        if (!m.has_conservation) continue;
        const Problem p = get_problem(m.exam);
        for (const Vector& c : p.conservation_vectors) {
            for (int sample = 0; sample < 100; ++sample) {
                Vector x = p.default_start;
                for (int i = 0; i < x.size(); ++i) x[i] += u(rng);
                const Vector f = p.residual(x);
                CHECK(std::abs(c.dot(f)) <= 1e-12 * c.norm() * f.norm() + 1e-300);
            }
        }
    }
}

TEST_CASE("known solutions are roots to 1e-10") {
    for (const ManifestEntry& m : registry_manifest()) {
        const std::optional<int> desk = desk_dimension(m.exam);
        const Problem p = get_problem(m.exam, desk);
        for (const Vector& sol : p.known_solutions) {
            CHECK(inf_norm(p.residual(sol)) <= 1e-10);
        }
    }
}

TEST_CASE("default starts produce finite residuals") {
    for (const ManifestEntry& m : registry_manifest()) {
        const Problem p = get_problem(m.exam, desk_dimension(m.exam));
        CHECK(p.residual(p.default_start).allFinite());
    }
}

TEST_CASE("extended Rosenbrock vanishes at the all-ones root for every even size") {
    for (int n : {2, 8, 300}) {
        const Problem p = get_problem(8, n);
        CHECK(inf_norm(p.residual(Vector::Ones(n))) == 0.0);
    }
}

TEST_CASE("Robertson residual values") {
    const Problem p = get_problem(1);
    const Vector f0 = p.residual((Vector(3) << 1.0, 0.0, 0.0).finished());
    CHECK(f0[0] == -0.04);
    CHECK(f0[1] == 0.04);
    CHECK(f0[2] == 0.0);
}

TEST_CASE("eigenvalue problems: structure and converged eigenpair accuracy") {
    const Problem p25 = get_problem(25, 30);
    REQUIRE(p25.dimension == 31);
    // Residual row i is sub*x_{i-1} + 2 x_i + x_{i+1} - lambda x_i.
    Vector z = Vector::Zero(31);
    z[3] = 1.0;
    z[30] = 0.0;  // lambda
    const Vector f = p25.residual(z);
    CHECK(f[2] == 1.0);
    CHECK(f[3] == 2.0);
    CHECK(f[4] == 1.0);
    CHECK(f[30] == 0.0);  // x^T x - 1 with unit vector

    for (int exam : {25, 26}) {
        const Problem p = get_problem(exam, 30);
        SolverConfig cfg;
        cfg.tol = 1e-12;
        const SolveReport report = solve_cnmtr(p, cfg);
        REQUIRE(report.status == SolveStatus::Converged);
        const Vector x = report.final_x.head(30);
        const double lambda = report.final_x[30];
        // A x - lambda x is the head of the residual.
        const Vector res = p.residual(report.final_x);
        CHECK(inf_norm(res.head(30)) <= 1e-10);
        CHECK(std::abs(x.squaredNorm() - 1.0) <= 1e-10);
        CHECK(std::isfinite(lambda));
    }
}

TEST_CASE("analytic and forward-difference Jacobians agree near the starts") {
    // Same annulus dispersal as the acceptance check: 6.25%..25% of each
    // component's scale, keeping draws off the degenerate manifolds where a
    // one-sided difference is dominated by curvature.
    std::mt19937_64 rng(123);
    auto annulus_unit = [](std::mt19937_64& g) {
        const double v = static_cast<double>(g() >> 11) * 0x1p-53;
        const double magnitude = 0.25 + 0.75 * v;
        return (g() & 1u) ? magnitude : -magnitude;
    };
    for (const ManifestEntry& m : registry_manifest()) {
        const Problem p = get_problem(m.exam, desk_dimension(m.exam));
        for (int sample = 0; sample < 3; ++sample) {
            Vector x = p.default_start;
            for (int i = 0; i < x.size(); ++i) {
                x[i] += 0.25 * annulus_unit(rng) * std::max(1.0, std::abs(p.default_start[i]));
            }
            if (!p.residual(x).allFinite()) continue;
            const Matrix Ja = evaluate_jacobian(p, x, JacobianMode::Analytic);
            const Matrix Jfd = evaluate_jacobian(p, x, JacobianMode::ForwardDifference);
            const double err = (Ja - Jfd).cwiseAbs().maxCoeff();
            CHECK(err <= 1e-5 * (1.0 + Ja.cwiseAbs().maxCoeff()));
        }
    }
}
