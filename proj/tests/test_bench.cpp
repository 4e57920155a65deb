#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "newtonflow/bench.hpp"

using namespace newtonflow;

namespace {

BenchOptions core_options() {
    BenchOptions options;
    options.suite = SuiteSelection::Core;
    options.scale = ScaleSelection::Desk;
    options.solvers = {SolverKind::Cnmtr, SolverKind::NewtonLs};
    options.tol = 1e-12;
    return options;
}

}  // namespace

TEST_CASE("bench rows are ordered and deterministic apart from timing") {
    const BenchOptions options = core_options();
    const BenchResult a = run_bench(options);
    const BenchResult b = run_bench(options);
    REQUIRE(a.rows.size() == b.rows.size());
    REQUIRE(a.rows.size() == 2 * core_exams().size());

    int prev_exam = 0;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const BenchRow& ra = a.rows[i];
        const BenchRow& rb = b.rows[i];
        CHECK(ra.exam == rb.exam);
        CHECK(ra.solver == rb.solver);
        CHECK(ra.status == rb.status);
        CHECK(ra.final_res_inf == rb.final_res_inf);
        CHECK(ra.itc == rb.itc);
        CHECK(ra.trials == rb.trials);
        CHECK(ra.n_feval == rb.n_feval);
        CHECK(ra.n_jeval == rb.n_jeval);
        CHECK(ra.exam >= prev_exam);
        if (ra.exam == prev_exam && i % 2 == 1) {
            CHECK(ra.solver == "newton-ls");  // cnmtr listed first per exam
        }
        prev_exam = ra.exam;
    }
}

TEST_CASE("summaries match the rows") {
    const BenchResult result = run_bench(core_options());
    REQUIRE(result.summaries.size() == 2);
    for (const BenchSummary& s : result.summaries) {
        int failed = 0;
        for (const BenchRow& row : result.rows) {
            if (row.solver == s.solver && row.status != "Converged") ++failed;
        }
        CHECK(s.failed == failed);
    }
    int wins = 0;
    for (const BenchSummary& s : result.summaries) wins += s.min_time_wins;
    CHECK(wins >= static_cast<int>(core_exams().size()));

    // The continuation solver clears the core set; the plain Newton baseline
    // cannot factor the singular Robertson Jacobian.
    CHECK(result.summaries[0].solver == "cnmtr");
    CHECK(result.summaries[0].failed == 0);
    CHECK(result.summaries[1].solver == "newton-ls");
    CHECK(result.summaries[1].failed >= 1);
}

TEST_CASE("single-threaded run matches the parallel one") {
    BenchOptions options = core_options();
    options.solvers = {SolverKind::Cnmtr};
    options.threads = 1;
    const BenchResult serial = run_bench(options);
    options.threads = 4;
    const BenchResult parallel = run_bench(options);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].exam == parallel.rows[i].exam);
        CHECK(serial.rows[i].status == parallel.rows[i].status);
        CHECK(serial.rows[i].final_res_inf == parallel.rows[i].final_res_inf);
        CHECK(serial.rows[i].trials == parallel.rows[i].trials);
    }
}

TEST_CASE("empty solver list is rejected") {
    BenchOptions options = core_options();
    options.solvers.clear();
    CHECK_THROWS_AS(run_bench(options), std::invalid_argument);
}

TEST_CASE("csv and markdown emitters cover every row") {
    BenchOptions options = core_options();
    options.solvers = {SolverKind::Cnmtr};
    const BenchResult result = run_bench(options);

    std::ostringstream csv;
    write_bench_csv(csv, result);
    const std::string csv_text = csv.str();
    CHECK(csv_text.rfind("exam,solver,status,", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv_text) lines += c == '\n';
    CHECK(lines == result.rows.size() + 1 + result.summaries.size());

    std::ostringstream md;
    write_bench_markdown(md, result);
    CHECK(md.str().find("| exam | solver |") == 0);
    CHECK(md.str().find("minimum-time wins") != std::string::npos);
}

TEST_CASE("thread cap comes from the environment") {
    CHECK(bench_thread_cap() >= 1);

    const char* saved = std::getenv("NEWTONFLOW_THREADS");
    const std::string restore = saved ? saved : "";
    setenv("NEWTONFLOW_THREADS", "3", 1);
    CHECK(bench_thread_cap() == 3);
    setenv("NEWTONFLOW_THREADS", "not-a-number", 1);
    CHECK(bench_thread_cap() >= 1);  // invalid values fall back to cores
    if (saved) {
        setenv("NEWTONFLOW_THREADS", restore.c_str(), 1);
    } else {
        unsetenv("NEWTONFLOW_THREADS");
    }
}
