#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "newtonflow/newton_ls.hpp"
#include "newtonflow/suite.hpp"

namespace newtonflow {

enum class SuiteSelection { Core, Full };
enum class ScaleSelection { Desk, Paper };
enum class SolverKind { Cnmtr, NewtonLs };

const char* to_string(SolverKind kind);

struct BenchOptions {
    SuiteSelection suite = SuiteSelection::Core;
    ScaleSelection scale = ScaleSelection::Desk;
    std::vector<SolverKind> solvers = {SolverKind::Cnmtr};
    double tol = 1e-12;  ///< benchmark termination; the library default stays 1e-6
    int maxit = 400;
    /// Worker threads; 0 means the NEWTONFLOW_THREADS cap or the hardware count.
    int threads = 0;
};

struct BenchRow {
    int exam = 0;
    std::string solver;
    std::string status;
    double cpu_seconds = 0.0;
    double final_res_inf = 0.0;
    int itc = 0;
    int trials = 0;
    long n_feval = 0;
    long n_jeval = 0;
};

struct BenchSummary {
    std::string solver;
    int failed = 0;          ///< rows with status != Converged
    int min_time_wins = 0;   ///< problems where this solver posted the best time
};

struct BenchResult {
    std::vector<BenchRow> rows;  ///< ordered by (exam, solver)
    std::vector<BenchSummary> summaries;
};

/// Run every (problem, solver) pair of the selection. Solver failures become
/// rows, never exceptions; rows are deterministic apart from cpu_seconds.
/// Throws std::invalid_argument for an empty solver list.
BenchResult run_bench(const BenchOptions& options);

void write_bench_csv(std::ostream& out, const BenchResult& result);
void write_bench_markdown(std::ostream& out, const BenchResult& result);

/// Parallelism cap from NEWTONFLOW_THREADS, or the hardware thread count.
int bench_thread_cap();

}  // namespace newtonflow
