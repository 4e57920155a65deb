#include "newtonflow/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "newtonflow/trace_io.hpp"

namespace newtonflow {

const char* to_string(SolverKind kind) {
    return kind == SolverKind::Cnmtr ? "cnmtr" : "newton-ls";
}

int bench_thread_cap() {
    const int hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NEWTONFLOW_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) {
            return static_cast<int>(v);
        }
    }
    return hw;
}

namespace {

BenchRow run_one(int exam, SolverKind solver, const BenchOptions& options) {
    const std::optional<int> n_override =
        options.scale == ScaleSelection::Desk ? desk_dimension(exam) : std::nullopt;
    const Problem p = get_problem(exam, n_override);

    SolveReport report;
    if (solver == SolverKind::Cnmtr) {
        SolverConfig cfg;
        cfg.tol = options.tol;
        cfg.maxit = options.maxit;
        report = solve_cnmtr(p, cfg);
    } else {
        LineSearchConfig cfg;
        cfg.tol = options.tol;
        cfg.maxit = options.maxit;
        report = solve_damped_newton(p, cfg);
    }

    BenchRow row;
    row.exam = exam;
    row.solver = to_string(solver);
    row.status = to_string(report.status);
    row.cpu_seconds = report.wall_time_seconds;
    row.final_res_inf = report.final_res_inf;
    row.itc = report.itc;
    row.trials = report.trials;
    row.n_feval = report.n_feval;
    row.n_jeval = report.n_jeval;
    return row;
}

}  // namespace

BenchResult run_bench(const BenchOptions& options) {
    if (options.solvers.empty()) {
        throw std::invalid_argument("run_bench: no solvers selected");
    }
    std::vector<int> exams;
    if (options.suite == SuiteSelection::Core) {
        exams = core_exams();
    } else {
        for (const ManifestEntry& m : registry_manifest()) exams.push_back(m.exam);
    }

    struct Task {
        int exam;
        SolverKind solver;
    };
    std::vector<Task> tasks;
    for (int exam : exams) {
        for (SolverKind solver : options.solvers) tasks.push_back({exam, solver});
    }

    BenchResult result;
    result.rows.resize(tasks.size());
    const int threads =
        std::min<int>(options.threads > 0 ? options.threads : bench_thread_cap(),
                      static_cast<int>(tasks.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            result.rows[i] = run_one(tasks[i].exam, tasks[i].solver, options);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
                result.rows[i] = run_one(tasks[i].exam, tasks[i].solver, options);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const BenchRow& a, const BenchRow& b) {
                         return a.exam != b.exam ? a.exam < b.exam : a.solver < b.solver;
                     });

    std::map<std::string, BenchSummary> summary;
    for (SolverKind s : options.solvers) {
        summary[to_string(s)].solver = to_string(s);
    }
    for (const BenchRow& row : result.rows) {
        if (row.status != "Converged") ++summary[row.solver].failed;
    }
    for (int exam : exams) {
        double best = std::numeric_limits<double>::infinity();
        for (const BenchRow& row : result.rows) {
            if (row.exam == exam) best = std::min(best, row.cpu_seconds);
        }
        for (const BenchRow& row : result.rows) {
            if (row.exam == exam && row.cpu_seconds <= best) {
                ++summary[row.solver].min_time_wins;
            }
        }
    }
    for (SolverKind s : options.solvers) {
        result.summaries.push_back(summary[to_string(s)]);
    }
    return result;
}

void write_bench_csv(std::ostream& out, const BenchResult& result) {
    out << "exam,solver,status,cpu_seconds,final_res_inf,itc,trials,n_feval,n_jeval\n";
    for (const BenchRow& r : result.rows) {
        out << r.exam << ',' << r.solver << ',' << r.status << ',' << format_real(r.cpu_seconds)
            << ',' << format_real(r.final_res_inf) << ',' << r.itc << ',' << r.trials << ','
            << r.n_feval << ',' << r.n_jeval << '\n';
    }
    for (const BenchSummary& s : result.summaries) {
        out << "# solver " << s.solver << ": failed " << s.failed << ", min-time wins "
            << s.min_time_wins << '\n';
    }
}

void write_bench_markdown(std::ostream& out, const BenchResult& result) {
    out << "| exam | solver | status | cpu (s) | final res inf | itc | trials | n_feval | n_jeval |\n";
    out << "|-----:|--------|--------|--------:|--------------:|----:|-------:|--------:|--------:|\n";
    char buf[64];
    for (const BenchRow& r : result.rows) {
        std::snprintf(buf, sizeof(buf), "%.2e", r.cpu_seconds);
        out << "| " << r.exam << " | " << r.solver << " | " << r.status << " | " << buf;
        std::snprintf(buf, sizeof(buf), "%.2e", r.final_res_inf);
        out << " | " << buf << " | " << r.itc << " | " << r.trials << " | " << r.n_feval
            << " | " << r.n_jeval << " |\n";
    }
    out << '\n';
    for (const BenchSummary& s : result.summaries) {
        out << "- solver `" << s.solver << "`: failed problems " << s.failed
            << ", minimum-time wins " << s.min_time_wins << '\n';
    }
}

}  // namespace newtonflow
