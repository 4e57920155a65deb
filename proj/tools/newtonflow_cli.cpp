#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "newtonflow/bench.hpp"
#include "newtonflow/trace_io.hpp"

namespace {

using namespace newtonflow;

constexpr int kExitConverged = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::optional<Vector> parse_start(const std::string& csv) {
    if (csv.empty()) return std::nullopt;
    std::vector<double> values;
    std::istringstream s(csv);
    std::string field;
    while (std::getline(s, field, ',')) {
        std::size_t pos = 0;
        values.push_back(std::stod(field, &pos));
        if (pos != field.size()) {
            throw std::invalid_argument("bad component '" + field + "' in --x0");
        }
    }
    Vector x0(static_cast<Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) x0[static_cast<Index>(i)] = values[i];
    return x0;
}

int cmd_list() {
    std::printf("%4s  %-38s %9s  %-9s  %-18s  %-12s  %-14s  %s\n", "exam", "name", "dimension",
                "jacobian", "source", "conservation", "known-solution", "scalable");
    for (const ManifestEntry& m : registry_manifest()) {
        std::printf("%4d  %-38s %9d  %-9s  %-18s  %-12s  %-14s  %s\n", m.exam, m.name.c_str(),
                    m.dimension, m.has_analytic_jacobian ? "analytic" : "fd-only",
                    to_string(m.source_tag), m.has_conservation ? "yes" : "no",
                    m.has_known_solution ? "yes" : "no", m.scalable ? "yes" : "no");
    }
    return kExitConverged;
}

int cmd_solve(int exam, const std::string& solver, double tol, int maxit,
              std::optional<int> n_override, const std::string& x0_csv,
              const std::string& trace_out, const std::string& trace_format) {
    Problem p;
    std::optional<Vector> x0;
    try {
        p = get_problem(exam, n_override);
        x0 = parse_start(x0_csv);
        if (x0 && x0->size() != p.dimension) {
            std::cerr << "error: --x0 has " << x0->size() << " components, problem needs "
                      << p.dimension << "\n";
            return kExitUsage;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    SolveReport report;
    if (solver == "cnmtr") {
        SolverConfig cfg;
        cfg.tol = tol;
        cfg.maxit = maxit;
        report = solve_cnmtr(p, cfg, x0);
    } else {
        LineSearchConfig cfg;
        cfg.tol = tol;
        cfg.maxit = maxit;
        report = solve_damped_newton(p, cfg, x0);
    }

    std::printf("problem      : %d (%s), n = %d\n", exam, p.name.c_str(), p.dimension);
    std::printf("solver       : %s\n", solver.c_str());
    std::printf("status       : %s\n", to_string(report.status));
    std::printf("final |F|_inf: %s\n", format_real(report.final_res_inf).c_str());
    std::printf("itc / trials : %d / %d\n", report.itc, report.trials);
    std::printf("evals        : F %ld, J %ld, LU %ld\n", report.n_feval, report.n_jeval,
                report.n_factor);
    std::printf("wall time (s): %.6f\n", report.wall_time_seconds);

    if (!trace_out.empty()) {
        try {
            export_trace(report, trace_out,
                         trace_format == "json" ? TraceFormat::Json : TraceFormat::Csv);
            std::printf("trace        : %s (%s)\n", trace_out.c_str(), trace_format.c_str());
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitFailure;
        }
    }
    return report.status == SolveStatus::Converged ? kExitConverged : kExitFailure;
}

int cmd_bench(const std::string& suite, const std::string& scale, const std::string& solvers_csv,
              double tol, int maxit, const std::string& out_format, const std::string& out_path,
              int threads) {
    BenchOptions options;
    options.suite = suite == "full" ? SuiteSelection::Full : SuiteSelection::Core;
    options.scale = scale == "paper" ? ScaleSelection::Paper : ScaleSelection::Desk;
    options.tol = tol;
    options.maxit = maxit;
    options.threads = threads;
    options.solvers.clear();
    std::istringstream s(solvers_csv);
    std::string name;
    while (std::getline(s, name, ',')) {
        if (name == "cnmtr") {
            options.solvers.push_back(SolverKind::Cnmtr);
        } else if (name == "newton-ls") {
            options.solvers.push_back(SolverKind::NewtonLs);
        } else if (!name.empty()) {
            std::cerr << "error: unknown solver '" << name << "'\n";
            return kExitUsage;
        }
    }
    if (options.solvers.empty()) {
        std::cerr << "error: no solvers selected\n";
        return kExitUsage;
    }
    if (options.scale == ScaleSelection::Paper) {
        std::cerr << "note: paper scale runs dense solves up to n = 3000; "
                     "expect minutes per large problem\n";
    }

    const BenchResult result = run_bench(options);

    auto emit = [&](std::ostream& os) {
        if (out_format == "md") {
            write_bench_markdown(os, result);
        } else {
            write_bench_csv(os, result);
        }
    };
    if (out_path.empty()) {
        emit(std::cout);
    } else {
        std::ofstream os(out_path);
        if (!os) {
            std::cerr << "error: cannot open '" << out_path << "' for writing\n";
            return kExitFailure;
        }
        emit(os);
        std::cout << "wrote " << out_path << "\n";
    }
    for (const BenchSummary& summary : result.summaries) {
        std::cout << "solver " << summary.solver << ": failed " << summary.failed
                  << ", min-time wins " << summary.min_time_wins << "\n";
    }
    return kExitConverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"newtonflow: continuation Newton solver benchmark harness"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "list the registered test problems");

    auto* solve = app.add_subcommand("solve", "run one solver on one problem");
    int exam = 0;
    std::string solver = "cnmtr";
    double tol = 1e-12;
    int maxit = 400;
    int n_override = 0;
    std::string x0_csv, trace_out, trace_format = "csv";
    solve->add_option("--exam", exam, "exam number (see `list`)")->required();
    solve->add_option("--solver", solver, "cnmtr or newton-ls")
        ->check(CLI::IsMember({"cnmtr", "newton-ls"}));
    solve->add_option("--tol", tol, "infinity-norm residual target (default 1e-12)");
    solve->add_option("--maxit", maxit, "iteration cap (default 400)");
    solve->add_option("--n", n_override, "dimension override for scalable problems");
    solve->add_option("--x0", x0_csv, "start point as comma-separated values");
    solve->add_option("--trace-out", trace_out, "write the per-trial trace to this file");
    solve->add_option("--trace-format", trace_format, "csv or json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* bench = app.add_subcommand("bench", "run solver(s) over the problem suite");
    std::string suite = "core", scale = "desk", solvers_csv = "cnmtr";
    std::string out_format = "csv", out_path;
    double bench_tol = 1e-12;
    int bench_maxit = 400, threads = 0;
    bench->add_option("--suite", suite, "core or full (default core)")
        ->check(CLI::IsMember({"core", "full"}));
    bench->add_option("--scale", scale, "desk or paper (default desk)")
        ->check(CLI::IsMember({"desk", "paper"}));
    bench->add_option("--solvers", solvers_csv, "comma list of cnmtr,newton-ls");
    bench->add_option("--tol", bench_tol, "infinity-norm residual target (default 1e-12)");
    bench->add_option("--maxit", bench_maxit, "iteration cap (default 400)");
    bench->add_option("--out-format", out_format, "csv or md (default csv)")
        ->check(CLI::IsMember({"csv", "md"}));
    bench->add_option("--out", out_path, "output file (default stdout)");
    bench->add_option("--threads", threads, "worker threads (default NEWTONFLOW_THREADS or cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitConverged : kExitUsage;
    }

    try {
        if (list->parsed()) {
            return cmd_list();
        }
        if (solve->parsed()) {
            return cmd_solve(exam, solver, tol, maxit,
                             n_override > 0 ? std::optional<int>(n_override) : std::nullopt,
                             x0_csv, trace_out, trace_format);
        }
        return cmd_bench(suite, scale, solvers_csv, bench_tol, bench_maxit, out_format, out_path,
                         threads);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
