#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include "newtonflow/trace_io.hpp"

namespace {

const char* cli_path() {
    const char* path = std::getenv("NEWTONFLOW_CLI");
    REQUIRE_MESSAGE(path != nullptr,
                    "NEWTONFLOW_CLI must point at the built CLI (ctest sets it)");
    return path;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    REQUIRE(raw != -1);
    return WEXITSTATUS(raw);
}

}  // namespace

TEST_CASE("solve exits 0 on convergence") {
    CHECK(run_cli("solve --exam 20 --solver cnmtr --tol 1e-12") == 0);
}

TEST_CASE("unknown exam is a usage error") {
    CHECK(run_cli("solve --exam 99") == 2);
    CHECK(run_cli("solve --exam 5 --n 7") == 2);       // not scalable
    CHECK(run_cli("solve --exam 8 --n 41") == 2);      // odd override
    CHECK(run_cli("solve --exam 20 --x0 1,2,3") == 2); // wrong length
    CHECK(run_cli("nonsense") == 2);
}

TEST_CASE("baseline failure on the singular Robertson Jacobian exits 1") {
    CHECK(run_cli("solve --exam 1 --solver newton-ls") == 1);
}

TEST_CASE("bench usage errors exit 2") {
    CHECK(run_cli("bench --solvers ,") == 2);
    CHECK(run_cli("bench --suite everything") == 2);
}

TEST_CASE("list succeeds") {
    CHECK(run_cli("list") == 0);
}

TEST_CASE("solve writes a parsable trace file") {
    const std::string path = "cli_trace_test.csv";
    std::remove(path.c_str());
    CHECK(run_cli("solve --exam 7 --tol 1e-12 --trace-out " + path) == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    const auto rows = newtonflow::read_trace_csv(in);
    CHECK(rows.size() >= 10);
    std::remove(path.c_str());
}
