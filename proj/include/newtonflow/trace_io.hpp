#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "newtonflow/cnmtr.hpp"

namespace newtonflow {

enum class TraceFormat {
    Csv,
    Json,
};

/// Column header of the trial trace, fixed verbatim.
inline constexpr const char* kTraceCsvHeader =
    "trial,itc,dt,mu,rho,res_inf,res_2,step_norm,accepted";

/// Serialize a double with 17 significant digits (lossless round trip).
std::string format_real(double value);

/// Write the per-trial trace as CSV: the header above, then one row per
/// trial with reals in 17-significant-digit form and accepted as true/false.
void write_trace_csv(std::ostream& out, const SolveReport& report);

/// JSON mirror of the same report: summary fields plus a "trace" array whose
/// objects carry exactly the CSV columns.
void write_trace_json(std::ostream& out, const SolveReport& report);

/// Parse records back from write_trace_csv output.
std::vector<IterationRecord> read_trace_csv(std::istream& in);

/// Write the trace to a file; throws newtonflow::Error with the path on
/// failure to open or write.
void export_trace(const SolveReport& report, const std::string& path, TraceFormat format);

}  // namespace newtonflow
