#include "newtonflow/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace newtonflow {

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_trace_csv(std::ostream& out, const SolveReport& report) {
    out << kTraceCsvHeader << '\n';
    for (const IterationRecord& r : report.trace) {
        out << r.trial << ',' << r.itc << ',' << format_real(r.dt) << ',' << format_real(r.mu)
            << ',' << format_real(r.rho) << ',' << format_real(r.res_inf) << ','
            << format_real(r.res_2) << ',' << format_real(r.step_norm) << ','
            << (r.accepted ? "true" : "false") << '\n';
    }
}

void write_trace_json(std::ostream& out, const SolveReport& report) {
    nlohmann::ordered_json j;
    j["status"] = to_string(report.status);
    j["final_res_inf"] = report.final_res_inf;
    j["itc"] = report.itc;
    j["trials"] = report.trials;
    j["n_feval"] = report.n_feval;
    j["n_jeval"] = report.n_jeval;
    j["n_factor"] = report.n_factor;
    j["wall_time_seconds"] = report.wall_time_seconds;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const IterationRecord& r : report.trace) {
        nlohmann::ordered_json row;
        row["trial"] = r.trial;
        row["itc"] = r.itc;
        row["dt"] = r.dt;
        row["mu"] = r.mu;
        row["rho"] = r.rho;
        row["res_inf"] = r.res_inf;
        row["res_2"] = r.res_2;
        row["step_norm"] = r.step_norm;
        row["accepted"] = r.accepted;
        rows.push_back(std::move(row));
    }
    j["trace"] = std::move(rows);
    out << j.dump(2) << '\n';
}

std::vector<IterationRecord> read_trace_csv(std::istream& in) {
    std::vector<IterationRecord> records;
    std::string line;
    if (!std::getline(in, line)) {
        throw Error("read_trace_csv: empty input");
    }
    if (line != kTraceCsvHeader) {
        throw Error("read_trace_csv: unexpected header '" + line + "'");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 9) {
            throw Error("read_trace_csv: expected 9 fields, got " +
                        std::to_string(fields.size()));
        }
        IterationRecord r;
        r.trial = std::atoi(fields[0].c_str());
        r.itc = std::atoi(fields[1].c_str());
        r.dt = std::strtod(fields[2].c_str(), nullptr);
        r.mu = std::strtod(fields[3].c_str(), nullptr);
        r.rho = std::strtod(fields[4].c_str(), nullptr);
        r.res_inf = std::strtod(fields[5].c_str(), nullptr);
        r.res_2 = std::strtod(fields[6].c_str(), nullptr);
        r.step_norm = std::strtod(fields[7].c_str(), nullptr);
        r.accepted = fields[8] == "true";
        records.push_back(r);
    }
    return records;
}

void export_trace(const SolveReport& report, const std::string& path, TraceFormat format) {
    std::ofstream out(path);
    if (!out) {
        throw Error("export_trace: cannot open '" + path + "' for writing");
    }
    if (format == TraceFormat::Csv) {
        write_trace_csv(out, report);
    } else {
        write_trace_json(out, report);
    }
    out.flush();
    if (!out) {
        throw Error("export_trace: write to '" + path + "' failed");
    }
}

}  // namespace newtonflow
