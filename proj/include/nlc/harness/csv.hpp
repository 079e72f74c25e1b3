#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nlc/diagnostics.hpp"
#include "nlc/error.hpp"
#include "nlc/inequality_lab.hpp"

namespace nlc {

inline constexpr std::array<std::string_view, 15> kDiagnosticsColumns = {
    "t",       "energy_total", "dissipation", "grad_d_l2_sq", "hess_d_l2_sq", "grad_d_l4_4", "rho_min",  "rho_max",
    "rho_drift_q2", "d3_min",  "unit_drift",  "serrin_acc",   "phi",          "ke",          "divu_res"};

using DiagnosticsRow = std::array<double, kDiagnosticsColumns.size()>;

inline DiagnosticsRow to_row(const DiagnosticsRecord& r) {
    return {r.t,      r.energy_total, r.dissipation, r.grad_d_l2_sq, r.hess_d_l2_sq, r.grad_d_l4_4, r.rho_min, r.rho_max,
            r.rho_drift_q2, r.d3_min, r.unit_drift,  r.serrin_acc,   r.phi,          r.ke,          r.divu_res};
}

inline std::string format_row(const DiagnosticsRow& row) {
    std::string line;
    char buf[40];
    for (std::size_t k = 0; k < row.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", row[k]);
        if (k) line += ',';
        line += buf;
    }
    return line;
}

inline std::string diagnostics_header() {
    std::string h;
    for (std::size_t k = 0; k < kDiagnosticsColumns.size(); ++k) {
        if (k) h += ',';
        h += kDiagnosticsColumns[k];
    }
    return h;
}

/// Streams records to a CSV file, flushing after every row so a failed run keeps its history.
class DiagnosticsCsvWriter {
public:
    explicit DiagnosticsCsvWriter(const std::string& path) : out_(path, std::ios::trunc), path_(path) {
        if (!out_) throw SolverError(Failure::Io, "cannot write '" + path + "'");
        out_ << diagnostics_header() << '\n';
    }
    void write(const DiagnosticsRecord& r) {
        out_ << format_row(to_row(r)) << '\n';
        out_.flush();
        if (!out_) throw SolverError(Failure::Io, "write failed for '" + path_ + "'");
    }
    const std::string& path() const { return path_; }

private:
    std::ofstream out_;
    std::string path_;
};

/// Reads a diagnostics CSV, requiring the exact header.
inline std::vector<DiagnosticsRow> read_diagnostics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SolverError(Failure::Io, "cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != diagnostics_header())
        throw SolverError(Failure::Io, "'" + path + "': unexpected header");
    std::vector<DiagnosticsRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        DiagnosticsRow row{};
        std::istringstream ls(line);
        std::string cell;
        std::size_t k = 0;
        while (std::getline(ls, cell, ',')) {
            if (k >= row.size()) throw SolverError(Failure::Io, path + ":" + std::to_string(lineno) + ": too many columns");
            try {
                std::size_t used = 0;
                row[k] = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw SolverError(Failure::Io, path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
            ++k;
        }
        if (k != row.size()) throw SolverError(Failure::Io, path + ":" + std::to_string(lineno) + ": too few columns");
        rows.push_back(row);
    }
    return rows;
}

inline std::string inequality_csv_header() { return "name,family_tag,lhs,rhs,ratio,holds"; }

inline std::string format_inequality_row(const InequalityReport& r) {
    char buf[200];
    std::string ratio = r.ratio ? "" : "nan";
    if (r.ratio) {
        std::snprintf(buf, sizeof buf, "%.17g", *r.ratio);
        ratio = buf;
    }
    const std::string holds = r.holds ? (*r.holds ? "1" : "0") : "";
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", r.lhs, r.rhs);
    return r.name + "," + r.family_tag + "," + buf + "," + ratio + "," + holds;
}

} // namespace nlc
