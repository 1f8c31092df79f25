#pragma once

#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "mordell/errors.hpp"
#include "mordell/verify.hpp"

namespace mordell {

/// A report row is a VerificationRecord plus a serialization; nothing more.
using ReportRow = VerificationRecord;

enum class ReportFormat { csv, jsonl };

inline constexpr const char* kCsvHeader = "p,p_mod8,period_len,central,witness_residue,method,verdict";

/// One row, no trailing newline. All fields are unsigned integers or fixed
/// keywords, so no quoting or escaping is ever needed. Field order is the
/// same in both formats to keep reports diffable.
inline std::string format_row(const ReportRow& r, ReportFormat format) {
    if (format == ReportFormat::csv) {
        std::string s;
        s.reserve(64);
        s += std::to_string(r.p);
        s += ',';
        s += std::to_string(r.p_mod_8);
        s += ',';
        s += std::to_string(r.period_len);
        s += ',';
        s += std::to_string(r.central);
        s += ',';
        s += std::to_string(r.witness_residue);
        s += ',';
        s += to_string(r.method);
        s += ',';
        s += to_string(r.verdict);
        return s;
    }
    std::string s;
    s.reserve(128);
    s += "{\"p\":";
    s += std::to_string(r.p);
    s += ",\"p_mod8\":";
    s += std::to_string(r.p_mod_8);
    s += ",\"period_len\":";
    s += std::to_string(r.period_len);
    s += ",\"central\":";
    s += std::to_string(r.central);
    s += ",\"witness_residue\":";
    s += std::to_string(r.witness_residue);
    s += ",\"method\":\"";
    s += to_string(r.method);
    s += "\",\"verdict\":\"";
    s += to_string(r.verdict);
    s += "\"}";
    return s;
}

inline void write_report_header(std::ostream& os, ReportFormat format) {
    if (format == ReportFormat::csv) os << kCsvHeader << '\n';
}

inline void write_report_rows(std::ostream& os, const std::vector<ReportRow>& rows,
                              ReportFormat format) {
    for (const ReportRow& r : rows) os << format_row(r, format) << '\n';
}

/// Writes a complete report file: CSV gets the fixed header line, JSONL is
/// bare records. UTF-8, LF line endings (streams are opened binary).
inline void emit_report(const std::vector<ReportRow>& rows, const std::string& path,
                        ReportFormat format) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("emit_report: cannot open " + path + " for writing");
    write_report_header(os, format);
    write_report_rows(os, rows, format);
    os.flush();
    if (!os) throw IoError("emit_report: write to " + path + " failed");
}

}  // namespace mordell
