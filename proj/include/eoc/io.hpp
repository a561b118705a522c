#pragma once

// Machine-readable result output. CSV files carry a commented provenance
// header ("# key=value" lines, sorted, plus the tool version), then the column
// row, then data printed with 17 significant digits so reruns are
// byte-comparable. JSON mirrors the same content as
// {"meta": {...}, "columns": [...], "rows": [[...], ...]}.

#include <iosfwd>
#include <string>

#include "eoc/sweep.hpp"

namespace eoc {

inline constexpr const char* kToolVersion = "0.1.0";

enum class OutputFormat { Csv, Json };

OutputFormat format_from_string(const std::string& s);

/// Shortest round-trip decimal form of x (17 significant digits).
std::string format_double(double x);

void write_results(const SweepResult& result, OutputFormat format, std::ostream& os);

/// Writes to `path`, or to stdout when path is "-" or empty.
void write_results(const SweepResult& result, OutputFormat format, const std::string& path);

}  // namespace eoc
