#include "eoc/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#include "eoc/errors.hpp"

namespace eoc {

OutputFormat format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format '" + s + "' (expected csv or json)");
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_results(const SweepResult& result, OutputFormat format, std::ostream& os) {
    if (format == OutputFormat::Csv) {
        os << "# version=" << kToolVersion << "\n";
        for (const auto& [key, value] : result.meta) os << "# " << key << "=" << value << "\n";
        for (std::size_t c = 0; c < result.columns.size(); ++c)
            os << (c ? "," : "") << result.columns[c];
        os << "\n";
        for (const auto& row : result.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                os << (c ? "," : "") << format_double(row[c]);
            os << "\n";
        }
    } else {
        nlohmann::json j;
        j["version"] = kToolVersion;
        j["meta"] = result.meta;
        j["columns"] = result.columns;
        j["rows"] = result.rows;
        os << j.dump(2) << "\n";
    }
    if (!os) throw std::runtime_error("write failed");
}

void write_results(const SweepResult& result, OutputFormat format, const std::string& path) {
    if (path.empty() || path == "-") {
        write_results(result, format, std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_results(result, format, f);
}

}  // namespace eoc
