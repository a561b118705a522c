#pragma once

#include <map>
#include <string>
#include <vector>

namespace eoc {

/// A grid of (control parameters -> observable +- confidence interval) rows
/// plus the resolved configuration that produced them. Rows follow `columns`
/// in order; `meta` is emitted as the provenance header of every output file.
struct SweepResult {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> meta;  // key=value provenance (seed, n, replicas, ...)
};

}  // namespace eoc
