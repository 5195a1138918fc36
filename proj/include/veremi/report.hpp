#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>

#include "veremi/metrics.hpp"

namespace veremi {

// Evaluated metrics of one run, keyed by the sweep parameters recorded in
// its manifest.
struct RunMetrics {
    std::string runName;
    int attackerType = 0;
    std::string density;
    double attackerFraction = 0.0;
    std::uint64_t seed = 0;

    std::map<DetThrKey, ConfusionMatrix> matrices;
    std::map<DetThrKey, GiniReport> giniReports;
};

// Writes pr.csv, gini.csv, confusion.csv and per-group curve-*.dat plot
// data into outDir. Rows are ordered by (detector name, threshold,
// attackerType, density, attackerFraction, seed); undefined cells carry the
// literal `undefined`; undefined points are left out of the curve files.
void emit_report(std::span<const RunMetrics> runs, const std::filesystem::path& outDir);

} // namespace veremi
