#pragma once

#include <filesystem>
#include <vector>

#include "veremi/config.hpp"
#include "veremi/report.hpp"

namespace veremi {

struct JobOptions {
    int jobs = 0; // 0 = hardware concurrency
    bool overwrite = false;
};

// Runs fn(0..count-1) on a bounded worker pool; rethrows the first worker
// exception.
void parallel_for_each(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

// Generates one run directory per planned combination under outDir.
// Returns the created directories in plan order.
std::vector<std::filesystem::path> cmd_generate(const ToolConfig& config,
                                                const std::filesystem::path& outDir,
                                                const JobOptions& opts);

struct DetectSummary {
    std::size_t receivers = 0;
    std::size_t beacons = 0;
    std::size_t verdicts = 0;
    std::size_t outOfOrderEntries = 0;
    std::size_t nonPositiveSendDelta = 0;
    double maxGpsFixAge = 0.0;
};

// Runs the detectors over one run directory, writing <runDir>/verdicts.csv.
DetectSummary detect_run_dir(const std::filesystem::path& runDir, const DetectorConfig& config,
                             bool external, bool overwrite);

void cmd_detect(const std::vector<std::filesystem::path>& runDirs, const DetectorConfig& config,
                const JobOptions& opts, bool external);

// Reads verdicts.csv + ground truth (+ manifest unless external) back into
// per-run metrics.
RunMetrics evaluate_run_dir(const std::filesystem::path& runDir, bool includeAttackerReceivers,
                            bool external);

void cmd_report(std::vector<std::filesystem::path> runDirs, const std::filesystem::path& outDir,
                bool includeAttackerReceivers, bool external);

} // namespace veremi
