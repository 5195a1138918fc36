#include "veremi/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "veremi/errors.hpp"
#include "veremi/format.hpp"
#include "veremi/manifest.hpp"

namespace veremi {

namespace fs = std::filesystem;

void parallel_for_each(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr firstError;
    std::mutex errorMutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(errorMutex);
                if (!firstError) firstError = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (firstError) std::rethrow_exception(firstError);
}

namespace {

void prepare_output_dir(const fs::path& dir, bool overwrite) {
    std::error_code ec;
    if (fs::exists(dir)) {
        if (!overwrite)
            throw IoError(dir.string() + " already exists (pass --overwrite to replace it)");
        fs::remove_all(dir, ec);
        if (ec) throw IoError("cannot remove " + dir.string());
    }
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string());
}

} // namespace

std::vector<fs::path> cmd_generate(const ToolConfig& config, const fs::path& outDir,
                                   const JobOptions& opts) {
    auto plan = plan_runs(config);
    std::error_code ec;
    fs::create_directories(outDir, ec);
    if (ec) throw IoError("cannot create " + outDir.string());

    std::vector<fs::path> dirs(plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) dirs[i] = outDir / run_dir_name(plan[i]);
    // Collision and overwrite handling up front, before any worker starts.
    for (const auto& dir : dirs) prepare_output_dir(dir, opts.overwrite);

    parallel_for_each(plan.size(), opts.jobs, [&](std::size_t i) {
        GeneratedRun run = generate_run(plan[i]);
        write_run(run, dirs[i]);
    });
    return dirs;
}

namespace {

std::vector<std::pair<std::int64_t, fs::path>> list_log_files(const fs::path& runDir) {
    std::vector<std::pair<std::int64_t, fs::path>> logs;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(runDir, ec)) {
        if (!entry.is_regular_file()) continue;
        auto id = receiver_id_from_filename(entry.path().filename().string());
        if (id) logs.emplace_back(*id, entry.path());
    }
    if (ec) throw IoError("cannot list " + runDir.string());
    std::sort(logs.begin(), logs.end());
    return logs;
}

void require_manifest(const fs::path& runDir, bool external) {
    if (external) return;
    if (!fs::exists(runDir / kManifestFilename))
        throw DataError(runDir.string() +
                        " has no manifest.json (pass --external for third-party data)");
}

} // namespace

DetectSummary detect_run_dir(const fs::path& runDir, const DetectorConfig& config, bool external,
                             bool overwrite) {
    config.validate();
    DetectorConfig sorted = config;
    sorted.normalize();

    if (!fs::is_directory(runDir)) throw DataError(runDir.string() + " is not a run directory");
    require_manifest(runDir, external);
    auto logs = list_log_files(runDir);
    if (logs.empty()) throw DataError(runDir.string() + " contains no log-<id>.jsonl files");

    const fs::path verdictPath = runDir / kVerdictsFilename;
    if (fs::exists(verdictPath) && !overwrite)
        throw IoError(verdictPath.string() + " already exists (pass --overwrite to replace it)");

    std::ofstream out(verdictPath, std::ios::trunc);
    if (!out) throw IoError("cannot write " + verdictPath.string());
    out << "run,receiver,messageID,detector,threshold,verdict\n";

    const std::string runName = runDir.filename().string();
    DetectSummary summary;
    std::string line;
    for (const auto& [receiverId, path] : logs) {
        ParsedLog log = read_reception_log_file(path, receiverId);
        summary.outOfOrderEntries += log.outOfOrderCount;
        DetectStats stats;
        run_detectors(receiverId, log.entries, sorted,
                      [&](const Verdict& v) {
                          line.clear();
                          line += runName;
                          line += ',';
                          line += std::to_string(v.receiverId);
                          line += ',';
                          line += std::to_string(v.messageId);
                          line += ',';
                          line += detector_name(v.detector);
                          line += ',';
                          line += format_double(v.threshold);
                          line += ',';
                          line += v.malicious ? '1' : '0';
                          line += '\n';
                          out << line;
                          ++summary.verdicts;
                      },
                      &stats);
        summary.beacons += stats.beacons;
        summary.nonPositiveSendDelta += stats.nonPositiveSendDelta;
        summary.maxGpsFixAge = std::max(summary.maxGpsFixAge, stats.maxGpsFixAge);
        ++summary.receivers;
    }
    out.close();
    if (!out) throw IoError("write failed for " + verdictPath.string());
    return summary;
}

void cmd_detect(const std::vector<fs::path>& runDirs, const DetectorConfig& config,
                const JobOptions& opts, bool external) {
    if (runDirs.empty()) throw ConfigError("no run directories given");
    std::mutex logMutex;
    parallel_for_each(runDirs.size(), opts.jobs, [&](std::size_t i) {
        DetectSummary s = detect_run_dir(runDirs[i], config, external, opts.overwrite);
        std::lock_guard lock(logMutex);
        std::cerr << runDirs[i].string() << ": " << s.receivers << " receivers, " << s.beacons
                  << " beacons, " << s.verdicts << " verdicts";
        if (s.outOfOrderEntries > 0)
            std::cerr << "; " << s.outOfOrderEntries << " out-of-order log entries (sorted)";
        if (s.nonPositiveSendDelta > 0)
            std::cerr << "; " << s.nonPositiveSendDelta
                      << " beacons with non-positive send-time delta (flagged by SSC)";
        std::cerr << "; max GPS fix age " << s.maxGpsFixAge << "s\n";
    });
}

namespace {

struct VerdictRow {
    std::int64_t receiver = 0;
    std::int64_t messageId = 0;
    Detector detector = Detector::Art;
    double threshold = 0.0;
    bool malicious = false;
};

// Fields: run,receiver,messageID,detector,threshold,verdict
VerdictRow parse_verdict_row(const std::string& line, const std::string& src, std::size_t lineNo) {
    std::array<std::string_view, 6> fields;
    std::string_view rest = line;
    for (std::size_t f = 0; f < 6; ++f) {
        auto comma = rest.find(',');
        if (f < 5) {
            if (comma == std::string_view::npos)
                throw ParseError(src, lineNo, "expected 6 comma-separated fields");
            fields[f] = rest.substr(0, comma);
            rest.remove_prefix(comma + 1);
        } else {
            if (comma != std::string_view::npos)
                throw ParseError(src, lineNo, "expected 6 comma-separated fields");
            fields[f] = rest;
        }
    }
    VerdictRow row;
    auto parse_i64 = [&](std::string_view sv, const char* what) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (ec != std::errc{} || p != sv.data() + sv.size())
            throw ParseError(src, lineNo, std::string("field `") + what + "` is not an integer");
        return v;
    };
    row.receiver = parse_i64(fields[1], "receiver");
    row.messageId = parse_i64(fields[2], "messageID");
    auto det = detector_from_name(std::string(fields[3]));
    if (!det) throw ParseError(src, lineNo, "unknown detector name");
    row.detector = *det;
    {
        double v = 0.0;
        auto [p, ec] = std::from_chars(fields[4].data(), fields[4].data() + fields[4].size(), v);
        if (ec != std::errc{} || p != fields[4].data() + fields[4].size())
            throw ParseError(src, lineNo, "field `threshold` is not a number");
        row.threshold = v;
    }
    if (fields[5] == "1")
        row.malicious = true;
    else if (fields[5] == "0")
        row.malicious = false;
    else
        throw ParseError(src, lineNo, "field `verdict` must be 0 or 1");
    return row;
}

} // namespace

RunMetrics evaluate_run_dir(const fs::path& runDir, bool includeAttackerReceivers, bool external) {
    require_manifest(runDir, external);
    const fs::path gtPath = runDir / kGroundTruthFilename;
    if (!fs::exists(gtPath)) throw DataError(runDir.string() + " has no groundtruth.jsonl");
    auto truth = read_ground_truth_file(gtPath);

    LabelMap labels;
    MetricScope scope;
    scope.includeAttackerReceivers = includeAttackerReceivers;
    std::set<std::int64_t> senders;
    for (const auto& [id, gt] : truth) {
        labels[id] = is_malicious_label(gt.attackerType);
        senders.insert(gt.senderId);
        if (is_malicious_label(gt.attackerType)) scope.attackerReceivers.insert(gt.senderId);
    }

    RunMetrics metrics;
    metrics.runName = runDir.filename().string();
    if (external) {
        int maxType = 0;
        for (const auto& [id, gt] : truth)
            maxType = std::max(maxType, attacker_code(gt.attackerType));
        metrics.attackerType = maxType;
        metrics.density = "external";
        double realized = senders.empty() ? 0.0
                                          : static_cast<double>(scope.attackerReceivers.size()) /
                                                static_cast<double>(senders.size());
        metrics.attackerFraction = std::round(realized * 100.0) / 100.0;
        metrics.seed = 0;
    } else {
        RunManifest manifest = read_manifest_file(runDir / kManifestFilename);
        metrics.attackerType = manifest.attackerType;
        metrics.density = manifest.density;
        metrics.attackerFraction = manifest.attackerFraction;
        metrics.seed = manifest.seed;
    }

    const fs::path verdictPath = runDir / kVerdictsFilename;
    std::ifstream in(verdictPath);
    if (!in)
        throw DataError(verdictPath.string() + " is missing (run the detect step first)");

    MetricsAccumulator acc(labels, scope);
    std::string line;
    std::size_t lineNo = 0;
    const std::string src = verdictPath.string();
    while (std::getline(in, line)) {
        ++lineNo;
        if (lineNo == 1 || line.empty()) continue; // header
        VerdictRow row = parse_verdict_row(line, src, lineNo);
        Verdict v;
        v.receiverId = row.receiver;
        v.messageId = row.messageId;
        v.detector = row.detector;
        v.threshold = row.threshold;
        v.malicious = row.malicious;
        acc.add(v);
    }
    metrics.matrices = acc.matrices();
    metrics.giniReports = acc.gini_reports();
    return metrics;
}

void cmd_report(std::vector<fs::path> runDirs, const fs::path& outDir,
                bool includeAttackerReceivers, bool external) {
    if (runDirs.empty()) throw ConfigError("no run directories given");
    std::sort(runDirs.begin(), runDirs.end());
    std::vector<RunMetrics> all;
    all.reserve(runDirs.size());
    for (const auto& dir : runDirs)
        all.push_back(evaluate_run_dir(dir, includeAttackerReceivers, external));
    emit_report(all, outDir);
}

} // namespace veremi
