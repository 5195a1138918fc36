#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "veremi/records.hpp"

namespace veremi {

// Reception logs and ground truth are line-delimited JSON with the field
// names of the published dataset:
//   log records:   type (2 gps | 3 beacon), rcvTime, sendTime, sender,
//                  messageID, pos, spd, RSSI, pos_noise, spd_noise
//   ground truth:  type (= attacker code), time, sender, messageID, pos, spd
// Unknown extra fields are ignored so third-party files parse.

struct ParsedLog {
    std::vector<LogEntry> entries; // sorted by rcvTime (stable)
    std::size_t outOfOrderCount = 0; // rcvTime inversions found in file order
};

ParsedLog parse_reception_log(std::istream& in, std::int64_t receiverId,
                              const std::string& sourceName = "<stream>");

std::map<std::int64_t, GroundTruthRecord> parse_ground_truth(
    std::istream& in, const std::string& sourceName = "<stream>");

void write_reception_log(std::ostream& out, std::span<const LogEntry> entries);
void write_ground_truth(std::ostream& out, std::span<const GroundTruthRecord> records);

std::vector<LabeledEvent> join_labels(std::span<const LogEntry> log,
                                      const std::map<std::int64_t, GroundTruthRecord>& truth,
                                      std::int64_t receiverId);

// Run-directory layout helpers.
std::string log_filename(std::int64_t receiverId);
inline constexpr const char* kGroundTruthFilename = "groundtruth.jsonl";
inline constexpr const char* kManifestFilename = "manifest.json";
inline constexpr const char* kVerdictsFilename = "verdicts.csv";

ParsedLog read_reception_log_file(const std::filesystem::path& path, std::int64_t receiverId);
std::map<std::int64_t, GroundTruthRecord> read_ground_truth_file(const std::filesystem::path& path);
void write_reception_log_file(const std::filesystem::path& path, std::span<const LogEntry> entries);
void write_ground_truth_file(const std::filesystem::path& path,
                             std::span<const GroundTruthRecord> records);

// Receiver id from a "log-<id>.jsonl" filename, if it matches.
std::optional<std::int64_t> receiver_id_from_filename(const std::string& filename);

} // namespace veremi
