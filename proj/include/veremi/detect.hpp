#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "veremi/records.hpp"

namespace veremi {

enum class Detector { Art, Saw, Ssc, Dmv };

constexpr std::array<Detector, 4> kAllDetectors = {Detector::Art, Detector::Saw, Detector::Ssc,
                                                   Detector::Dmv};

std::string detector_name(Detector d);
std::optional<Detector> detector_from_name(const std::string& name);

// Threshold sweeps per detector; defaults follow earlier work on these
// mechanisms.
struct DetectorConfig {
    std::vector<double> artThresholds = {100, 200, 300, 400, 450, 500, 550, 600, 700, 800};
    std::vector<double> sawThresholds = {25, 100, 200};
    std::vector<double> sscThresholds = {2.5, 5, 7.5, 10, 15, 20, 25};
    std::vector<double> dmvThresholds = {1, 5, 10, 15, 20, 25};

    const std::vector<double>& thresholds(Detector d) const;
    std::size_t total() const;
    void validate() const; // positive, non-empty, unique
    void normalize();      // sorts each list ascending
};

// Local state one receiver accumulates while scanning its log: the latest
// GPS self-fix and the previous beacon per sender.
struct ReceiverContext {
    std::optional<GpsRecord> latestGps;
    std::map<std::int64_t, BeaconRecord> perSender;
};

struct Verdict {
    std::int64_t receiverId = 0;
    std::int64_t messageId = 0;
    Detector detector = Detector::Art;
    double threshold = 0.0;
    bool malicious = false;
};

// Acceptance range threshold: the claimed position is implausibly far from
// the receiver. Flags strictly beyond the threshold; ties are benign.
bool art_check(const ReceiverContext& ctx, const BeaconRecord& b, double threshold);

// Sudden appearance warning: first beacon from an unknown sender originating
// strictly closer than the threshold.
bool saw_check(const ReceiverContext& ctx, const BeaconRecord& b, double threshold);

// Simple speed check: claimed speed vs. the speed implied by consecutive
// claimed positions and send times. First beacon from a sender is benign;
// a non-positive send-time delta is implausible and flags.
bool ssc_check(const ReceiverContext& ctx, const BeaconRecord& b, double threshold);

// Distance moved verifier: consecutive claimed positions strictly closer
// than the minimum distance. First beacon from a sender is benign.
bool dmv_check(const ReceiverContext& ctx, const BeaconRecord& b, double threshold);

struct DetectStats {
    std::size_t gpsUpdates = 0;
    std::size_t beacons = 0;
    std::size_t nonPositiveSendDelta = 0; // SSC implausible-timing events
    double maxGpsFixAge = 0.0;            // debug: staleness of the fix used
};

using VerdictSink = std::function<void(const Verdict&)>;

// Streams one receiver's log through all detectors at all thresholds. Every
// beacon yields exactly config.total() verdicts, evaluated against the
// context before the beacon, in detector order ART, SAW, SSC, DMV with
// ascending thresholds. Throws DataError on a beacon before any GPS fix.
void run_detectors(std::int64_t receiverId, std::span<const LogEntry> events,
                   const DetectorConfig& config, const VerdictSink& sink,
                   DetectStats* stats = nullptr);

std::vector<Verdict> run_detectors(std::int64_t receiverId, std::span<const LogEntry> events,
                                   const DetectorConfig& config, DetectStats* stats = nullptr);

} // namespace veremi
