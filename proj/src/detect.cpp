#include "veremi/detect.hpp"

#include <algorithm>

#include "veremi/errors.hpp"

namespace veremi {

std::string detector_name(Detector d) {
    switch (d) {
        case Detector::Art: return "ART";
        case Detector::Saw: return "SAW";
        case Detector::Ssc: return "SSC";
        case Detector::Dmv: return "DMV";
    }
    return "ART";
}

std::optional<Detector> detector_from_name(const std::string& name) {
    if (name == "ART") return Detector::Art;
    if (name == "SAW") return Detector::Saw;
    if (name == "SSC") return Detector::Ssc;
    if (name == "DMV") return Detector::Dmv;
    return std::nullopt;
}

const std::vector<double>& DetectorConfig::thresholds(Detector d) const {
    switch (d) {
        case Detector::Art: return artThresholds;
        case Detector::Saw: return sawThresholds;
        case Detector::Ssc: return sscThresholds;
        case Detector::Dmv: return dmvThresholds;
    }
    return artThresholds;
}

std::size_t DetectorConfig::total() const {
    return artThresholds.size() + sawThresholds.size() + sscThresholds.size() +
           dmvThresholds.size();
}

void DetectorConfig::validate() const {
    for (Detector d : kAllDetectors) {
        const auto& ts = thresholds(d);
        if (ts.empty())
            throw ConfigError(detector_name(d) + " threshold list must not be empty");
        for (double t : ts)
            if (!(t > 0.0))
                throw ConfigError(detector_name(d) + " thresholds must be positive");
        auto sorted = ts;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ConfigError(detector_name(d) + " thresholds must be unique");
    }
}

void DetectorConfig::normalize() {
    std::sort(artThresholds.begin(), artThresholds.end());
    std::sort(sawThresholds.begin(), sawThresholds.end());
    std::sort(sscThresholds.begin(), sscThresholds.end());
    std::sort(dmvThresholds.begin(), dmvThresholds.end());
}

bool art_check(const ReceiverContext& ctx, const BeaconRecord& b, double threshold) {
    return euclidean_distance(ctx.latestGps->pos, b.pos) > threshold;
}

bool saw_check(const ReceiverContext& ctx, const BeaconRecord& b, double threshold) {
    if (ctx.perSender.count(b.senderId)) return false;
    return euclidean_distance(ctx.latestGps->pos, b.pos) < threshold;
}

bool ssc_check(const ReceiverContext& ctx, const BeaconRecord& b, double threshold) {
    auto it = ctx.perSender.find(b.senderId);
    if (it == ctx.perSender.end()) return false;
    const BeaconRecord& prev = it->second;
    double dt = b.sendTime - prev.sendTime;
    if (dt <= 0.0) return true; // implausible claimed timing
    double implied = euclidean_distance(b.pos, prev.pos) / dt;
    return std::abs(implied - b.spd.norm()) > threshold;
}

bool dmv_check(const ReceiverContext& ctx, const BeaconRecord& b, double threshold) {
    auto it = ctx.perSender.find(b.senderId);
    if (it == ctx.perSender.end()) return false;
    return euclidean_distance(b.pos, it->second.pos) < threshold;
}

void run_detectors(std::int64_t receiverId, std::span<const LogEntry> events,
                   const DetectorConfig& config, const VerdictSink& sink, DetectStats* stats) {
    ReceiverContext ctx;
    Verdict v;
    v.receiverId = receiverId;
    for (const auto& e : events) {
        if (std::holds_alternative<GpsRecord>(e)) {
            ctx.latestGps = std::get<GpsRecord>(e);
            if (stats) ++stats->gpsUpdates;
            continue;
        }
        const auto& b = std::get<BeaconRecord>(e);
        if (!ctx.latestGps)
            throw DataError("receiver " + std::to_string(receiverId) +
                            ": beacon received before any GPS self-record (rcvTime " +
                            std::to_string(b.rcvTime) + ")");
        if (stats) {
            ++stats->beacons;
            stats->maxGpsFixAge = std::max(stats->maxGpsFixAge, b.rcvTime - ctx.latestGps->rcvTime);
            auto prev = ctx.perSender.find(b.senderId);
            if (prev != ctx.perSender.end() && b.sendTime - prev->second.sendTime <= 0.0)
                ++stats->nonPositiveSendDelta;
        }
        v.messageId = b.messageId;
        for (Detector d : kAllDetectors) {
            v.detector = d;
            for (double t : config.thresholds(d)) {
                v.threshold = t;
                switch (d) {
                    case Detector::Art: v.malicious = art_check(ctx, b, t); break;
                    case Detector::Saw: v.malicious = saw_check(ctx, b, t); break;
                    case Detector::Ssc: v.malicious = ssc_check(ctx, b, t); break;
                    case Detector::Dmv: v.malicious = dmv_check(ctx, b, t); break;
                }
                sink(v);
            }
        }
        ctx.perSender[b.senderId] = b; // update after the verdicts
    }
}

std::vector<Verdict> run_detectors(std::int64_t receiverId, std::span<const LogEntry> events,
                                   const DetectorConfig& config, DetectStats* stats) {
    std::vector<Verdict> out;
    run_detectors(receiverId, events, config, [&](const Verdict& v) { out.push_back(v); }, stats);
    return out;
}

} // namespace veremi
