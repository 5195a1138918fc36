#pragma once

#include <cstdint>
#include <variant>

#include "veremi/types.hpp"
#include "veremi/vec3.hpp"

namespace veremi {

// One local GPS self-update (log record `type` 2).
struct GpsRecord {
    double rcvTime = 0.0;
    Vec3 pos;
    Vec3 spd;
    Vec3 posNoise;
    Vec3 spdNoise;

    friend bool operator==(const GpsRecord&, const GpsRecord&) = default;
};

// One received beacon (log record `type` 3). pos/spd are the claimed values
// as seen by this receiver, i.e. transmitted content plus receiver noise.
struct BeaconRecord {
    double rcvTime = 0.0;
    double sendTime = 0.0;
    std::int64_t senderId = 0;
    std::int64_t messageId = 0;
    Vec3 pos;
    Vec3 spd;
    double rssi = 0.0;
    Vec3 posNoise;
    Vec3 spdNoise;

    friend bool operator==(const BeaconRecord&, const BeaconRecord&) = default;
};

// Per-transmitted-message truth: sender role and true kinematic state.
struct GroundTruthRecord {
    double sendTime = 0.0;
    std::int64_t senderId = 0;
    AttackerType attackerType = AttackerType::Legitimate;
    std::int64_t messageId = 0;
    Vec3 truePos;
    Vec3 trueSpd;

    friend bool operator==(const GroundTruthRecord&, const GroundTruthRecord&) = default;
};

using LogEntry = std::variant<GpsRecord, BeaconRecord>;

inline double entry_rcv_time(const LogEntry& e) {
    return std::holds_alternative<GpsRecord>(e) ? std::get<GpsRecord>(e).rcvTime
                                                : std::get<BeaconRecord>(e).rcvTime;
}

// One detection event joined with its ground-truth label
// (true = attacker-originated message).
struct LabeledEvent {
    std::int64_t receiverId = 0;
    BeaconRecord beacon;
    bool label = false;

    friend bool operator==(const LabeledEvent&, const LabeledEvent&) = default;
};

} // namespace veremi
