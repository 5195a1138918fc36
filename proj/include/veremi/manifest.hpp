#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace veremi {

struct GeneratedRun;
struct ScenarioConfig;

// Reproducibility record written next to every generated run. All contents
// are derived from the configuration and the simulation itself (the recorded
// time span is simulation time), so reruns are byte-identical.
struct RunManifest {
    std::string tool;
    std::string toolVersion;
    std::uint64_t seed = 0;

    // effective scenario snapshot
    std::string density;
    int bandMin = 0;
    int bandMax = 0;
    int attackerType = 0;
    double attackerFraction = 0.0;
    int durationSeconds = 0;
    int beaconRate = 0;
    int gpsRate = 0;
    double commRange = 0.0;
    double lossExponent = 0.0;
    double noiseSigmaPos = 0.0;
    double noiseSigmaSpd = 0.0;
    double speedLimit = 0.0;
    double playground[4] = {0, 0, 0, 0}; // minX, minY, maxX, maxY

    // attack parameter snapshot
    double constantPos[3] = {0, 0, 0};
    double constantOffset[3] = {0, 0, 0};
    double randomOffsetBound = 0.0;
    double stopProbIncrement = 0.0;
    std::string claimedSpeedPolicy;

    // realized run
    int vehicleCount = 0;
    std::vector<std::int64_t> attackerIds;
    double simTimeBegin = 0.0;
    double simTimeEnd = 0.0;
    std::size_t messageCount = 0;
    std::size_t receptionCount = 0;
    double meanSpeed = 0.0;
    double medianSpeed = 0.0;
};

RunManifest make_manifest(const GeneratedRun& run);
void write_manifest_file(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest_file(const std::filesystem::path& path);

} // namespace veremi
