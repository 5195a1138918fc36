#include "veremi/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "json.hpp"

#include "veremi/errors.hpp"
#include "veremi/scenario.hpp"
#include "veremi/version.hpp"

namespace veremi {

namespace {
using Json = nlohmann::ordered_json;
}

RunManifest make_manifest(const GeneratedRun& run) {
    const ScenarioConfig& c = run.config;
    RunManifest m;
    m.tool = kToolName;
    m.toolVersion = kToolVersion;
    m.seed = c.seed;

    m.density = to_string(c.density.tag);
    m.bandMin = c.density.bandMin;
    m.bandMax = c.density.bandMax;
    m.attackerType = attacker_code(c.attackerType);
    m.attackerFraction = c.attackerFraction;
    m.durationSeconds = c.durationSeconds;
    m.beaconRate = c.beaconRate;
    m.gpsRate = c.gpsRate;
    m.commRange = c.commRange;
    m.lossExponent = c.lossExponent;
    m.noiseSigmaPos = c.noiseSigmaPos;
    m.noiseSigmaSpd = c.noiseSigmaSpd;
    m.speedLimit = c.effective_speed_limit();
    m.playground[0] = c.playground.minX;
    m.playground[1] = c.playground.minY;
    m.playground[2] = c.playground.maxX;
    m.playground[3] = c.playground.maxY;

    m.constantPos[0] = c.attack.constantPos.x;
    m.constantPos[1] = c.attack.constantPos.y;
    m.constantPos[2] = c.attack.constantPos.z;
    m.constantOffset[0] = c.attack.constantOffset.x;
    m.constantOffset[1] = c.attack.constantOffset.y;
    m.constantOffset[2] = c.attack.constantOffset.z;
    m.randomOffsetBound = c.attack.randomOffsetBound;
    m.stopProbIncrement = c.attack.stopProbIncrement;
    m.claimedSpeedPolicy = "true speed; zero vector after an eventual stop";

    m.vehicleCount = static_cast<int>(run.vehicleIds.size());
    for (const auto& [id, role] : run.roles)
        if (is_malicious_label(role)) m.attackerIds.push_back(id);
    m.simTimeBegin = 0.0;
    m.simTimeEnd = static_cast<double>(c.durationSeconds);
    m.messageCount = run.groundTruth.size();
    m.receptionCount = run.reception_count();

    if (!run.speedSamples.empty()) {
        m.meanSpeed = std::accumulate(run.speedSamples.begin(), run.speedSamples.end(), 0.0) /
                      static_cast<double>(run.speedSamples.size());
        std::vector<double> sorted(run.speedSamples);
        auto mid = sorted.begin() + sorted.size() / 2;
        std::nth_element(sorted.begin(), mid, sorted.end());
        m.medianSpeed = *mid;
    }
    return m;
}

void write_manifest_file(const std::filesystem::path& path, const RunManifest& m) {
    Json j;
    j["tool"] = m.tool;
    j["toolVersion"] = m.toolVersion;
    j["seed"] = m.seed;
    Json scenario;
    scenario["density"] = m.density;
    scenario["vehicleBand"] = Json::array({m.bandMin, m.bandMax});
    scenario["attackerType"] = m.attackerType;
    scenario["attackerFraction"] = m.attackerFraction;
    scenario["durationSeconds"] = m.durationSeconds;
    scenario["beaconRate"] = m.beaconRate;
    scenario["gpsRate"] = m.gpsRate;
    scenario["commRange"] = m.commRange;
    scenario["lossExponent"] = m.lossExponent;
    scenario["noiseSigmaPos"] = m.noiseSigmaPos;
    scenario["noiseSigmaSpd"] = m.noiseSigmaSpd;
    scenario["speedLimit"] = m.speedLimit;
    scenario["playground"] =
        Json::array({m.playground[0], m.playground[1], m.playground[2], m.playground[3]});
    j["scenario"] = scenario;
    Json attack;
    attack["constantPos"] = Json::array({m.constantPos[0], m.constantPos[1], m.constantPos[2]});
    attack["constantOffset"] =
        Json::array({m.constantOffset[0], m.constantOffset[1], m.constantOffset[2]});
    attack["randomOffsetBound"] = m.randomOffsetBound;
    attack["stopProbIncrement"] = m.stopProbIncrement;
    attack["claimedSpeed"] = m.claimedSpeedPolicy;
    j["attack"] = attack;
    j["vehicleCount"] = m.vehicleCount;
    j["attackerIds"] = m.attackerIds;
    Json simTime;
    simTime["begin"] = m.simTimeBegin;
    simTime["end"] = m.simTimeEnd;
    j["simTime"] = simTime;
    Json stats;
    stats["messages"] = m.messageCount;
    stats["receptions"] = m.receptionCount;
    stats["meanSpeed"] = m.meanSpeed;
    stats["medianSpeed"] = m.medianSpeed;
    j["stats"] = stats;

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write manifest " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

RunManifest read_manifest_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path.string());
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw DataError("manifest " + path.string() + " is not valid JSON");

    RunManifest m;
    try {
        m.tool = j.value("tool", std::string{});
        m.toolVersion = j.value("toolVersion", std::string{});
        m.seed = j.at("seed").get<std::uint64_t>();
        const auto& s = j.at("scenario");
        m.density = s.at("density").get<std::string>();
        m.bandMin = s.at("vehicleBand").at(0).get<int>();
        m.bandMax = s.at("vehicleBand").at(1).get<int>();
        m.attackerType = s.at("attackerType").get<int>();
        m.attackerFraction = s.at("attackerFraction").get<double>();
        m.durationSeconds = s.at("durationSeconds").get<int>();
        m.beaconRate = s.at("beaconRate").get<int>();
        m.gpsRate = s.at("gpsRate").get<int>();
        m.commRange = s.at("commRange").get<double>();
        m.lossExponent = s.at("lossExponent").get<double>();
        m.noiseSigmaPos = s.at("noiseSigmaPos").get<double>();
        m.noiseSigmaSpd = s.at("noiseSigmaSpd").get<double>();
        m.speedLimit = s.at("speedLimit").get<double>();
        for (int i = 0; i < 4; ++i) m.playground[i] = s.at("playground").at(i).get<double>();
        const auto& a = j.at("attack");
        for (int i = 0; i < 3; ++i) {
            m.constantPos[i] = a.at("constantPos").at(i).get<double>();
            m.constantOffset[i] = a.at("constantOffset").at(i).get<double>();
        }
        m.randomOffsetBound = a.at("randomOffsetBound").get<double>();
        m.stopProbIncrement = a.at("stopProbIncrement").get<double>();
        m.claimedSpeedPolicy = a.value("claimedSpeed", std::string{});
        m.vehicleCount = j.at("vehicleCount").get<int>();
        m.attackerIds = j.at("attackerIds").get<std::vector<std::int64_t>>();
        m.simTimeBegin = j.at("simTime").at("begin").get<double>();
        m.simTimeEnd = j.at("simTime").at("end").get<double>();
        m.messageCount = j.at("stats").at("messages").get<std::size_t>();
        m.receptionCount = j.at("stats").at("receptions").get<std::size_t>();
        m.meanSpeed = j.at("stats").at("meanSpeed").get<double>();
        m.medianSpeed = j.at("stats").at("medianSpeed").get<double>();
    } catch (const Json::exception& e) {
        throw DataError("manifest " + path.string() + ": " + e.what());
    }
    return m;
}

} // namespace veremi
