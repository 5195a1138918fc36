#include "veremi/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "veremi/errors.hpp"

namespace veremi {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = trim(token);
        if (!token.empty()) out.push_back(token);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& token) {
    try {
        std::size_t pos = 0;
        double v = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key `" + key + "`: `" + token + "` is not a number");
    }
}

long long parse_int(const std::string& key, const std::string& token) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ConfigError("config key `" + key + "`: `" + token + "` is not an integer");
    return v;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& tok : split_list(value)) out.push_back(parse_double(key, tok));
    if (out.empty()) throw ConfigError("config key `" + key + "` has an empty value");
    return out;
}

void parse_band(const std::string& key, const std::string& value, DensityClass& band) {
    auto parts = split_list(value);
    if (parts.size() != 2)
        throw ConfigError("config key `" + key + "` expects `min, max`");
    band.bandMin = static_cast<int>(parse_int(key, parts[0]));
    band.bandMax = static_cast<int>(parse_int(key, parts[1]));
}

} // namespace

DensityClass ToolConfig::band(DensityTag tag) const {
    switch (tag) {
        case DensityTag::Low: return lowBand;
        case DensityTag::Medium: return mediumBand;
        case DensityTag::High: return highBand;
    }
    return lowBand;
}

void apply_config_entry(ToolConfig& c, const std::string& rawKey, const std::string& rawValue) {
    const std::string key = trim(rawKey);
    const std::string value = trim(rawValue);
    if (key.empty()) throw ConfigError("empty config key");
    if (value.empty()) throw ConfigError("config key `" + key + "` has an empty value");

    if (key == "density") {
        c.densities.clear();
        for (const auto& tok : split_list(value)) {
            auto tag = density_tag_from_string(tok);
            if (!tag)
                throw ConfigError("config key `density`: `" + tok +
                                  "` is not one of low/medium/high");
            c.densities.push_back(*tag);
        }
    } else if (key == "attackerFraction") {
        c.fractions = parse_double_list(key, value);
    } else if (key == "attackerType") {
        c.types.clear();
        for (const auto& tok : split_list(value)) {
            auto t = attacker_type_from_code(static_cast<int>(parse_int(key, tok)));
            if (!t)
                throw ConfigError("config key `attackerType`: `" + tok +
                                  "` is not one of 0/1/2/4/8/16");
            c.types.push_back(*t);
        }
    } else if (key == "seed") {
        c.seeds.clear();
        for (const auto& tok : split_list(value))
            c.seeds.push_back(static_cast<std::uint64_t>(parse_int(key, tok)));
    } else if (key == "durationSeconds") {
        c.base.durationSeconds = static_cast<int>(parse_int(key, value));
    } else if (key == "beaconRate") {
        c.base.beaconRate = static_cast<int>(parse_int(key, value));
    } else if (key == "gpsRate") {
        c.base.gpsRate = static_cast<int>(parse_int(key, value));
    } else if (key == "commRange") {
        c.base.commRange = parse_double(key, value);
    } else if (key == "lossExponent") {
        c.base.lossExponent = parse_double(key, value);
    } else if (key == "noiseSigmaPos") {
        c.base.noiseSigmaPos = parse_double(key, value);
    } else if (key == "noiseSigmaSpd") {
        c.base.noiseSigmaSpd = parse_double(key, value);
    } else if (key == "speedLimit") {
        c.base.speedLimit = parse_double(key, value);
    } else if (key == "playground") {
        auto parts = parse_double_list(key, value);
        if (parts.size() != 4)
            throw ConfigError("config key `playground` expects `minX, minY, maxX, maxY`");
        c.base.playground = {parts[0], parts[1], parts[2], parts[3]};
    } else if (key == "constantPos") {
        auto parts = parse_double_list(key, value);
        if (parts.size() != 2 && parts.size() != 3)
            throw ConfigError("config key `constantPos` expects `x, y[, z]`");
        c.base.attack.constantPos = {parts[0], parts[1], parts.size() == 3 ? parts[2] : 0.0};
    } else if (key == "constantOffset") {
        auto parts = parse_double_list(key, value);
        if (parts.size() != 2 && parts.size() != 3)
            throw ConfigError("config key `constantOffset` expects `dx, dy[, dz]`");
        c.base.attack.constantOffset = {parts[0], parts[1], parts.size() == 3 ? parts[2] : 0.0};
    } else if (key == "randomOffsetBound") {
        c.base.attack.randomOffsetBound = parse_double(key, value);
    } else if (key == "stopProbIncrement") {
        c.base.attack.stopProbIncrement = parse_double(key, value);
    } else if (key == "artThresholds") {
        c.detectors.artThresholds = parse_double_list(key, value);
    } else if (key == "sawThresholds") {
        c.detectors.sawThresholds = parse_double_list(key, value);
    } else if (key == "sscThresholds") {
        c.detectors.sscThresholds = parse_double_list(key, value);
    } else if (key == "dmvThresholds") {
        c.detectors.dmvThresholds = parse_double_list(key, value);
    } else if (key == "lowBand") {
        parse_band(key, value, c.lowBand);
    } else if (key == "mediumBand") {
        parse_band(key, value, c.mediumBand);
    } else if (key == "highBand") {
        parse_band(key, value, c.highBand);
    } else {
        throw ConfigError("unknown config key `" + key + "`");
    }
}

ToolConfig load_tool_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    ToolConfig c;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineNo) +
                              ": expected `key = value`");
        try {
            apply_config_entry(c, line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(path.string() + ":" + std::to_string(lineNo) + ": " + e.what());
        }
    }
    return c;
}

std::vector<ScenarioConfig> plan_runs(const ToolConfig& config) {
    if (config.densities.empty() || config.fractions.empty() || config.types.empty() ||
        config.seeds.empty())
        throw ConfigError("density/attackerFraction/attackerType/seed must be non-empty");

    std::vector<ScenarioConfig> plan;
    std::set<std::string> names;
    for (DensityTag density : config.densities) {
        for (double fraction : config.fractions) {
            for (AttackerType type : config.types) {
                for (std::uint64_t seed : config.seeds) {
                    ScenarioConfig run = config.base;
                    run.density = config.band(density);
                    run.density.tag = density;
                    run.attackerFraction = fraction;
                    run.attackerType = type;
                    run.seed = seed;
                    run.validate();
                    if (!names.insert(run_dir_name(run)).second)
                        throw ConfigError("duplicate run combination " + run_dir_name(run));
                    plan.push_back(run);
                }
            }
        }
    }
    return plan;
}

} // namespace veremi
