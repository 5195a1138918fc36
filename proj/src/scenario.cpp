#include "veremi/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "veremi/errors.hpp"
#include "veremi/format.hpp"
#include "veremi/manifest.hpp"

namespace veremi {

void ScenarioConfig::validate() const {
    if (durationSeconds <= 0) throw ConfigError("durationSeconds must be positive");
    if (beaconRate < 1) throw ConfigError("beaconRate must be at least 1 Hz");
    if (gpsRate < 1) throw ConfigError("gpsRate must be at least 1 Hz");
    if (gpsRate % beaconRate != 0)
        throw ConfigError("gpsRate must be an integer multiple of beaconRate");
    if (!(commRange > 0.0)) throw ConfigError("commRange must be positive");
    if (!(lossExponent > 0.0)) throw ConfigError("lossExponent must be positive");
    if (!(attackerFraction >= 0.0 && attackerFraction <= 1.0))
        throw ConfigError("attackerFraction must be in [0, 1]");
    if (playground.degenerate()) throw ConfigError("playground must be a non-degenerate rectangle");
    if (!(noiseSigmaPos >= 0.0)) throw ConfigError("noiseSigmaPos must be non-negative");
    if (!(noiseSigmaSpd >= 0.0)) throw ConfigError("noiseSigmaSpd must be non-negative");
    if (!(speedLimit >= 0.0)) throw ConfigError("speedLimit must be non-negative (0 = default)");
    if (density.bandMin < 1 || density.bandMax < density.bandMin)
        throw ConfigError("density band must satisfy 1 <= bandMin <= bandMax");
    attack.validate();
}

double ScenarioConfig::effective_speed_limit() const {
    if (speedLimit > 0.0) return speedLimit;
    switch (density.tag) {
        case DensityTag::Low: return 30.0;
        case DensityTag::Medium: return 14.0;
        case DensityTag::High: return 13.0;
    }
    return 30.0;
}

namespace mobility {

Vec3 heading_vec(Heading h) {
    switch (h) {
        case Heading::PosX: return {1.0, 0.0, 0.0};
        case Heading::NegX: return {-1.0, 0.0, 0.0};
        case Heading::PosY: return {0.0, 1.0, 0.0};
        case Heading::NegY: return {0.0, -1.0, 0.0};
    }
    return {1.0, 0.0, 0.0};
}

bool is_vertical(Heading h) { return h == Heading::PosY || h == Heading::NegY; }

Heading reverse(Heading h) {
    switch (h) {
        case Heading::PosX: return Heading::NegX;
        case Heading::NegX: return Heading::PosX;
        case Heading::PosY: return Heading::NegY;
        case Heading::NegY: return Heading::PosY;
    }
    return Heading::NegX;
}

RoadGrid RoadGrid::make(const Rect& playground, double speedLimit, double targetBlock) {
    RoadGrid g;
    g.speedLimit = speedLimit;
    auto axis = [&](double lo, double hi) {
        int intervals = std::max<int>(1, static_cast<int>(std::llround((hi - lo) / targetBlock)));
        std::vector<double> coords(intervals + 1);
        for (int i = 0; i <= intervals; ++i)
            coords[i] = lo + (hi - lo) * static_cast<double>(i) / intervals;
        return coords;
    };
    g.xs = axis(playground.minX, playground.maxX);
    g.ys = axis(playground.minY, playground.maxY);
    return g;
}

bool RoadGrid::interior(int ix, int iy) const {
    return ix > 0 && iy > 0 && ix + 1 < static_cast<int>(xs.size()) &&
           iy + 1 < static_cast<int>(ys.size());
}

bool RoadGrid::ns_green(int ix, int iy, double t) const {
    // Deterministic per-intersection cycle offset decorrelates the lights.
    double offset = static_cast<double>((ix * 2654435761ull + iy * 40503ull) % 997ull) / 997.0 *
                    cycleSeconds;
    double phase = std::fmod(t + offset, cycleSeconds);
    return phase < cycleSeconds * greenFraction;
}

namespace {

bool has_node(const RoadGrid& g, int ix, int iy) {
    return ix >= 0 && iy >= 0 && ix < static_cast<int>(g.xs.size()) &&
           iy < static_cast<int>(g.ys.size());
}

void next_node(Heading h, int ix, int iy, int& nx, int& ny) {
    nx = ix;
    ny = iy;
    switch (h) {
        case Heading::PosX: ++nx; break;
        case Heading::NegX: --nx; break;
        case Heading::PosY: ++ny; break;
        case Heading::NegY: --ny; break;
    }
}

// Turn choice at a node: straight is twice as likely as each viable turn;
// reversing only at dead ends.
Heading choose_heading(const RoadGrid& g, int ix, int iy, Heading current, Rng& rng) {
    constexpr Heading all[4] = {Heading::PosX, Heading::NegX, Heading::PosY, Heading::NegY};
    Heading options[4];
    int weights[4];
    int count = 0;
    int total = 0;
    for (Heading h : all) {
        if (h == reverse(current)) continue;
        int nx, ny;
        next_node(h, ix, iy, nx, ny);
        if (!has_node(g, nx, ny)) continue;
        options[count] = h;
        weights[count] = (h == current) ? 2 : 1;
        total += weights[count];
        ++count;
    }
    if (count == 0) return reverse(current);
    auto pick = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(total)));
    for (int i = 0; i < count; ++i) {
        pick -= weights[i];
        if (pick < 0) return options[i];
    }
    return options[count - 1];
}

} // namespace

VehicleMotion spawn(const RoadGrid& g, Rng& rng) {
    VehicleMotion v;
    bool vertical = rng.uniform_int(2) == 1;
    if (vertical) {
        int ix = static_cast<int>(rng.uniform_int(g.xs.size()));
        int seg = static_cast<int>(rng.uniform_int(g.ys.size() - 1));
        double y = rng.uniform(g.ys[seg], g.ys[seg + 1]);
        bool up = rng.uniform_int(2) == 1;
        v.heading = up ? Heading::PosY : Heading::NegY;
        v.pos = {g.xs[ix], y, 0.0};
        v.targetIx = ix;
        v.targetIy = up ? seg + 1 : seg;
    } else {
        int iy = static_cast<int>(rng.uniform_int(g.ys.size()));
        int seg = static_cast<int>(rng.uniform_int(g.xs.size() - 1));
        double x = rng.uniform(g.xs[seg], g.xs[seg + 1]);
        bool right = rng.uniform_int(2) == 1;
        v.heading = right ? Heading::PosX : Heading::NegX;
        v.pos = {x, g.ys[iy], 0.0};
        v.targetIx = right ? seg + 1 : seg;
        v.targetIy = iy;
    }
    v.speed = g.speedLimit; // spawn cruising
    return v;
}

void step(VehicleMotion& v, const RoadGrid& g, double t, double dt, Rng& rng) {
    const bool vertical = is_vertical(v.heading);
    const double sign = (v.heading == Heading::PosX || v.heading == Heading::PosY) ? 1.0 : -1.0;
    const double targetCoord = vertical ? g.ys[v.targetIy] : g.xs[v.targetIx];
    const double movingCoord = vertical ? v.pos.y : v.pos.x;
    const double distToNode = (targetCoord - movingCoord) * sign;
    const double distToStopLine = distToNode - g.stopLineOffset;

    bool red = false;
    if (g.interior(v.targetIx, v.targetIy)) {
        bool nsGreen = g.ns_green(v.targetIx, v.targetIy, t);
        red = vertical ? !nsGreen : nsGreen;
    }
    // Past the stop line the crossing is committed even if the light flips.
    const bool pastLine = distToStopLine < -1e-6;

    double advance;
    if (red && !pastLine) {
        if (distToStopLine <= 1e-9) {
            v.speed = 0.0; // holding at the stop line
            advance = 0.0;
        } else {
            double brakeDist = v.speed * v.speed / (2.0 * g.decel);
            if (distToStopLine <= brakeDist + v.speed * dt)
                v.speed = std::max(0.0, v.speed - g.decel * dt);
            else
                v.speed = std::min(g.speedLimit, v.speed + g.accel * dt);
            advance = v.speed * dt;
            if (advance >= distToStopLine) { // never cross the stop line on red
                advance = distToStopLine;
                v.speed = 0.0;
            }
        }
    } else {
        v.speed = std::min(g.speedLimit, v.speed + g.accel * dt);
        advance = v.speed * dt;
    }

    if (advance >= distToNode && (!red || pastLine)) {
        // Snap to the node and turn; the sub-step remainder is absorbed.
        v.pos = {g.xs[v.targetIx], g.ys[v.targetIy], 0.0};
        int ix = v.targetIx;
        int iy = v.targetIy;
        v.heading = choose_heading(g, ix, iy, v.heading, rng);
        next_node(v.heading, ix, iy, v.targetIx, v.targetIy);
    } else {
        double moved = std::min(advance, std::max(distToNode, 0.0));
        if (vertical)
            v.pos.y += sign * moved;
        else
            v.pos.x += sign * moved;
    }
}

} // namespace mobility

double delivery_probability(double distance, double commRange, double lossExponent) {
    if (distance > commRange) return 0.0;
    double p = 1.0 - std::pow(distance / commRange, lossExponent);
    return std::clamp(p, 0.0, 1.0);
}

bool radio_delivers(const Vec3& txPos, const Vec3& rxPos, const ScenarioConfig& config, Rng& rng) {
    double d = euclidean_distance(txPos, rxPos);
    double p = delivery_probability(d, config.commRange, config.lossExponent);
    if (p <= 0.0) return false;
    return rng.uniform() < p;
}

double rssi_dbm(double distance) { return -34.0 - 22.0 * std::log10(std::max(distance, 1.0)); }

std::size_t GeneratedRun::attacker_count() const {
    std::size_t n = 0;
    for (const auto& [id, role] : roles)
        if (is_malicious_label(role)) ++n;
    return n;
}

std::size_t GeneratedRun::reception_count() const {
    std::size_t n = 0;
    for (const auto& [id, entries] : logs)
        for (const auto& e : entries)
            if (std::holds_alternative<BeaconRecord>(e)) ++n;
    return n;
}

namespace {

constexpr double kSpeedOfLight = 299792458.0; // m/s
constexpr double kProcessingDelay = 1e-3;     // s, fixed MAC + stack latency

Vec3 planar_noise(Rng& rng, double sigma) {
    if (sigma <= 0.0) return {};
    return {rng.gaussian(sigma), rng.gaussian(sigma), 0.0};
}

} // namespace

GeneratedRun generate_run(const ScenarioConfig& config) {
    config.validate();
    GeneratedRun run;
    run.config = config;

    Rng rng(config.seed);
    AttackParams params = config.attack;
    params.playground = config.playground;

    const auto grid =
        mobility::RoadGrid::make(config.playground, config.effective_speed_limit());
    const double dt = 1.0 / config.gpsRate;
    const int ticks = config.durationSeconds * config.gpsRate;
    const int ticksPerBeacon = config.gpsRate / config.beaconRate;

    const int band = config.density.bandMax - config.density.bandMin + 1;
    const int vehicleCount =
        config.density.bandMin + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(band)));

    std::vector<VehicleState> vehicles(vehicleCount);
    for (int i = 0; i < vehicleCount; ++i) {
        run.vehicleIds.push_back(i);
        vehicles[i].id = i;
        vehicles[i].motion = mobility::spawn(grid, rng);
        vehicles[i].beaconPhase = static_cast<int>(rng.uniform_int(ticksPerBeacon));
    }

    run.roles = assign_attackers(run.vehicleIds, config.attackerFraction, config.attackerType, rng);
    for (auto& v : vehicles) {
        v.role = run.roles[v.id];
        v.attackerState.type = v.role;
    }
    for (std::int64_t id : run.vehicleIds) run.logs[id] = {};

    run.speedSamples.reserve(static_cast<std::size_t>(ticks) * vehicleCount);
    std::int64_t nextMessageId = 1;

    for (int k = 0; k < ticks; ++k) {
        const double t = k * dt;

        for (auto& v : vehicles) {
            mobility::step(v.motion, grid, t, dt, rng);
            run.speedSamples.push_back(v.motion.speed);
            if (v.role == AttackerType::EventualStop)
                v.attackerState = advance_stop_state(v.attackerState, params, v.motion.pos, rng);
        }

        // 10 Hz local GPS self-update, noisy copy of the true state.
        for (auto& v : vehicles) {
            GpsRecord gps;
            gps.rcvTime = t;
            gps.posNoise = planar_noise(rng, config.noiseSigmaPos);
            gps.spdNoise = planar_noise(rng, config.noiseSigmaSpd);
            gps.pos = v.motion.pos + gps.posNoise;
            gps.spd = v.motion.velocity() + gps.spdNoise;
            run.logs[v.id].emplace_back(gps);
        }

        for (auto& v : vehicles) {
            if (k % ticksPerBeacon != v.beaconPhase) continue;

            const Vec3 truePos = v.motion.pos;
            const Vec3 trueSpd = v.motion.velocity();
            Transmission tx{truePos, trueSpd};
            if (is_malicious_label(v.role))
                tx = apply_attack(v.attackerState, params, truePos, trueSpd, rng);

            GroundTruthRecord gt;
            gt.sendTime = t;
            gt.senderId = v.id;
            gt.attackerType = v.role;
            gt.messageId = nextMessageId++;
            gt.truePos = truePos;
            gt.trueSpd = trueSpd;
            run.groundTruth.push_back(gt);

            for (auto& rx : vehicles) {
                if (rx.id == v.id) continue;
                double d = euclidean_distance(truePos, rx.motion.pos);
                double p = delivery_probability(d, config.commRange, config.lossExponent);
                if (p <= 0.0 || !(rng.uniform() < p)) continue;

                BeaconRecord b;
                b.sendTime = t;
                b.rcvTime = t + d / kSpeedOfLight + kProcessingDelay;
                b.senderId = v.id;
                b.messageId = gt.messageId;
                b.posNoise = planar_noise(rng, config.noiseSigmaPos);
                b.spdNoise = planar_noise(rng, config.noiseSigmaSpd);
                b.pos = tx.pos + b.posNoise;
                b.spd = tx.spd + b.spdNoise;
                b.rssi = rssi_dbm(d);
                run.logs[rx.id].emplace_back(b);
            }
        }
    }

    for (auto& [id, entries] : run.logs) {
        std::stable_sort(entries.begin(), entries.end(), [](const LogEntry& a, const LogEntry& b) {
            return entry_rcv_time(a) < entry_rcv_time(b);
        });
    }
    return run;
}

std::string run_dir_name(const ScenarioConfig& config) {
    return "run-" + to_string(config.density.tag) + "-a" +
           std::to_string(attacker_code(config.attackerType)) + "-f" +
           format_double(config.attackerFraction) + "-s" + std::to_string(config.seed);
}

void write_run(const GeneratedRun& run, const std::filesystem::path& runDir) {
    std::error_code ec;
    std::filesystem::create_directories(runDir, ec);
    if (ec) throw IoError("cannot create run directory " + runDir.string());

    for (const auto& [id, entries] : run.logs)
        write_reception_log_file(runDir / log_filename(id), entries);
    write_ground_truth_file(runDir / kGroundTruthFilename, run.groundTruth);
    write_manifest_file(runDir / kManifestFilename, make_manifest(run));
}

} // namespace veremi
