#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "veremi/attack.hpp"
#include "veremi/records.hpp"
#include "veremi/rng.hpp"
#include "veremi/trace_io.hpp"
#include "veremi/types.hpp"

namespace veremi {

// Desk-scale substitute for the full vehicular simulation stack: grid
// mobility with signalized intersections, i.i.d. probabilistic reception,
// 1 Hz beaconing with 10 Hz local GPS updates.
struct ScenarioConfig {
    DensityClass density = DensityClass::of(DensityTag::Low);
    double attackerFraction = 0.1;
    AttackerType attackerType = AttackerType::ConstantPosition;
    int durationSeconds = 100;
    int beaconRate = 1; // Hz
    int gpsRate = 10;   // Hz; position updates and mobility steps
    double commRange = 450.0;
    double lossExponent = 4.0; // reception falls off as 1 - (d/commRange)^lossExponent
    std::uint64_t seed = 1;
    Rect playground{1300.0, 4300.0, 6300.0, 6300.0};
    double noiseSigmaPos = 1.0; // receiver-side gaussian, meters per component
    double noiseSigmaSpd = 0.1; // m/s per component
    double speedLimit = 0.0;    // m/s; 0 selects the per-density default
    AttackParams attack;

    void validate() const; // throws ConfigError naming the field
    double effective_speed_limit() const;
};

namespace mobility {

enum class Heading { PosX, NegX, PosY, NegY };

Vec3 heading_vec(Heading h);
bool is_vertical(Heading h);
Heading reverse(Heading h);

// Rectangular road grid with fixed-cycle lights at interior intersections.
struct RoadGrid {
    std::vector<double> xs; // vertical road coordinates
    std::vector<double> ys; // horizontal road coordinates
    double speedLimit = 30.0;
    double accel = 2.6;          // m/s^2
    double decel = 4.5;          // m/s^2
    double cycleSeconds = 40.0;  // full signal cycle
    double greenFraction = 0.5;  // share of the cycle green per axis
    double stopLineOffset = 5.0; // meters before the intersection center

    static RoadGrid make(const Rect& playground, double speedLimit, double targetBlock = 1000.0);

    bool interior(int ix, int iy) const;
    // Whether vertical (y-axis) movement has green at intersection (ix, iy).
    bool ns_green(int ix, int iy, double t) const;
};

struct VehicleMotion {
    Vec3 pos;
    double speed = 0.0;
    Heading heading = Heading::PosX;
    int targetIx = 0; // node the vehicle is moving toward
    int targetIy = 0;

    Vec3 velocity() const { return heading_vec(heading) * speed; }
};

VehicleMotion spawn(const RoadGrid& grid, Rng& rng);
void step(VehicleMotion& v, const RoadGrid& grid, double t, double dt, Rng& rng);

} // namespace mobility

struct VehicleState {
    std::int64_t id = 0;
    mobility::VehicleMotion motion;
    AttackerType role = AttackerType::Legitimate;
    AttackerState attackerState;
    int beaconPhase = 0; // tick offset of this vehicle's 1 Hz beacon
};

struct GeneratedRun {
    ScenarioConfig config;
    std::vector<std::int64_t> vehicleIds;
    std::map<std::int64_t, AttackerType> roles;
    std::vector<GroundTruthRecord> groundTruth;            // in send order
    std::map<std::int64_t, std::vector<LogEntry>> logs;    // receiver -> sorted entries
    std::vector<double> speedSamples;                      // true |spd| at every update

    std::size_t attacker_count() const;
    std::size_t reception_count() const;
};

// Reception probability at the given distance; 0 beyond commRange.
double delivery_probability(double distance, double commRange, double lossExponent);
bool radio_delivers(const Vec3& txPos, const Vec3& rxPos, const ScenarioConfig& config, Rng& rng);

// Log-distance RSSI placeholder; populated but consumed by no detector.
double rssi_dbm(double distance);

GeneratedRun generate_run(const ScenarioConfig& config);

std::string run_dir_name(const ScenarioConfig& config);

// Writes log-<id>.jsonl per vehicle, groundtruth.jsonl and manifest.json.
void write_run(const GeneratedRun& run, const std::filesystem::path& runDir);

} // namespace veremi
