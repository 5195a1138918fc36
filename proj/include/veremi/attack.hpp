#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>

#include "veremi/rng.hpp"
#include "veremi/types.hpp"
#include "veremi/vec3.hpp"

namespace veremi {

// Position-falsification parameters, applied per outgoing beacon.
struct AttackParams {
    Vec3 constantPos{5560.0, 5820.0, 0.0};
    Vec3 constantOffset{250.0, -150.0, 0.0};
    double randomOffsetBound = 300.0;  // meters, per component
    double stopProbIncrement = 0.025;  // per 10 Hz position update
    Rect playground{1300.0, 4300.0, 6300.0, 6300.0};

    void validate() const; // throws ConfigError naming the field
};

// Per-vehicle attack state. Only the eventual-stop attack carries state:
// an accumulating stop probability and, once stopped, the frozen position.
struct AttackerState {
    AttackerType type = AttackerType::Legitimate;
    double stopProbability = 0.0;
    std::optional<Vec3> frozenPos;

    bool stopped() const { return frozenPos.has_value(); }
};

// Each vehicle independently becomes an attacker of the run's configured
// type with probability `fraction`.
std::map<std::int64_t, AttackerType> assign_attackers(std::span<const std::int64_t> vehicleIds,
                                                      double fraction, AttackerType type,
                                                      Rng& rng);

struct Transmission {
    Vec3 pos;
    Vec3 spd;
};

// Falsified beacon content for an attacker. Legitimate state is a contract
// violation. Claimed speed is the true speed, except after an eventual stop
// where the zero vector is transmitted.
Transmission apply_attack(const AttackerState& state, const AttackParams& params,
                          const Vec3& truePos, const Vec3& trueSpd, Rng& rng);

// One 10 Hz position-update step of the eventual-stop accumulator. The stop
// probability grows by `stopProbIncrement` per update, so a stop is certain
// within 1/stopProbIncrement updates; once triggered, the position freezes.
AttackerState advance_stop_state(AttackerState state, const AttackParams& params,
                                 const Vec3& currentTruePos, Rng& rng);

} // namespace veremi
