#include "veremi/attack.hpp"

#include <stdexcept>

#include "veremi/errors.hpp"

namespace veremi {

void AttackParams::validate() const {
    if (!(randomOffsetBound > 0.0))
        throw ConfigError("randomOffsetBound must be positive");
    if (!(stopProbIncrement > 0.0) || stopProbIncrement > 1.0)
        throw ConfigError("stopProbIncrement must be in (0, 1]");
    if (playground.degenerate())
        throw ConfigError("playground must be a non-degenerate rectangle");
    if (!constantPos.finite() || !constantOffset.finite())
        throw ConfigError("constantPos/constantOffset must be finite");
}

std::map<std::int64_t, AttackerType> assign_attackers(std::span<const std::int64_t> vehicleIds,
                                                      double fraction, AttackerType type,
                                                      Rng& rng) {
    std::map<std::int64_t, AttackerType> roles;
    for (std::int64_t id : vehicleIds) {
        bool attacker = type != AttackerType::Legitimate && rng.uniform() < fraction;
        roles[id] = attacker ? type : AttackerType::Legitimate;
    }
    return roles;
}

Transmission apply_attack(const AttackerState& state, const AttackParams& params,
                          const Vec3& truePos, const Vec3& trueSpd, Rng& rng) {
    switch (state.type) {
        case AttackerType::ConstantPosition:
            return {params.constantPos, trueSpd};
        case AttackerType::ConstantOffset:
            return {truePos + params.constantOffset, trueSpd};
        case AttackerType::RandomPosition: {
            // Fresh sample per message.
            Vec3 p{rng.uniform(params.playground.minX, params.playground.maxX),
                   rng.uniform(params.playground.minY, params.playground.maxY), truePos.z};
            return {p, trueSpd};
        }
        case AttackerType::RandomOffset: {
            double b = params.randomOffsetBound;
            Vec3 off{rng.uniform(-b, b), rng.uniform(-b, b), 0.0};
            return {truePos + off, trueSpd};
        }
        case AttackerType::EventualStop:
            if (state.stopped()) return {*state.frozenPos, Vec3{}};
            return {truePos, trueSpd};
        case AttackerType::Legitimate:
            break;
    }
    throw std::invalid_argument("apply_attack called for a legitimate vehicle");
}

AttackerState advance_stop_state(AttackerState state, const AttackParams& params,
                                 const Vec3& currentTruePos, Rng& rng) {
    if (state.type != AttackerType::EventualStop)
        throw std::invalid_argument("advance_stop_state requires the eventual-stop type");
    if (state.stopped()) return state;
    state.stopProbability = std::min(1.0, state.stopProbability + params.stopProbIncrement);
    if (rng.uniform() < state.stopProbability) state.frozenPos = currentTruePos;
    return state;
}

} // namespace veremi
