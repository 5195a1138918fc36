#pragma once

#include <array>
#include <optional>
#include <string>

namespace veremi {

// Attacker behaviour transmitted in the ground-truth `type` field.
// 0 marks a legitimate vehicle; the five nonzero codes are the supported
// position-falsification attacks.
enum class AttackerType : int {
    Legitimate = 0,
    ConstantPosition = 1,
    ConstantOffset = 2,
    RandomPosition = 4,
    RandomOffset = 8,
    EventualStop = 16,
};

constexpr std::array<AttackerType, 6> kAllAttackerTypes = {
    AttackerType::Legitimate,      AttackerType::ConstantPosition,
    AttackerType::ConstantOffset,  AttackerType::RandomPosition,
    AttackerType::RandomOffset,    AttackerType::EventualStop,
};

constexpr int attacker_code(AttackerType t) { return static_cast<int>(t); }

constexpr std::optional<AttackerType> attacker_type_from_code(int code) {
    switch (code) {
        case 0: return AttackerType::Legitimate;
        case 1: return AttackerType::ConstantPosition;
        case 2: return AttackerType::ConstantOffset;
        case 4: return AttackerType::RandomPosition;
        case 8: return AttackerType::RandomOffset;
        case 16: return AttackerType::EventualStop;
        default: return std::nullopt;
    }
}

constexpr bool is_malicious_label(AttackerType t) { return t != AttackerType::Legitimate; }

enum class DensityTag { Low, Medium, High };

// Traffic density class with its target vehicle-count band. The high band
// defaults to a desk-scale stand-in and can be widened via configuration.
struct DensityClass {
    DensityTag tag = DensityTag::Low;
    int bandMin = 35;
    int bandMax = 39;

    friend constexpr bool operator==(const DensityClass&, const DensityClass&) = default;

    static constexpr DensityClass of(DensityTag tag) {
        switch (tag) {
            case DensityTag::Medium: return {DensityTag::Medium, 97, 108};
            case DensityTag::High: return {DensityTag::High, 180, 220};
            case DensityTag::Low:
            default: return {DensityTag::Low, 35, 39};
        }
    }
};

std::string to_string(DensityTag tag);
std::optional<DensityTag> density_tag_from_string(const std::string& s);

} // namespace veremi
