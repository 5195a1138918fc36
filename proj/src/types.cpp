#include "veremi/types.hpp"

namespace veremi {

std::string to_string(DensityTag tag) {
    switch (tag) {
        case DensityTag::Low: return "low";
        case DensityTag::Medium: return "medium";
        case DensityTag::High: return "high";
    }
    return "low";
}

std::optional<DensityTag> density_tag_from_string(const std::string& s) {
    if (s == "low") return DensityTag::Low;
    if (s == "medium") return DensityTag::Medium;
    if (s == "high") return DensityTag::High;
    return std::nullopt;
}

} // namespace veremi
