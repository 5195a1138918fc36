#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "veremi/detect.hpp"
#include "veremi/scenario.hpp"

namespace veremi {

// Tool-level configuration: the sweep axes plus the scalar scenario,
// attack and detector settings shared by every run of the sweep.
struct ToolConfig {
    std::vector<DensityTag> densities = {DensityTag::Low};
    std::vector<double> fractions = {0.1};
    std::vector<AttackerType> types = {AttackerType::ConstantPosition};
    std::vector<std::uint64_t> seeds = {1};

    ScenarioConfig base;      // density/fraction/type/seed fields are ignored here
    DetectorConfig detectors;

    // vehicle-count band overrides per density class
    DensityClass lowBand = DensityClass::of(DensityTag::Low);
    DensityClass mediumBand = DensityClass::of(DensityTag::Medium);
    DensityClass highBand = DensityClass::of(DensityTag::High);

    DensityClass band(DensityTag tag) const;
};

// Plain `key = value` file; `#` starts a comment; list values are
// comma-separated. Unknown keys are rejected.
ToolConfig load_tool_config(const std::filesystem::path& path);

// Apply one `key = value` assignment (also used for CLI flag overrides).
void apply_config_entry(ToolConfig& config, const std::string& key, const std::string& value);

// One ScenarioConfig per (density x fraction x type x seed) combination, in
// deterministic axis order. Throws ConfigError on duplicate combinations.
std::vector<ScenarioConfig> plan_runs(const ToolConfig& config);

} // namespace veremi
