#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "veremi/errors.hpp"
#include "veremi/pipeline.hpp"
#include "veremi/version.hpp"

namespace fs = std::filesystem;
using namespace veremi;

namespace {

// Exit codes: 0 ok, 1 I/O, 2 configuration, 3 data format.
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct CommonArgs {
    std::string configPath;
    std::string out;
    int jobs = 0;
    bool overwrite = false;
    bool external = false;
    bool includeAttackerReceivers = false;
    std::vector<std::string> runDirs;

    // axis overrides, comma lists
    std::string seed, density, attackerType, attackerFraction;
    // detector threshold overrides, comma lists
    std::string art, saw, ssc, dmv;
};

ToolConfig build_config(const CommonArgs& a) {
    ToolConfig config;
    if (!a.configPath.empty()) config = load_tool_config(a.configPath);
    if (!a.seed.empty()) apply_config_entry(config, "seed", a.seed);
    if (!a.density.empty()) apply_config_entry(config, "density", a.density);
    if (!a.attackerType.empty()) apply_config_entry(config, "attackerType", a.attackerType);
    if (!a.attackerFraction.empty())
        apply_config_entry(config, "attackerFraction", a.attackerFraction);
    if (!a.art.empty()) apply_config_entry(config, "artThresholds", a.art);
    if (!a.saw.empty()) apply_config_entry(config, "sawThresholds", a.saw);
    if (!a.ssc.empty()) apply_config_entry(config, "sscThresholds", a.ssc);
    if (!a.dmv.empty()) apply_config_entry(config, "dmvThresholds", a.dmv);
    return config;
}

std::vector<fs::path> to_paths(const std::vector<std::string>& dirs) {
    return {dirs.begin(), dirs.end()};
}

void add_axis_flags(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--seed", a.seed, "Seed list, e.g. 1,2,3");
    cmd->add_option("--density", a.density, "Density list: low, medium, high");
    cmd->add_option("--attacker-type", a.attackerType, "Attacker type list: 0,1,2,4,8,16");
    cmd->add_option("--attacker-fraction", a.attackerFraction, "Attacker fraction list in [0,1]");
}

void add_threshold_flags(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--art-thresholds", a.art, "ART threshold list (m)");
    cmd->add_option("--saw-thresholds", a.saw, "SAW threshold list (m)");
    cmd->add_option("--ssc-thresholds", a.ssc, "SSC threshold list (m/s)");
    cmd->add_option("--dmv-thresholds", a.dmv, "DMV threshold list (m)");
}

int run(int argc, char** argv) {
    CLI::App app{"VeReMi-format trace generation, misbehavior detection and evaluation"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    CommonArgs a;

    auto* gen = app.add_subcommand("generate", "Generate run directories for a parameter sweep");
    gen->add_option("--config", a.configPath, "Config file (key = value lines)");
    gen->add_option("--out", a.out, "Output directory")->required();
    gen->add_option("--jobs", a.jobs, "Worker count (default: all processors)");
    gen->add_flag("--overwrite", a.overwrite, "Replace existing run directories");
    add_axis_flags(gen, a);

    auto* det = app.add_subcommand("detect", "Run the detectors over run directories");
    det->add_option("dirs", a.runDirs, "Run directories")->required()->expected(-1);
    det->add_option("--config", a.configPath, "Config file (for detector thresholds)");
    det->add_option("--jobs", a.jobs, "Worker count (default: all processors)");
    det->add_flag("--overwrite", a.overwrite, "Replace existing verdicts.csv");
    det->add_flag("--external", a.external, "Accept directories without a manifest");
    add_threshold_flags(det, a);

    auto* rep = app.add_subcommand("report", "Aggregate verdicts into CSV reports");
    rep->add_option("dirs", a.runDirs, "Run directories with verdicts.csv")
        ->required()
        ->expected(-1);
    rep->add_option("--out", a.out, "Report output directory")->required();
    rep->add_flag("--include-attacker-receivers", a.includeAttackerReceivers,
                  "Count detection events of attacker receivers too");
    rep->add_flag("--external", a.external, "Accept directories without a manifest");

    auto* pipe = app.add_subcommand("pipeline", "generate + detect + report in one go");
    pipe->add_option("--config", a.configPath, "Config file (key = value lines)");
    pipe->add_option("--out", a.out, "Output directory")->required();
    pipe->add_option("--jobs", a.jobs, "Worker count (default: all processors)");
    pipe->add_flag("--overwrite", a.overwrite, "Replace existing run directories");
    pipe->add_flag("--include-attacker-receivers", a.includeAttackerReceivers,
                   "Count detection events of attacker receivers too");
    add_axis_flags(pipe, a);
    add_threshold_flags(pipe, a);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    JobOptions opts{a.jobs, a.overwrite};
    if (gen->parsed()) {
        auto dirs = cmd_generate(build_config(a), a.out, opts);
        std::cerr << "generated " << dirs.size() << " run director"
                  << (dirs.size() == 1 ? "y" : "ies") << " under " << a.out << "\n";
    } else if (det->parsed()) {
        cmd_detect(to_paths(a.runDirs), build_config(a).detectors, opts, a.external);
    } else if (rep->parsed()) {
        cmd_report(to_paths(a.runDirs), a.out, a.includeAttackerReceivers, a.external);
        std::cerr << "report written to " << a.out << "\n";
    } else if (pipe->parsed()) {
        ToolConfig config = build_config(a);
        auto dirs = cmd_generate(config, a.out, opts);
        cmd_detect(dirs, config.detectors, opts, a.external);
        cmd_report(dirs, fs::path(a.out) / "report", a.includeAttackerReceivers, a.external);
        std::cerr << "pipeline finished: " << dirs.size() << " runs, report in "
                  << (fs::path(a.out) / "report").string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
