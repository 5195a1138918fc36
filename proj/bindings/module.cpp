#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <filesystem>

#include "veremi/detect.hpp"
#include "veremi/errors.hpp"
#include "veremi/metrics.hpp"
#include "veremi/pipeline.hpp"
#include "veremi/scenario.hpp"
#include "veremi/version.hpp"

namespace py = pybind11;
using namespace veremi;

namespace {

Vec3 to_vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

ScenarioConfig make_scenario(const std::string& density, int attackerType,
                             double attackerFraction, std::uint64_t seed, int durationSeconds,
                             double commRange, double lossExponent, double speedLimit) {
    ScenarioConfig c;
    auto tag = density_tag_from_string(density);
    if (!tag) throw ConfigError("density must be one of low/medium/high");
    c.density = DensityClass::of(*tag);
    auto type = attacker_type_from_code(attackerType);
    if (!type) throw ConfigError("attacker_type must be one of 0/1/2/4/8/16");
    c.attackerType = *type;
    c.attackerFraction = attackerFraction;
    c.seed = seed;
    c.durationSeconds = durationSeconds;
    c.commRange = commRange;
    c.lossExponent = lossExponent;
    c.speedLimit = speedLimit;
    c.validate();
    return c;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "VeReMi-format trace generation, plausibility misbehavior detection and "
              "precision/recall + Gini evaluation";
    m.attr("__version__") = kToolVersion;

    py::register_exception<ConfigError>(m, "ConfigurationError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataFormatError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def(
        "euclidean_distance",
        [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
            return euclidean_distance(to_vec(a), to_vec(b));
        },
        py::arg("a"), py::arg("b"), "3-D euclidean distance between two (x, y, z) points");

    m.def(
        "gini", [](const std::vector<double>& values) { return gini(values); },
        py::arg("values"),
        "Gini index of a non-negative population (0 = uniform); zero-mean input returns 0");

    m.def("default_thresholds", [] {
        DetectorConfig d;
        py::dict out;
        for (Detector det : kAllDetectors) out[detector_name(det).c_str()] = d.thresholds(det);
        return out;
    });

    m.def(
        "generate_run",
        [](const std::string& outDir, const std::string& density, int attackerType,
           double attackerFraction, std::uint64_t seed, int durationSeconds, double commRange,
           double lossExponent, double speedLimit, bool overwrite) {
            ScenarioConfig c = make_scenario(density, attackerType, attackerFraction, seed,
                                             durationSeconds, commRange, lossExponent, speedLimit);
            std::filesystem::path dir = std::filesystem::path(outDir) / run_dir_name(c);
            if (std::filesystem::exists(dir)) {
                if (!overwrite)
                    throw IoError(dir.string() + " already exists (pass overwrite=True)");
                std::filesystem::remove_all(dir);
            }
            write_run(generate_run(c), dir);
            return dir.string();
        },
        py::arg("out_dir"), py::arg("density") = "low", py::arg("attacker_type") = 1,
        py::arg("attacker_fraction") = 0.1, py::arg("seed") = 1,
        py::arg("duration_seconds") = 100, py::arg("comm_range") = 450.0,
        py::arg("loss_exponent") = 4.0, py::arg("speed_limit") = 0.0,
        py::arg("overwrite") = false,
        "Generate one run directory (logs, ground truth, manifest); returns its path");

    m.def(
        "detect_run",
        [](const std::string& runDir, bool external, bool overwrite) {
            DetectorConfig config;
            DetectSummary s = detect_run_dir(runDir, config, external, overwrite);
            py::dict out;
            out["receivers"] = s.receivers;
            out["beacons"] = s.beacons;
            out["verdicts"] = s.verdicts;
            out["out_of_order_entries"] = s.outOfOrderEntries;
            out["non_positive_send_delta"] = s.nonPositiveSendDelta;
            out["max_gps_fix_age"] = s.maxGpsFixAge;
            return out;
        },
        py::arg("run_dir"), py::arg("external") = false, py::arg("overwrite") = false,
        "Run all detectors at the default thresholds; writes <run_dir>/verdicts.csv");

    m.def(
        "write_report",
        [](const std::vector<std::string>& runDirs, const std::string& outDir,
           bool includeAttackerReceivers, bool external) {
            std::vector<std::filesystem::path> dirs(runDirs.begin(), runDirs.end());
            cmd_report(std::move(dirs), outDir, includeAttackerReceivers, external);
        },
        py::arg("run_dirs"), py::arg("out_dir"), py::arg("include_attacker_receivers") = false,
        py::arg("external") = false,
        "Aggregate verdicts into pr.csv, gini.csv, confusion.csv and curve-*.dat files");
}
