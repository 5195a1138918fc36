#include "veremi/report.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>
#include <vector>

#include "veremi/errors.hpp"
#include "veremi/format.hpp"

namespace veremi {

namespace {

constexpr const char* kUndefined = "undefined";

std::string opt_str(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string(kUndefined);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

// Sweep-parameter group a run belongs to.
struct GroupKey {
    int attackerType;
    std::string density;
    double attackerFraction;

    friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
};

struct Aggregate {
    MeanStd precision, recall, giniFpr, giniFnr;
    double popFprMean = 0.0;
    double popFnrMean = 0.0;
    std::size_t seedCount = 0;
};

MeanStd aggregate_defined(const std::vector<std::optional<double>>& values) {
    std::vector<double> defined;
    for (const auto& v : values)
        if (v) defined.push_back(*v);
    return aggregate_runs(defined);
}

std::string opt_agg_mean(const MeanStd& a) {
    return a.n == 0 ? std::string(kUndefined) : format_double(a.mean);
}

std::string opt_agg_std(const MeanStd& a) { return a.std ? format_double(*a.std) : kUndefined; }

std::string fraction_token(double fraction) { return format_double(fraction); }

} // namespace

void emit_report(std::span<const RunMetrics> runs, const std::filesystem::path& outDir) {
    std::error_code ec;
    std::filesystem::create_directories(outDir, ec);
    if (ec) throw IoError("cannot create report directory " + outDir.string());

    // confusion.csv: raw per-run rows.
    struct ConfRow {
        std::string detector;
        double threshold;
        int attackerType;
        std::string density;
        double fraction;
        std::uint64_t seed;
        std::string run;
        ConfusionMatrix m;
    };
    std::vector<ConfRow> confRows;
    for (const auto& run : runs)
        for (const auto& [key, m] : run.matrices)
            confRows.push_back({detector_name(key.detector), key.threshold, run.attackerType,
                                run.density, run.attackerFraction, run.seed, run.runName, m});
    std::sort(confRows.begin(), confRows.end(), [](const ConfRow& a, const ConfRow& b) {
        return std::tie(a.detector, a.threshold, a.attackerType, a.density, a.fraction, a.seed,
                        a.run) <
               std::tie(b.detector, b.threshold, b.attackerType, b.density, b.fraction, b.seed,
                        b.run);
    });

    auto conf = open_out(outDir / "confusion.csv");
    conf << "run,detector,threshold,attackerType,density,attackerFraction,seed,"
            "tp,fp,tn,fn,precision,recall,fpr,tpr\n";
    for (const auto& r : confRows) {
        PrPoint pr = pr_point(r.m);
        RatePoint rates = fpr_tpr(r.m);
        conf << r.run << ',' << r.detector << ',' << format_double(r.threshold) << ','
             << r.attackerType << ',' << r.density << ',' << fraction_token(r.fraction) << ','
             << r.seed << ',' << r.m.tp << ',' << r.m.fp << ',' << r.m.tn << ',' << r.m.fn << ','
             << opt_str(pr.precision) << ',' << opt_str(pr.recall) << ',' << opt_str(rates.fpr)
             << ',' << opt_str(rates.tpr) << '\n';
    }
    conf.close();

    // Aggregate across seeds per (group, detector, threshold).
    std::map<GroupKey, std::map<DetThrKey, Aggregate>> groups;
    {
        std::map<GroupKey, std::map<DetThrKey, std::vector<const RunMetrics*>>> members;
        for (const auto& run : runs) {
            GroupKey g{run.attackerType, run.density, run.attackerFraction};
            for (const auto& [key, m] : run.matrices) members[g][key].push_back(&run);
        }
        for (const auto& [g, byKey] : members) {
            for (const auto& [key, runsHere] : byKey) {
                Aggregate agg;
                std::vector<std::optional<double>> prec, rec, gFpr, gFnr;
                double popFpr = 0.0, popFnr = 0.0;
                for (const RunMetrics* run : runsHere) {
                    PrPoint pr = pr_point(run->matrices.at(key));
                    prec.push_back(pr.precision);
                    rec.push_back(pr.recall);
                    auto it = run->giniReports.find(key);
                    if (it != run->giniReports.end()) {
                        gFpr.push_back(it->second.giniFpr);
                        gFnr.push_back(it->second.giniFnr);
                        popFpr += static_cast<double>(it->second.popFpr);
                        popFnr += static_cast<double>(it->second.popFnr);
                    } else {
                        gFpr.push_back(std::nullopt);
                        gFnr.push_back(std::nullopt);
                    }
                }
                agg.precision = aggregate_defined(prec);
                agg.recall = aggregate_defined(rec);
                agg.giniFpr = aggregate_defined(gFpr);
                agg.giniFnr = aggregate_defined(gFnr);
                agg.seedCount = runsHere.size();
                agg.popFprMean = popFpr / static_cast<double>(runsHere.size());
                agg.popFnrMean = popFnr / static_cast<double>(runsHere.size());
                groups[g][key] = agg;
            }
        }
    }

    struct AggRow {
        std::string detector;
        double threshold;
        GroupKey group;
        const Aggregate* agg;
    };
    std::vector<AggRow> aggRows;
    for (const auto& [g, byKey] : groups)
        for (const auto& [key, agg] : byKey)
            aggRows.push_back({detector_name(key.detector), key.threshold, g, &agg});
    std::sort(aggRows.begin(), aggRows.end(), [](const AggRow& a, const AggRow& b) {
        return std::tie(a.detector, a.threshold, a.group) <
               std::tie(b.detector, b.threshold, b.group);
    });

    auto pr = open_out(outDir / "pr.csv");
    pr << "detector,threshold,attackerType,density,attackerFraction,seedCount,"
          "precisionMean,precisionStd,recallMean,recallStd\n";
    for (const auto& r : aggRows) {
        pr << r.detector << ',' << format_double(r.threshold) << ',' << r.group.attackerType << ','
           << r.group.density << ',' << fraction_token(r.group.attackerFraction) << ','
           << r.agg->seedCount << ',' << opt_agg_mean(r.agg->precision) << ','
           << opt_agg_std(r.agg->precision) << ',' << opt_agg_mean(r.agg->recall) << ','
           << opt_agg_std(r.agg->recall) << '\n';
    }
    pr.close();

    auto gn = open_out(outDir / "gini.csv");
    gn << "detector,threshold,attackerType,density,attackerFraction,seedCount,"
          "giniFprMean,giniFprStd,giniFnrMean,giniFnrStd,popFprMean,popFnrMean\n";
    for (const auto& r : aggRows) {
        gn << r.detector << ',' << format_double(r.threshold) << ',' << r.group.attackerType << ','
           << r.group.density << ',' << fraction_token(r.group.attackerFraction) << ','
           << r.agg->seedCount << ',' << opt_agg_mean(r.agg->giniFpr) << ','
           << opt_agg_std(r.agg->giniFpr) << ',' << opt_agg_mean(r.agg->giniFnr) << ','
           << opt_agg_std(r.agg->giniFnr) << ',' << format_double(r.agg->popFprMean) << ','
           << format_double(r.agg->popFnrMean) << '\n';
    }
    gn.close();

    // Plot data: one file per group and detector; rows with an undefined
    // mean are omitted so the curves stay connected.
    for (const auto& [g, byKey] : groups) {
        std::string groupToken = "a" + std::to_string(g.attackerType) + "-" + g.density + "-f" +
                                 fraction_token(g.attackerFraction);
        for (Detector d : kAllDetectors) {
            std::vector<std::pair<DetThrKey, const Aggregate*>> rows;
            for (const auto& [key, agg] : byKey)
                if (key.detector == d) rows.push_back({key, &agg});
            if (rows.empty()) continue;
            std::sort(rows.begin(), rows.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            auto prDat =
                open_out(outDir / ("curve-pr-" + groupToken + "-" + detector_name(d) + ".dat"));
            prDat << "# threshold recallMean precisionMean recallStd precisionStd\n";
            for (const auto& [key, agg] : rows) {
                if (agg->precision.n == 0 || agg->recall.n == 0) continue;
                prDat << format_double(key.threshold) << ' ' << format_double(agg->recall.mean)
                      << ' ' << format_double(agg->precision.mean) << ' '
                      << (agg->recall.std ? format_double(*agg->recall.std) : "0") << ' '
                      << (agg->precision.std ? format_double(*agg->precision.std) : "0") << '\n';
            }

            auto gnDat =
                open_out(outDir / ("curve-gini-" + groupToken + "-" + detector_name(d) + ".dat"));
            gnDat << "# threshold giniFprMean giniFnrMean giniFprStd giniFnrStd\n";
            for (const auto& [key, agg] : rows) {
                if (agg->giniFpr.n == 0 || agg->giniFnr.n == 0) continue;
                gnDat << format_double(key.threshold) << ' ' << format_double(agg->giniFpr.mean)
                      << ' ' << format_double(agg->giniFnr.mean) << ' '
                      << (agg->giniFpr.std ? format_double(*agg->giniFpr.std) : "0") << ' '
                      << (agg->giniFnr.std ? format_double(*agg->giniFnr.std) : "0") << '\n';
            }
        }
    }
}

} // namespace veremi
