#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "veremi/detect.hpp"

namespace veremi {

struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + fp + tn + fn; }
    void add(bool malicious, bool label) {
        if (malicious)
            (label ? tp : fp) += 1;
        else
            (label ? fn : tn) += 1;
    }

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// precision = TP/(TP+FP), recall = TP/(TP+FN); either is undefined when its
// denominator population is empty.
struct PrPoint {
    std::optional<double> precision;
    std::optional<double> recall;
};

struct RatePoint {
    std::optional<double> fpr; // FP/(FP+TN)
    std::optional<double> tpr; // TP/(FN+TP); equals recall
};

PrPoint pr_point(const ConfusionMatrix& m);
RatePoint fpr_tpr(const ConfusionMatrix& m);

// Gini index of a nonnegative population: sum_ij |xi-xj| / (2 n^2 mu).
// Zero-mean populations return 0 by convention. Throws on negative input.
double gini(std::span<const double> values);

struct PerVehicleRates {
    std::int64_t receiverId = 0;
    std::optional<double> fpr;
    std::optional<double> fnr; // FN/(FN+TP)
};

struct GiniReport {
    std::optional<double> giniFpr;
    std::optional<double> giniFnr;
    std::size_t popFpr = 0; // vehicles with a defined rate
    std::size_t popFnr = 0;
};

GiniReport gini_report(std::span<const PerVehicleRates> rates);

// Scope: which verdicts enter a matrix. By default only detection events of
// benign receivers count; attacker receivers can be included explicitly.
struct MetricScope {
    bool includeAttackerReceivers = false;
    std::set<std::int64_t> attackerReceivers;

    bool receiver_in_scope(std::int64_t receiverId) const {
        return includeAttackerReceivers || !attackerReceivers.count(receiverId);
    }
};

using LabelMap = std::map<std::int64_t, bool>; // messageId -> attacker-originated

struct DetThrKey {
    Detector detector = Detector::Art;
    double threshold = 0.0;

    friend auto operator<=>(const DetThrKey&, const DetThrKey&) = default;
};

ConfusionMatrix confusion(std::span<const Verdict> verdicts, const LabelMap& labels,
                          Detector detector, double threshold, const MetricScope& scope);

// Single-pass variant filling one matrix per (detector, threshold).
std::map<DetThrKey, ConfusionMatrix> confusion_all(std::span<const Verdict> verdicts,
                                                   const LabelMap& labels,
                                                   const MetricScope& scope);

std::vector<PerVehicleRates> per_vehicle_rates(std::span<const Verdict> verdicts,
                                               const LabelMap& labels, Detector detector,
                                               double threshold, const MetricScope& scope);

// Streaming accumulator used by the file-based pipeline: one matrix and one
// per-receiver matrix per (detector, threshold).
class MetricsAccumulator {
public:
    MetricsAccumulator(const LabelMap& labels, MetricScope scope)
        : labels_(&labels), scope_(std::move(scope)) {}

    void add(const Verdict& v); // throws DataError on unlabeled messageId

    const std::map<DetThrKey, ConfusionMatrix>& matrices() const { return matrices_; }
    std::vector<PerVehicleRates> rates(const DetThrKey& key) const;
    std::map<DetThrKey, GiniReport> gini_reports() const;

private:
    const LabelMap* labels_;
    MetricScope scope_;
    std::map<DetThrKey, ConfusionMatrix> matrices_;
    std::map<DetThrKey, std::map<std::int64_t, ConfusionMatrix>> perReceiver_;
};

struct MeanStd {
    double mean = 0.0;
    std::optional<double> std; // sample (n-1); undefined for n = 1
    std::size_t n = 0;
};

MeanStd aggregate_runs(std::span<const double> values);

} // namespace veremi
