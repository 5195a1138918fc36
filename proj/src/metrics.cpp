#include "veremi/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "veremi/errors.hpp"

namespace veremi {

PrPoint pr_point(const ConfusionMatrix& m) {
    PrPoint p;
    if (m.tp + m.fp > 0) p.precision = static_cast<double>(m.tp) / (m.tp + m.fp);
    if (m.tp + m.fn > 0) p.recall = static_cast<double>(m.tp) / (m.tp + m.fn);
    return p;
}

RatePoint fpr_tpr(const ConfusionMatrix& m) {
    RatePoint r;
    if (m.fp + m.tn > 0) r.fpr = static_cast<double>(m.fp) / (m.fp + m.tn);
    if (m.fn + m.tp > 0) r.tpr = static_cast<double>(m.tp) / (m.fn + m.tp);
    return r;
}

double gini(std::span<const double> values) {
    if (values.empty()) throw DataError("gini requires at least one value");
    double sum = 0.0;
    for (double v : values) {
        if (v < 0.0) throw DataError("gini requires non-negative values");
        sum += v;
    }
    if (sum == 0.0) return 0.0;
    // Sorted form of the pairwise double sum: sum_i (2i - n - 1) x_(i) / (n * sum).
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back()) return 0.0; // constant population

    const double n = static_cast<double>(sorted.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        acc += (2.0 * static_cast<double>(i + 1) - n - 1.0) * sorted[i];
    return acc / (n * sum);
}

GiniReport gini_report(std::span<const PerVehicleRates> rates) {
    std::vector<double> fprs;
    std::vector<double> fnrs;
    for (const auto& r : rates) {
        if (r.fpr) fprs.push_back(*r.fpr);
        if (r.fnr) fnrs.push_back(*r.fnr);
    }
    GiniReport rep;
    rep.popFpr = fprs.size();
    rep.popFnr = fnrs.size();
    if (!fprs.empty()) rep.giniFpr = gini(fprs);
    if (!fnrs.empty()) rep.giniFnr = gini(fnrs);
    return rep;
}

namespace {

bool label_for(const LabelMap& labels, const Verdict& v) {
    auto it = labels.find(v.messageId);
    if (it == labels.end())
        throw DataError("verdict for messageID " + std::to_string(v.messageId) +
                        " has no ground-truth label");
    return it->second;
}

} // namespace

ConfusionMatrix confusion(std::span<const Verdict> verdicts, const LabelMap& labels,
                          Detector detector, double threshold, const MetricScope& scope) {
    ConfusionMatrix m;
    for (const auto& v : verdicts) {
        if (v.detector != detector || v.threshold != threshold) continue;
        if (!scope.receiver_in_scope(v.receiverId)) continue;
        m.add(v.malicious, label_for(labels, v));
    }
    return m;
}

std::map<DetThrKey, ConfusionMatrix> confusion_all(std::span<const Verdict> verdicts,
                                                   const LabelMap& labels,
                                                   const MetricScope& scope) {
    std::map<DetThrKey, ConfusionMatrix> out;
    for (const auto& v : verdicts) {
        if (!scope.receiver_in_scope(v.receiverId)) continue;
        out[{v.detector, v.threshold}].add(v.malicious, label_for(labels, v));
    }
    return out;
}

namespace {

PerVehicleRates rates_from_matrix(std::int64_t receiverId, const ConfusionMatrix& m) {
    PerVehicleRates r;
    r.receiverId = receiverId;
    if (m.fp + m.tn > 0) r.fpr = static_cast<double>(m.fp) / (m.fp + m.tn);
    if (m.fn + m.tp > 0) r.fnr = static_cast<double>(m.fn) / (m.fn + m.tp);
    return r;
}

} // namespace

std::vector<PerVehicleRates> per_vehicle_rates(std::span<const Verdict> verdicts,
                                               const LabelMap& labels, Detector detector,
                                               double threshold, const MetricScope& scope) {
    std::map<std::int64_t, ConfusionMatrix> byReceiver;
    for (const auto& v : verdicts) {
        if (v.detector != detector || v.threshold != threshold) continue;
        if (!scope.receiver_in_scope(v.receiverId)) continue;
        byReceiver[v.receiverId].add(v.malicious, label_for(labels, v));
    }
    std::vector<PerVehicleRates> out;
    out.reserve(byReceiver.size());
    for (const auto& [id, m] : byReceiver) out.push_back(rates_from_matrix(id, m));
    return out;
}

void MetricsAccumulator::add(const Verdict& v) {
    if (!scope_.receiver_in_scope(v.receiverId)) return;
    bool label = label_for(*labels_, v);
    DetThrKey key{v.detector, v.threshold};
    matrices_[key].add(v.malicious, label);
    perReceiver_[key][v.receiverId].add(v.malicious, label);
}

std::vector<PerVehicleRates> MetricsAccumulator::rates(const DetThrKey& key) const {
    std::vector<PerVehicleRates> out;
    auto it = perReceiver_.find(key);
    if (it == perReceiver_.end()) return out;
    out.reserve(it->second.size());
    for (const auto& [id, m] : it->second) out.push_back(rates_from_matrix(id, m));
    return out;
}

std::map<DetThrKey, GiniReport> MetricsAccumulator::gini_reports() const {
    std::map<DetThrKey, GiniReport> out;
    for (const auto& [key, receivers] : perReceiver_) {
        std::vector<PerVehicleRates> rs;
        rs.reserve(receivers.size());
        for (const auto& [id, m] : receivers) rs.push_back(rates_from_matrix(id, m));
        out[key] = gini_report(rs);
    }
    return out;
}

MeanStd aggregate_runs(std::span<const double> values) {
    MeanStd a;
    a.n = values.size();
    if (a.n == 0) return a;
    double sum = 0.0;
    for (double v : values) sum += v;
    a.mean = sum / static_cast<double>(a.n);
    if (a.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - a.mean) * (v - a.mean);
        a.std = std::sqrt(ss / static_cast<double>(a.n - 1));
    }
    return a;
}

} // namespace veremi
