#include "veremi/trace_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "veremi/errors.hpp"

namespace veremi {
namespace {

using Json = nlohmann::ordered_json;

Json vec_to_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

double require_number(const Json& obj, const char* field, const std::string& src,
                      std::size_t line) {
    auto it = obj.find(field);
    if (it == obj.end())
        throw ParseError(src, line, std::string("missing field `") + field + "`");
    if (!it->is_number())
        throw ParseError(src, line, std::string("field `") + field + "` is not a number");
    return it->get<double>();
}

std::int64_t require_int(const Json& obj, const char* field, const std::string& src,
                         std::size_t line) {
    auto it = obj.find(field);
    if (it == obj.end())
        throw ParseError(src, line, std::string("missing field `") + field + "`");
    if (!it->is_number_integer())
        throw ParseError(src, line, std::string("field `") + field + "` is not an integer");
    return it->get<std::int64_t>();
}

Vec3 require_vec(const Json& obj, const char* field, const std::string& src, std::size_t line) {
    auto it = obj.find(field);
    if (it == obj.end())
        throw ParseError(src, line, std::string("missing field `") + field + "`");
    if (!it->is_array() || it->size() != 3)
        throw ParseError(src, line,
                         std::string("field `") + field + "` is not a 3-component array");
    Vec3 v;
    double* comps[3] = {&v.x, &v.y, &v.z};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& c = (*it)[i];
        if (!c.is_number())
            throw ParseError(src, line, std::string("field `") + field + "` has a non-numeric component");
        *comps[i] = c.get<double>();
    }
    if (!v.finite())
        throw ParseError(src, line, std::string("field `") + field + "` has a non-finite component");
    return v;
}

Json parse_line(const std::string& text, const std::string& src, std::size_t line) {
    Json obj = Json::parse(text, nullptr, false);
    if (obj.is_discarded())
        throw ParseError(src, line, "invalid JSON");
    if (!obj.is_object())
        throw ParseError(src, line, "line is not a JSON object");
    return obj;
}

void check_finite(double v, const char* field, const std::string& src, std::size_t line) {
    if (!std::isfinite(v))
        throw ParseError(src, line, std::string("field `") + field + "` is not finite");
}

} // namespace

ParsedLog parse_reception_log(std::istream& in, std::int64_t /*receiverId*/,
                              const std::string& sourceName) {
    ParsedLog out;
    std::string text;
    std::size_t lineNo = 0;
    double lastRcv = -std::numeric_limits<double>::infinity();
    while (std::getline(in, text)) {
        ++lineNo;
        if (text.empty()) continue;
        Json obj = parse_line(text, sourceName, lineNo);
        std::int64_t type = require_int(obj, "type", sourceName, lineNo);
        double rcvTime = require_number(obj, "rcvTime", sourceName, lineNo);
        check_finite(rcvTime, "rcvTime", sourceName, lineNo);
        if (type == 2) {
            GpsRecord r;
            r.rcvTime = rcvTime;
            r.pos = require_vec(obj, "pos", sourceName, lineNo);
            r.spd = require_vec(obj, "spd", sourceName, lineNo);
            r.posNoise = require_vec(obj, "pos_noise", sourceName, lineNo);
            r.spdNoise = require_vec(obj, "spd_noise", sourceName, lineNo);
            out.entries.emplace_back(r);
        } else if (type == 3) {
            BeaconRecord r;
            r.rcvTime = rcvTime;
            r.sendTime = require_number(obj, "sendTime", sourceName, lineNo);
            check_finite(r.sendTime, "sendTime", sourceName, lineNo);
            if (r.sendTime > r.rcvTime)
                throw ParseError(sourceName, lineNo, "field `sendTime` is after rcvTime");
            r.senderId = require_int(obj, "sender", sourceName, lineNo);
            r.messageId = require_int(obj, "messageID", sourceName, lineNo);
            r.pos = require_vec(obj, "pos", sourceName, lineNo);
            r.spd = require_vec(obj, "spd", sourceName, lineNo);
            r.rssi = require_number(obj, "RSSI", sourceName, lineNo);
            check_finite(r.rssi, "RSSI", sourceName, lineNo);
            r.posNoise = require_vec(obj, "pos_noise", sourceName, lineNo);
            r.spdNoise = require_vec(obj, "spd_noise", sourceName, lineNo);
            out.entries.emplace_back(r);
        } else {
            throw ParseError(sourceName, lineNo,
                             "unknown record type code " + std::to_string(type));
        }
        double rcv = entry_rcv_time(out.entries.back());
        if (rcv < lastRcv) ++out.outOfOrderCount;
        lastRcv = std::max(lastRcv, rcv);
    }
    if (out.outOfOrderCount > 0) {
        std::stable_sort(out.entries.begin(), out.entries.end(),
                         [](const LogEntry& a, const LogEntry& b) {
                             return entry_rcv_time(a) < entry_rcv_time(b);
                         });
    }
    return out;
}

std::map<std::int64_t, GroundTruthRecord> parse_ground_truth(std::istream& in,
                                                             const std::string& sourceName) {
    std::map<std::int64_t, GroundTruthRecord> out;
    std::string text;
    std::size_t lineNo = 0;
    while (std::getline(in, text)) {
        ++lineNo;
        if (text.empty()) continue;
        Json obj = parse_line(text, sourceName, lineNo);
        GroundTruthRecord r;
        std::int64_t code = require_int(obj, "type", sourceName, lineNo);
        auto type = attacker_type_from_code(static_cast<int>(code));
        if (!type)
            throw ParseError(sourceName, lineNo,
                             "field `type` has unknown attacker code " + std::to_string(code));
        r.attackerType = *type;
        r.sendTime = require_number(obj, "time", sourceName, lineNo);
        check_finite(r.sendTime, "time", sourceName, lineNo);
        r.senderId = require_int(obj, "sender", sourceName, lineNo);
        r.messageId = require_int(obj, "messageID", sourceName, lineNo);
        r.truePos = require_vec(obj, "pos", sourceName, lineNo);
        r.trueSpd = require_vec(obj, "spd", sourceName, lineNo);
        if (!out.emplace(r.messageId, r).second)
            throw ParseError(sourceName, lineNo,
                             "duplicate messageID " + std::to_string(r.messageId));
    }
    return out;
}

namespace {

void require_finite_for_write(const Vec3& v, const char* field) {
    if (!v.finite())
        throw DataError(std::string("refusing to write non-finite `") + field + "`");
}

Json gps_to_json(const GpsRecord& r) {
    require_finite_for_write(r.pos, "pos");
    require_finite_for_write(r.spd, "spd");
    Json obj;
    obj["type"] = 2;
    obj["rcvTime"] = r.rcvTime;
    obj["pos"] = vec_to_json(r.pos);
    obj["pos_noise"] = vec_to_json(r.posNoise);
    obj["spd"] = vec_to_json(r.spd);
    obj["spd_noise"] = vec_to_json(r.spdNoise);
    return obj;
}

Json beacon_to_json(const BeaconRecord& r) {
    require_finite_for_write(r.pos, "pos");
    require_finite_for_write(r.spd, "spd");
    Json obj;
    obj["type"] = 3;
    obj["rcvTime"] = r.rcvTime;
    obj["sendTime"] = r.sendTime;
    obj["sender"] = r.senderId;
    obj["messageID"] = r.messageId;
    obj["pos"] = vec_to_json(r.pos);
    obj["pos_noise"] = vec_to_json(r.posNoise);
    obj["spd"] = vec_to_json(r.spd);
    obj["spd_noise"] = vec_to_json(r.spdNoise);
    obj["RSSI"] = r.rssi;
    return obj;
}

} // namespace

void write_reception_log(std::ostream& out, std::span<const LogEntry> entries) {
    for (const auto& e : entries) {
        Json obj = std::holds_alternative<GpsRecord>(e) ? gps_to_json(std::get<GpsRecord>(e))
                                                        : beacon_to_json(std::get<BeaconRecord>(e));
        out << obj.dump() << '\n';
    }
}

void write_ground_truth(std::ostream& out, std::span<const GroundTruthRecord> records) {
    for (const auto& r : records) {
        require_finite_for_write(r.truePos, "pos");
        require_finite_for_write(r.trueSpd, "spd");
        Json obj;
        obj["type"] = attacker_code(r.attackerType);
        obj["time"] = r.sendTime;
        obj["sender"] = r.senderId;
        obj["messageID"] = r.messageId;
        obj["pos"] = vec_to_json(r.truePos);
        obj["spd"] = vec_to_json(r.trueSpd);
        out << obj.dump() << '\n';
    }
}

std::vector<LabeledEvent> join_labels(std::span<const LogEntry> log,
                                      const std::map<std::int64_t, GroundTruthRecord>& truth,
                                      std::int64_t receiverId) {
    std::vector<LabeledEvent> out;
    for (const auto& e : log) {
        if (!std::holds_alternative<BeaconRecord>(e)) continue;
        const auto& b = std::get<BeaconRecord>(e);
        auto it = truth.find(b.messageId);
        if (it == truth.end())
            throw DataError("beacon messageID " + std::to_string(b.messageId) +
                            " has no ground-truth record");
        out.push_back({receiverId, b, is_malicious_label(it->second.attackerType)});
    }
    return out;
}

std::string log_filename(std::int64_t receiverId) {
    return "log-" + std::to_string(receiverId) + ".jsonl";
}

std::optional<std::int64_t> receiver_id_from_filename(const std::string& filename) {
    constexpr const char* prefix = "log-";
    constexpr const char* suffix = ".jsonl";
    if (filename.size() <= 4 + 6 || filename.rfind(prefix, 0) != 0) return std::nullopt;
    if (filename.substr(filename.size() - 6) != suffix) return std::nullopt;
    std::string digits = filename.substr(4, filename.size() - 10);
    if (digits.empty()) return std::nullopt;
    std::int64_t id = 0;
    for (char c : digits) {
        if (c < '0' || c > '9') return std::nullopt;
        id = id * 10 + (c - '0');
    }
    return id;
}

ParsedLog read_reception_log_file(const std::filesystem::path& path, std::int64_t receiverId) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open reception log " + path.string());
    return parse_reception_log(in, receiverId, path.string());
}

std::map<std::int64_t, GroundTruthRecord> read_ground_truth_file(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ground truth " + path.string());
    return parse_ground_truth(in, path.string());
}

void write_reception_log_file(const std::filesystem::path& path,
                              std::span<const LogEntry> entries) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write reception log " + path.string());
    write_reception_log(out, entries);
    if (!out) throw IoError("write failed for " + path.string());
}

void write_ground_truth_file(const std::filesystem::path& path,
                             std::span<const GroundTruthRecord> records) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write ground truth " + path.string());
    write_ground_truth(out, records);
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace veremi
