#include "doctest.h"

#include <fstream>
#include <sstream>

#include "veremi/errors.hpp"
#include "veremi/rng.hpp"
#include "veremi/trace_io.hpp"

using namespace veremi;

namespace {

BeaconRecord random_beacon(Rng& rng, std::int64_t messageId) {
    BeaconRecord b;
    b.sendTime = rng.uniform(0, 100);
    b.rcvTime = b.sendTime + rng.uniform(0, 0.01);
    b.senderId = static_cast<std::int64_t>(rng.uniform_int(500));
    b.messageId = messageId;
    b.pos = {rng.uniform(-1e5, 1e5), rng.uniform(-1e5, 1e5), rng.uniform(-10, 10)};
    b.spd = {rng.uniform(-50, 50), rng.uniform(-50, 50), 0.0};
    b.rssi = rng.uniform(-120, 0);
    b.posNoise = {rng.gaussian(1.0), rng.gaussian(1.0), 0.0};
    b.spdNoise = {rng.gaussian(0.1), rng.gaussian(0.1), 0.0};
    return b;
}

GpsRecord random_gps(Rng& rng) {
    GpsRecord g;
    g.rcvTime = rng.uniform(0, 100);
    g.pos = {rng.uniform(-1e5, 1e5), rng.uniform(-1e5, 1e5), 0.0};
    g.spd = {rng.uniform(-50, 50), rng.uniform(-50, 50), 0.0};
    g.posNoise = {rng.gaussian(1.0), rng.gaussian(1.0), 0.0};
    g.spdNoise = {rng.gaussian(0.1), rng.gaussian(0.1), 0.0};
    return g;
}

} // namespace

TEST_CASE("parse a beacon line") {
    std::stringstream ss(
        R"({"type":3,"rcvTime":10817.681,"sendTime":10817.677,"sender":103,"messageID":624,)"
        R"("pos":[3589.25,5610.0,0.5],"pos_noise":[1.25,-0.5,0],"spd":[6.125,-2.25,0],)"
        R"("spd_noise":[0.05,0.01,0],"RSSI":-77.25})");
    auto log = parse_reception_log(ss, 7);
    REQUIRE(log.entries.size() == 1);
    const auto& b = std::get<BeaconRecord>(log.entries[0]);
    CHECK(b.rcvTime == 10817.681);
    CHECK(b.sendTime == 10817.677);
    CHECK(b.senderId == 103);
    CHECK(b.messageId == 624);
    CHECK(b.pos == Vec3{3589.25, 5610.0, 0.5});
    CHECK(b.posNoise == Vec3{1.25, -0.5, 0});
    CHECK(b.spd == Vec3{6.125, -2.25, 0});
    CHECK(b.rssi == -77.25);
}

TEST_CASE("parse a gps line") {
    std::stringstream ss(
        R"({"type":2,"rcvTime":0.5,"pos":[1.5,2.5,0],"pos_noise":[0,0,0],)"
        R"("spd":[3.5,4.5,0],"spd_noise":[0,0,0]})");
    auto log = parse_reception_log(ss, 7);
    REQUIRE(log.entries.size() == 1);
    const auto& g = std::get<GpsRecord>(log.entries[0]);
    CHECK(g.rcvTime == 0.5);
    CHECK(g.pos == Vec3{1.5, 2.5, 0});
    CHECK(g.spd == Vec3{3.5, 4.5, 0});
}

TEST_CASE("parse errors carry line numbers and field names") {
    SUBCASE("missing messageID") {
        std::stringstream ss(
            "{\"type\":2,\"rcvTime\":0.1,\"pos\":[0,0,0],\"pos_noise\":[0,0,0],\"spd\":[0,0,0],\"spd_noise\":[0,0,0]}\n"
            "{\"type\":3,\"rcvTime\":1.0,\"sendTime\":0.9,\"sender\":1,\"pos\":[0,0,0],"
            "\"pos_noise\":[0,0,0],\"spd\":[0,0,0],\"spd_noise\":[0,0,0],\"RSSI\":-50}\n");
        try {
            parse_reception_log(ss, 1, "fixture");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
            CHECK(std::string(e.what()).find("messageID") != std::string::npos);
        }
    }
    SUBCASE("unknown type code") {
        std::stringstream ss(R"({"type":9,"rcvTime":0.1})");
        CHECK_THROWS_AS(parse_reception_log(ss, 1), ParseError);
    }
    SUBCASE("invalid json") {
        std::stringstream ss("{nope");
        CHECK_THROWS_AS(parse_reception_log(ss, 1), ParseError);
    }
    SUBCASE("sendTime after rcvTime") {
        std::stringstream ss(
            R"({"type":3,"rcvTime":1.0,"sendTime":2.0,"sender":1,"messageID":5,"pos":[0,0,0],)"
            R"("pos_noise":[0,0,0],"spd":[0,0,0],"spd_noise":[0,0,0],"RSSI":-50})");
        CHECK_THROWS_AS(parse_reception_log(ss, 1), ParseError);
    }
    SUBCASE("non-finite component") {
        std::stringstream ss(
            R"({"type":2,"rcvTime":0.1,"pos":[0,null,0],"pos_noise":[0,0,0],"spd":[0,0,0],"spd_noise":[0,0,0]})");
        CHECK_THROWS_AS(parse_reception_log(ss, 1), ParseError);
    }
}

TEST_CASE("extra unknown fields are tolerated") {
    std::stringstream ss(
        R"({"type":3,"rcvTime":1.0,"sendTime":0.9,"sender":101,"senderPseudo":10101,)"
        R"("messageID":9,"pos":[1,2,0],"pos_noise":[0,0,0],"spd":[0,0,0],"spd_noise":[0,0,0],)"
        R"("RSSI":-60.5,"extra":{"nested":true}})");
    auto log = parse_reception_log(ss, 1);
    REQUIRE(log.entries.size() == 1);
    CHECK(std::get<BeaconRecord>(log.entries[0]).senderId == 101);
}

TEST_CASE("ground truth parsing") {
    SUBCASE("two records") {
        std::stringstream ss(
            "{\"type\":0,\"time\":1.0,\"sender\":3,\"messageID\":10,\"pos\":[1,2,0],\"spd\":[0,0,0]}\n"
            "{\"type\":2,\"time\":2.0,\"sender\":4,\"messageID\":11,\"pos\":[3,4,0],\"spd\":[1,0,0]}\n");
        auto truth = parse_ground_truth(ss);
        REQUIRE(truth.size() == 2);
        CHECK(truth.at(10).attackerType == AttackerType::Legitimate);
        CHECK(truth.at(11).attackerType == AttackerType::ConstantOffset);
        CHECK(truth.at(11).senderId == 4);
    }
    SUBCASE("empty stream") {
        std::stringstream ss("");
        CHECK(parse_ground_truth(ss).empty());
    }
    SUBCASE("duplicate messageID") {
        std::stringstream ss(
            "{\"type\":0,\"time\":1.0,\"sender\":3,\"messageID\":10,\"pos\":[1,2,0],\"spd\":[0,0,0]}\n"
            "{\"type\":0,\"time\":2.0,\"sender\":4,\"messageID\":10,\"pos\":[3,4,0],\"spd\":[1,0,0]}\n");
        CHECK_THROWS_AS(parse_ground_truth(ss), ParseError);
    }
    SUBCASE("unknown attacker code") {
        std::stringstream ss(
            R"({"type":7,"time":1.0,"sender":3,"messageID":10,"pos":[1,2,0],"spd":[0,0,0]})");
        CHECK_THROWS_AS(parse_ground_truth(ss), ParseError);
    }
}

TEST_CASE("write/parse round trip is exact") {
    Rng rng(11);
    std::vector<LogEntry> entries;
    double t = 0.0;
    for (int i = 0; i < 1000; ++i) {
        if (rng.uniform() < 0.4) {
            auto g = random_gps(rng);
            g.rcvTime = (t += rng.uniform(0, 0.2));
            entries.emplace_back(g);
        } else {
            auto b = random_beacon(rng, i + 1);
            b.rcvTime = (t += rng.uniform(0, 0.2));
            b.sendTime = b.rcvTime - rng.uniform(0, 0.01);
            entries.emplace_back(b);
        }
    }
    std::stringstream ss;
    write_reception_log(ss, entries);
    auto parsed = parse_reception_log(ss, 1);
    CHECK(parsed.outOfOrderCount == 0);
    REQUIRE(parsed.entries.size() == entries.size());
    CHECK(parsed.entries == entries);
}

TEST_CASE("empty record list writes an empty file") {
    std::stringstream ss;
    write_reception_log(ss, {});
    CHECK(ss.str().empty());
    std::stringstream gt;
    write_ground_truth(gt, {});
    CHECK(gt.str().empty());
}

TEST_CASE("ground truth round trip") {
    Rng rng(13);
    std::vector<GroundTruthRecord> records;
    for (int i = 0; i < 500; ++i) {
        GroundTruthRecord r;
        r.sendTime = rng.uniform(0, 100);
        r.senderId = static_cast<std::int64_t>(rng.uniform_int(100));
        r.attackerType = kAllAttackerTypes[rng.uniform_int(kAllAttackerTypes.size())];
        r.messageId = i + 1;
        r.truePos = {rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4), 0.0};
        r.trueSpd = {rng.uniform(-40, 40), rng.uniform(-40, 40), 0.0};
        records.push_back(r);
    }
    std::stringstream ss;
    write_ground_truth(ss, records);
    auto parsed = parse_ground_truth(ss);
    REQUIRE(parsed.size() == records.size());
    for (const auto& r : records) CHECK(parsed.at(r.messageId) == r);
}

TEST_CASE("out-of-order rcvTime is a warning plus stable sort") {
    std::stringstream ss(
        "{\"type\":2,\"rcvTime\":2.0,\"pos\":[0,0,0],\"pos_noise\":[0,0,0],\"spd\":[0,0,0],\"spd_noise\":[0,0,0]}\n"
        "{\"type\":2,\"rcvTime\":1.0,\"pos\":[1,1,0],\"pos_noise\":[0,0,0],\"spd\":[0,0,0],\"spd_noise\":[0,0,0]}\n");
    auto log = parse_reception_log(ss, 1);
    CHECK(log.outOfOrderCount == 1);
    REQUIRE(log.entries.size() == 2);
    CHECK(std::get<GpsRecord>(log.entries[0]).rcvTime == 1.0);
    CHECK(std::get<GpsRecord>(log.entries[1]).rcvTime == 2.0);
}

TEST_CASE("join_labels") {
    std::map<std::int64_t, GroundTruthRecord> truth;
    GroundTruthRecord gt;
    gt.messageId = 1;
    gt.senderId = 5;
    gt.attackerType = AttackerType::ConstantOffset;
    truth[1] = gt;
    gt.messageId = 2;
    gt.attackerType = AttackerType::Legitimate;
    truth[2] = gt;

    GpsRecord g;
    g.rcvTime = 0.0;
    BeaconRecord b1;
    b1.rcvTime = 1.0;
    b1.messageId = 1;
    b1.senderId = 5;
    BeaconRecord b2 = b1;
    b2.rcvTime = 2.0;
    b2.messageId = 2;
    std::vector<LogEntry> log = {g, b1, b2};

    auto events = join_labels(log, truth, 9);
    REQUIRE(events.size() == 2); // gps records pass through unlabeled
    CHECK(events[0].receiverId == 9);
    CHECK(events[0].label);       // attacker type 2
    CHECK_FALSE(events[1].label); // legitimate

    BeaconRecord b3 = b1;
    b3.messageId = 77;
    std::vector<LogEntry> bad = {g, b3};
    try {
        join_labels(bad, truth, 9);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("77") != std::string::npos);
    }
}

TEST_CASE("published-dataset fixture parses") {
    const std::string dir = VEREMI_TEST_DATA_DIR;
    auto log = read_reception_log_file(dir + "/veremi_fixture/log-101.jsonl", 101);
    CHECK(log.entries.size() >= 4);
    CHECK(log.outOfOrderCount == 0);
    auto truth = read_ground_truth_file(dir + "/veremi_fixture/groundtruth.jsonl");
    CHECK(truth.size() >= 3);
    auto labeled = join_labels(log.entries, truth, 101);
    CHECK(!labeled.empty());
}

TEST_CASE("log filename helpers") {
    CHECK(log_filename(42) == "log-42.jsonl");
    CHECK(receiver_id_from_filename("log-42.jsonl") == 42);
    CHECK(receiver_id_from_filename("log-0.jsonl") == 0);
    CHECK_FALSE(receiver_id_from_filename("groundtruth.jsonl").has_value());
    CHECK_FALSE(receiver_id_from_filename("log-.jsonl").has_value());
    CHECK_FALSE(receiver_id_from_filename("log-4a.jsonl").has_value());
}
