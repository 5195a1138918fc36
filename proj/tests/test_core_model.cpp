#include "doctest.h"

#include <sstream>

#include "veremi/rng.hpp"
#include "veremi/trace_io.hpp"
#include "veremi/types.hpp"
#include "veremi/vec3.hpp"

using namespace veremi;

TEST_CASE("euclidean_distance basic values") {
    CHECK(euclidean_distance({0, 0, 0}, {300, 400, 0}) == doctest::Approx(500).epsilon(0));
    CHECK(euclidean_distance({5, 5, 5}, {5, 5, 5}) == 0.0);
    CHECK(euclidean_distance({1, 2, 3}, {4, 6, 3}) == doctest::Approx(5).epsilon(0));
}

TEST_CASE("euclidean_distance is a metric") {
    Rng rng(7);
    auto point = [&] { return Vec3{rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4), rng.uniform(-10, 10)}; };
    for (int i = 0; i < 500; ++i) {
        Vec3 a = point(), b = point(), c = point();
        double ab = euclidean_distance(a, b);
        double ba = euclidean_distance(b, a);
        double ac = euclidean_distance(a, c);
        double cb = euclidean_distance(c, b);
        CHECK(ab >= 0.0);
        CHECK(ab == ba);
        CHECK(ab <= ac + cb + 1e-9); // triangle inequality
    }
    Vec3 p{1.5, -2.5, 3.5};
    CHECK(euclidean_distance(p, p) == 0.0);
}

TEST_CASE("attacker labels") {
    CHECK_FALSE(is_malicious_label(AttackerType::Legitimate));
    CHECK(is_malicious_label(AttackerType::EventualStop));
    CHECK(is_malicious_label(AttackerType::ConstantOffset));
}

TEST_CASE("attacker type codes") {
    for (AttackerType t : kAllAttackerTypes) {
        auto back = attacker_type_from_code(attacker_code(t));
        REQUIRE(back.has_value());
        CHECK(*back == t);
    }
    CHECK_FALSE(attacker_type_from_code(3).has_value());
    CHECK_FALSE(attacker_type_from_code(5).has_value());
    CHECK_FALSE(attacker_type_from_code(-1).has_value());
    CHECK_FALSE(attacker_type_from_code(32).has_value());
}

TEST_CASE("attacker type survives ground-truth serialization") {
    std::vector<GroundTruthRecord> records;
    std::int64_t id = 1;
    for (AttackerType t : kAllAttackerTypes) {
        GroundTruthRecord r;
        r.sendTime = static_cast<double>(id);
        r.senderId = id;
        r.attackerType = t;
        r.messageId = id++;
        records.push_back(r);
    }
    std::stringstream ss;
    write_ground_truth(ss, records);
    auto parsed = parse_ground_truth(ss);
    REQUIRE(parsed.size() == records.size());
    for (const auto& r : records) CHECK(parsed.at(r.messageId).attackerType == r.attackerType);
}

TEST_CASE("density bands") {
    auto low = DensityClass::of(DensityTag::Low);
    CHECK(low.bandMin == 35);
    CHECK(low.bandMax == 39);
    auto medium = DensityClass::of(DensityTag::Medium);
    CHECK(medium.bandMin == 97);
    CHECK(medium.bandMax == 108);
    auto high = DensityClass::of(DensityTag::High);
    CHECK(high.bandMin <= high.bandMax);
    CHECK(*density_tag_from_string("medium") == DensityTag::Medium);
    CHECK_FALSE(density_tag_from_string("extreme").has_value());
    CHECK(to_string(DensityTag::High) == "high");
}
