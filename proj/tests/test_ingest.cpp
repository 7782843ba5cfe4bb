#include <doctest.h>

#include <algorithm>

#include "cooc/error.hpp"
#include "cooc/records.hpp"
#include "cooc/rng.hpp"
#include "support/fixtures.hpp"

using namespace cooc;

TEST_SUITE("ingest") {

TEST_CASE("parse_records maps fields directly") {
    auto recs = parse_records(R"({"video_id":"v1","action":"wash face","start_s":3.0,"end_s":5.0})");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].video_id == "v1");
    CHECK(recs[0].action == "wash face");
    CHECK(recs[0].start_s == 3.0);
    CHECK(recs[0].end_s == 5.0);
}

TEST_CASE("parse_records on empty input yields empty list") {
    CHECK(parse_records("").empty());
    CHECK(parse_records("\n\n").empty());
}

TEST_CASE("parse_records rejects end before start with the line number") {
    std::string text =
        "{\"video_id\":\"v1\",\"action\":\"a b\",\"start_s\":0,\"end_s\":1}\n"
        "{\"video_id\":\"v1\",\"action\":\"c d\",\"start_s\":7,\"end_s\":2}\n";
    try {
        parse_records(text, "in");
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Validation);
        CHECK(std::string(e.what()).find("in:2") != std::string::npos);
    }
}

TEST_CASE("parse_records rejects malformed JSON with the line number") {
    try {
        parse_records("not json at all", "in");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        CHECK(std::string(e.what()).find("in:1") != std::string::npos);
    }
}

TEST_CASE("parse_records enforces the record invariants") {
    CHECK_THROWS_AS(parse_records(R"({"video_id":"v","action":"  ","start_s":0,"end_s":1})"),
                    Error);
    CHECK_THROWS_AS(parse_records(R"({"video_id":"v","action":"a","start_s":-1,"end_s":1})"),
                    Error);
    CHECK_THROWS_AS(parse_records(R"({"video_id":"v","action":"a","start_s":0})"), Error);
    // actions normalize to lowercase
    auto recs = parse_records(R"({"video_id":"v","action":"Wash Face","start_s":0,"end_s":1})");
    CHECK(recs[0].action == "wash face");
}

TEST_CASE("filter_visual keeps exactly the allowlisted verbs, stable order") {
    std::vector<ActionRecord> recs = {fixtures::record("v", "wash face", 0, 1),
                                      fixtures::record("v", "feel happy", 2, 3)};
    auto out = filter_visual(recs, {"wash"});
    REQUIRE(out.size() == 1);
    CHECK(out[0].action == "wash face");
}

TEST_CASE("filter_visual with an all-covering allowlist is the identity") {
    std::vector<ActionRecord> recs = {fixtures::record("v", "wash face", 0, 1),
                                      fixtures::record("v", "iron shirt", 2, 3),
                                      fixtures::record("w", "wash dish", 0, 2)};
    auto out = filter_visual(recs, {"wash", "iron"});
    CHECK(out.size() == recs.size());
    for (size_t i = 0; i < recs.size(); ++i) CHECK(out[i].action == recs[i].action);
}

TEST_CASE("filter_visual rejects an empty allowlist") {
    std::vector<ActionRecord> recs = {fixtures::record("v", "wash face", 0, 1)};
    CHECK_THROWS_AS(filter_visual(recs, {}), Error);
}

TEST_CASE("extract_cooccurrences applies the span-gap rule") {
    // spans [0,2] and [5,6]: gap 3 < 10 -> one pair
    std::vector<ActionRecord> recs = {fixtures::record("v", "wash face", 0, 2),
                                      fixtures::record("v", "make tea", 5, 6)};
    auto pairs = extract_cooccurrences(recs, 10.0);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].action_a == "make tea"); // canonical lexicographic orientation
    CHECK(pairs[0].action_b == "wash face");
    CHECK(pairs[0].gap_s == doctest::Approx(3.0));
}

TEST_CASE("extract_cooccurrences drops pairs at or beyond the window") {
    std::vector<ActionRecord> recs = {fixtures::record("v", "wash face", 0, 2),
                                      fixtures::record("v", "make tea", 20, 21)};
    CHECK(extract_cooccurrences(recs, 10.0).empty()); // gap 18
    // boundary: gap exactly == window is excluded (strict <)
    std::vector<ActionRecord> edge = {fixtures::record("v", "a b", 0, 2),
                                      fixtures::record("v", "c d", 12, 13)};
    CHECK(extract_cooccurrences(edge, 10.0).empty());
    CHECK(extract_cooccurrences(edge, 10.0001).size() == 1);
}

TEST_CASE("extract_cooccurrences excludes self-pairs") {
    std::vector<ActionRecord> recs = {fixtures::record("v", "wash face", 0, 2),
                                      fixtures::record("v", "wash face", 3, 4)};
    CHECK(extract_cooccurrences(recs, 10.0).empty());
}

TEST_CASE("overlapping spans have gap 0") {
    std::vector<ActionRecord> recs = {fixtures::record("v", "a b", 0, 10),
                                      fixtures::record("v", "c d", 2, 5)};
    auto pairs = extract_cooccurrences(recs, 10.0);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].gap_s == 0.0);
}

TEST_CASE("window <= 0 is a configuration error") {
    std::vector<ActionRecord> recs = {fixtures::record("v", "a b", 0, 1)};
    CHECK_THROWS_AS(extract_cooccurrences(recs, 0.0), Error);
    CHECK_THROWS_AS(extract_cooccurrences(recs, -1.0), Error);
}

// property: shuffling the input yields the same pair multiset, every gap is
// in [0, window), no pair spans two videos, and larger windows only add pairs
TEST_CASE("pair extraction properties on random inputs") {
    SeededRng rng(2024);
    const char* actions[] = {"wash face", "make tea",  "iron shirt", "chop onion",
                             "clean sink", "read book", "boil egg"};
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<ActionRecord> recs;
        size_t n = 5 + rng.uniform_index(20);
        for (size_t i = 0; i < n; ++i) {
            double start = rng.uniform_double() * 60.0;
            recs.push_back({"v" + std::to_string(rng.uniform_index(3)),
                            actions[rng.uniform_index(7)], start,
                            start + rng.uniform_double() * 8.0});
        }
        const double w1 = 5.0, w2 = 12.0;
        auto base = extract_cooccurrences(recs, w1);

        auto shuffled = recs;
        rng.shuffle(shuffled);
        CHECK(extract_cooccurrences(shuffled, w1) == base); // canonical order

        for (const auto& p : base) {
            CHECK(p.gap_s >= 0.0);
            CHECK(p.gap_s < w1);
            CHECK(p.action_a < p.action_b);
        }
        auto wide = extract_cooccurrences(recs, w2);
        CHECK(wide.size() >= base.size());
        // subset as multisets: both sorted, so std::includes works
        CHECK(std::includes(wide.begin(), wide.end(), base.begin(), base.end()));
    }
}

TEST_CASE("pairs TSV round trip") {
    std::vector<ActionRecord> recs = {fixtures::record("v", "wash face", 0, 2),
                                      fixtures::record("v", "make tea", 5, 6),
                                      fixtures::record("v", "boil egg", 6, 7)};
    auto pairs = extract_cooccurrences(recs, 10.0);
    auto parsed = parse_pairs_tsv(to_pairs_tsv(pairs, {"config=abc"}));
    CHECK(parsed == pairs);
}

} // TEST_SUITE
