#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "persona/inventory.hpp"

using namespace persona;

namespace {

InventoryResponse make_response(std::vector<int> answers, const std::string& id = "t1") {
    InventoryResponse r;
    r.participant_id = id;
    r.answers = std::move(answers);
    return r;
}

// pseudo-random but fixed fixture: a_i = ((i*7) mod 5) + 1
std::vector<int> fixture_answers() {
    std::vector<int> a;
    for (int i = 1; i <= 44; ++i) a.push_back((i * 7) % 5 + 1);
    return a;
}

} // namespace

TEST_CASE("scoring key covers all items with the documented dimension counts") {
    const auto& key = scoring_key();
    REQUIRE(key.size() == 44);
    int counts[5] = {0, 0, 0, 0, 0};
    for (const auto& e : key) ++counts[static_cast<int>(e.dimension)];
    CHECK(counts[static_cast<int>(Dimension::E)] == 8);
    CHECK(counts[static_cast<int>(Dimension::A)] == 9);
    CHECK(counts[static_cast<int>(Dimension::C)] == 9);
    CHECK(counts[static_cast<int>(Dimension::N)] == 8);
    CHECK(counts[static_cast<int>(Dimension::O)] == 10);
    CHECK(counts[0] + counts[1] + counts[2] + counts[3] + counts[4] == 44);
    for (Dimension d : all_dimensions())
        CHECK(dimension_item_count(d) == counts[static_cast<int>(d)]);
}

TEST_CASE("scoring key matches the independently transcribed fixture file") {
    std::ifstream in(std::string(PERSONA_DATA_DIR) + "/bfi44_key.json");
    REQUIRE(in.good());
    nlohmann::json fixture = nlohmann::json::parse(in);
    const auto& items = fixture.at("items");
    REQUIRE(items.size() == 44);
    const auto& key = scoring_key();
    for (const auto& item : items) {
        int idx = item.at("item").get<int>();
        const KeyEntry& entry = key[static_cast<size_t>(idx - 1)];
        CHECK(dimension_letter(entry.dimension) ==
              item.at("dimension").get<std::string>()[0]);
        CHECK(entry.reversed == item.at("reversed").get<bool>());
    }
}

TEST_CASE("all-3 responses score 3.0 in every dimension") {
    auto score = score_bfi(make_response(std::vector<int>(44, 3)));
    for (Dimension d : all_dimensions()) CHECK(score[d] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("maximal keyed responses score 5.0 in every dimension") {
    std::vector<int> answers(44, 5);
    const auto& key = scoring_key();
    for (int i = 0; i < 44; ++i)
        if (key[static_cast<size_t>(i)].reversed) answers[static_cast<size_t>(i)] = 1;
    auto score = score_bfi(make_response(std::move(answers)));
    for (Dimension d : all_dimensions()) CHECK(score[d] == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("fixed fixture scores match the hand-computed values") {
    // hand-scored against the public key before implementation:
    // E 24/8, A 29/9, C 26/9, N 26/8, O 19/10
    auto score = score_bfi(make_response(fixture_answers()));
    CHECK(score.e() == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(score.a() == doctest::Approx(29.0 / 9.0).epsilon(1e-9));
    CHECK(score.c() == doctest::Approx(26.0 / 9.0).epsilon(1e-9));
    CHECK(score.n() == doctest::Approx(3.25).epsilon(1e-9));
    CHECK(score.o() == doctest::Approx(1.9).epsilon(1e-9));
}

TEST_CASE("validation names the offending answer") {
    auto short_resp = make_response(std::vector<int>(43, 3));
    CHECK_THROWS_WITH_AS(score_bfi(short_resp), doctest::Contains("expected 44"),
                         ValidationError);

    auto bad = fixture_answers();
    bad[20] = 6;
    CHECK_THROWS_WITH_AS(score_bfi(make_response(bad)), doctest::Contains("item 21"),
                         ValidationError);
    bad[20] = 0;
    CHECK_THROWS_AS(score_bfi(make_response(bad)), ValidationError);
}

TEST_CASE("bumping one answer moves exactly one dimension by 1/k") {
    const auto& key = scoring_key();
    auto base_answers = fixture_answers();
    auto base = score_bfi(make_response(base_answers));
    for (int i = 0; i < 44; ++i) {
        if (base_answers[static_cast<size_t>(i)] == 5) continue;
        auto bumped = base_answers;
        ++bumped[static_cast<size_t>(i)];
        auto score = score_bfi(make_response(bumped));
        Dimension target = key[static_cast<size_t>(i)].dimension;
        double step = 1.0 / dimension_item_count(target);
        for (Dimension d : all_dimensions()) {
            double expected = base[d];
            if (d == target) expected += key[static_cast<size_t>(i)].reversed ? -step : step;
            CHECK(score[d] == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("every dimension mean is a multiple of 1/k and stays in [1,5]") {
    // a few deterministic pseudo-random responses
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> answers;
        for (int i = 0; i < 44; ++i) answers.push_back((i * 13 + trial * 7) % 5 + 1);
        auto score = score_bfi(make_response(answers));
        for (Dimension d : all_dimensions()) {
            double v = score[d];
            CHECK(v >= 1.0);
            CHECK(v <= 5.0);
            double scaled = v * dimension_item_count(d);
            CHECK(scaled == doctest::Approx(std::round(scaled)).epsilon(1e-9));
        }
    }
}
