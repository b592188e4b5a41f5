#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "persona/features.hpp"
#include "persona/io.hpp"
#include "persona/synth.hpp"

using namespace persona;

namespace {

const long long kRef = epoch_seconds(2012, 3, 1);

long long days_ago(long long d) { return kRef - d * kSecondsPerDay; }

EmotionModel toy_model() {
    return EmotionModel::train(make_toy_emotion_corpus(), default_emotion_lexicon(), 2.0, 1.0);
}

Status make_status(long long days, const std::string& text, bool republished = false) {
    Status s;
    s.timestamp = days_ago(days);
    s.text = text;
    s.is_republished = republished;
    return s;
}

Blog make_blog(long long days, const std::string& text, long long emoticons,
               std::vector<BlogComment> comments = {}) {
    Blog b;
    b.timestamp = days_ago(days);
    b.text = text;
    b.emoticon_count = emoticons;
    b.comments = std::move(comments);
    return b;
}

/// Hand-verifiable fixture: every expected slot value below was tallied
/// manually from these numbers before the extractor existed.
UserRecord fixture_record() {
    UserRecord u;
    u.user_id = "u1";
    u.gender = "f";
    u.birth_year = 1988;
    u.hometown_code = 7;
    u.zidou = 321;
    u.registration_date = days_ago(700);
    u.friend_count = 150;
    for (int i = 0; i < 300; ++i) u.login_events.push_back(days_ago(i % 600));

    // 2 old moving statuses, then 4 funny + 6 angry inside the 30-day window;
    // 3 republished, two emoticons
    u.statuses.push_back(make_status(40, "tears touching warm"));
    u.statuses.push_back(make_status(35, "tears touching warm"));
    u.statuses.push_back(make_status(20, "lol haha joke", true));
    u.statuses.push_back(make_status(19, "lol haha joke :)"));
    u.statuses.push_back(make_status(18, "lol haha joke", true));
    u.statuses.push_back(make_status(17, "lol haha joke"));
    u.statuses.push_back(make_status(10, "rage mad grr", true));
    u.statuses.push_back(make_status(8, "rage mad grr :)"));
    u.statuses.push_back(make_status(6, "rage mad grr"));
    u.statuses.push_back(make_status(5, "rage mad grr"));
    u.statuses.push_back(make_status(3, "rage mad grr"));
    u.statuses.push_back(make_status(2, "rage mad grr"));

    u.blogs.push_back(make_blog(100, "rage mad i my outrage", 2,
                                {{"u1", days_ago(90)}, {"u99", days_ago(80)}}));
    u.blogs.push_back(make_blog(50, "tears warm you grateful", 1, {{"u50", days_ago(10)}}));
    u.blogs.push_back(make_blog(20, "touching hug i sincere", 0));
    u.blogs.push_back(make_blog(5, "heartwarming cherish it warm", 3, {{"u1", days_ago(1)}}));

    u.photo_count = 11;
    u.album_count = 2;
    u.share_count = 5;
    u.gift_count = 4;
    u.checkin_count = 9;
    u.guestbook_count = 13;
    u.app_count = 3;
    u.page_follow_count = 8;
    u.comments_given = 21;
    return u;
}

double numval(const FeatureVector& v, const std::string& name) {
    int idx = resolve_feature(name);
    REQUIRE(idx >= 0);
    return num(v[static_cast<size_t>(idx)]);
}

std::string catval(const FeatureVector& v, const std::string& name) {
    int idx = resolve_feature(name);
    REQUIRE(idx >= 0);
    return cat(v[static_cast<size_t>(idx)]);
}

} // namespace

TEST_CASE("schema has 41 slots with the fixed group cardinalities") {
    const auto& schema = feature_schema();
    CHECK(schema.size() == 41);
    auto sizes = feature_group_sizes();
    CHECK(sizes[static_cast<size_t>(FeatureGroup::BasicInfo)] == 5);
    CHECK(sizes[static_cast<size_t>(FeatureGroup::SnsUsage)] == 28);
    CHECK(sizes[static_cast<size_t>(FeatureGroup::TimeRelated)] == 3);
    CHECK(sizes[static_cast<size_t>(FeatureGroup::EmotionRelated)] == 2);
    CHECK(sizes[static_cast<size_t>(FeatureGroup::TimeEmotionRelated)] == 3);

    // names unique
    std::set<std::string> names;
    for (const auto& f : schema) names.insert(f.name);
    CHECK(names.size() == 41);
}

TEST_CASE("the checked-in schema fixture matches the compiled schema exactly") {
    std::ifstream in(std::string(PERSONA_DATA_DIR) + "/feature_schema.json");
    REQUIRE(in.good());
    auto fixture = nlohmann::ordered_json::parse(in);
    CHECK(fixture == feature_schema_json());
}

TEST_CASE("every conventional short name resolves to a schema descriptor") {
    std::ifstream in(std::string(PERSONA_DATA_DIR) + "/table5_features.json");
    REQUIRE(in.good());
    auto fixture = nlohmann::json::parse(in);
    for (const auto& name : fixture.at("names")) {
        INFO("name: ", name.get<std::string>());
        CHECK(resolve_feature(name.get<std::string>()) >= 0);
    }
    CHECK(resolve_feature("no_such_feature") == -1);
}

TEST_CASE("fixture record extracts the hand-tallied 41-vector") {
    auto model = toy_model();
    auto v = extract_features(fixture_record(), kRef, model);
    REQUIRE(v.size() == 41);

    CHECK(catval(v, "gender") == "f");
    CHECK(numval(v, "age") == 24.0);
    CHECK(catval(v, "hometown") == "h7");
    CHECK(numval(v, "zidou") == 321.0);
    CHECK(numval(v, "account_tenure_days") == 700.0);

    CHECK(numval(v, "friend_count") == 150.0);
    CHECK(numval(v, "guestbook_count") == 13.0);
    CHECK(numval(v, "usage") == doctest::Approx(3.0).epsilon(1e-12));  // 300 logins / 100 weeks
    CHECK(numval(v, "blog_emoticon_count") == 6.0);
    CHECK(numval(v, "zzstatus_proportion") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(numval(v, "self_comment_proportion") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(numval(v, "friend_comment_proportion") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(catval(v, "blog_person_category") == "I");
    CHECK(numval(v, "status_count") == 12.0);
    CHECK(numval(v, "blog_count") == 4.0);
    CHECK(numval(v, "photo_count") == 11.0);
    CHECK(numval(v, "album_count") == 2.0);
    CHECK(numval(v, "share_count") == 5.0);
    CHECK(numval(v, "gift_count") == 4.0);
    CHECK(numval(v, "checkin_count") == 9.0);
    CHECK(numval(v, "comment_received_count") == 4.0);
    CHECK(numval(v, "comment_given_count") == 21.0);
    CHECK(numval(v, "status_emoticon_count") == 2.0);
    CHECK(numval(v, "avg_blog_length") == doctest::Approx(4.25).epsilon(1e-12));
    CHECK(numval(v, "avg_status_length") == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(numval(v, "avg_comments_per_blog") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(numval(v, "blog_i_ratio") == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(numval(v, "blog_you_ratio") == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(numval(v, "blog_it_ratio") == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(numval(v, "statuses_per_week") == doctest::Approx(0.12).epsilon(1e-12));
    CHECK(numval(v, "blogs_per_week") == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(numval(v, "app_count") == 3.0);
    CHECK(numval(v, "page_follow_count") == 8.0);

    CHECK(numval(v, "recent_status_count_30d") == 10.0);
    CHECK(numval(v, "recent_blog_count_30d") == 2.0);
    CHECK(numval(v, "recent_comment_count_30d") == 2.0);

    CHECK(catval(v, "blog_top_emotion") == "moving");
    CHECK(numval(v, "angry_blog_proportion") == doctest::Approx(0.25).epsilon(1e-12));

    // 10 recent statuses, 6 classified angry
    CHECK(numval(v, "recent_status_top_emotion_ratio") == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(catval(v, "latest_status_emotion") == "angry");
    // the angry suffix run starts 10 days back
    CHECK(numval(v, "latest_emotion_length_days") == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("a user with no activity still extracts a complete vector of zeros") {
    UserRecord u;
    u.user_id = "empty";
    u.gender = "m";
    u.birth_year = 1990;
    u.hometown_code = 0;
    u.registration_date = days_ago(100);
    auto model = toy_model();
    auto v = extract_features(u, kRef, model);
    REQUIRE(v.size() == 41);
    CHECK(numval(v, "blog_emoticon_count") == 0.0);
    CHECK(numval(v, "angry_blog_proportion") == 0.0);
    CHECK(numval(v, "self_comment_proportion") == 0.0);
    CHECK(numval(v, "zzstatus_proportion") == 0.0);
    CHECK(numval(v, "usage") == 0.0);
    CHECK(numval(v, "avg_blog_length") == 0.0);
    CHECK(catval(v, "blog_top_emotion") == "none");
    CHECK(catval(v, "latest_status_emotion") == "none");
    CHECK(numval(v, "latest_emotion_length_days") == 0.0);
    CHECK(catval(v, "blog_person_category") == "I");  // tie-break default

    const auto& schema = feature_schema();
    for (size_t i = 0; i < schema.size(); ++i)
        if (schema[i].kind == FeatureKind::Numeric) CHECK(num(v[i]) >= 0.0);
}

TEST_CASE("pronoun_profile follows counts with the I < you < it tie order") {
    CHECK(pronoun_profile({"i think we should go", "my idea"}) == PersonCategory::I);
    CHECK(pronoun_profile({"nothing here", "plain words"}) == PersonCategory::I);
    CHECK(pronoun_profile({"you and you", "your turn you"}) == PersonCategory::You);
    CHECK(pronoun_profile({"she told them it was his", "they left"}) == PersonCategory::It);
    // mixed fixture: first-person 2, second 2 -> tie resolves to I
    CHECK(pronoun_profile({"i saw you", "you and me"}) == PersonCategory::I);
}

TEST_CASE("emotion_length measures the same-emotion suffix run") {
    auto model = toy_model();
    CHECK(emotion_length({}, model, kRef) == 0.0);

    std::vector<Status> single = {make_status(3, "rage mad")};
    CHECK(emotion_length(single, model, kRef) == doctest::Approx(3.0));

    // moving, moving, funny, then a 4-status angry suffix starting 9 days back
    std::vector<Status> run = {
        make_status(30, "tears touching"), make_status(25, "warm hug"),
        make_status(12, "lol haha"),       make_status(9, "rage mad"),
        make_status(7, "grr outrage"),     make_status(4, "furious rage"),
        make_status(1, "mad mad grr"),
    };
    CHECK(emotion_length(run, model, kRef) == doctest::Approx(9.0));
}

TEST_CASE("malformed records fail validation with the field named") {
    auto model = toy_model();
    auto good = fixture_record();

    auto bad_gender = good;
    bad_gender.gender = "x";
    CHECK_THROWS_WITH_AS(extract_features(bad_gender, kRef, model),
                         doctest::Contains("gender"), ValidationError);

    auto future = good;
    future.statuses.push_back(make_status(-3, "rage"));  // 3 days after the reference
    CHECK_THROWS_WITH_AS(extract_features(future, kRef, model),
                         doctest::Contains("statuses"), ValidationError);

    auto bad_home = good;
    bad_home.hometown_code = 99;
    CHECK_THROWS_WITH_AS(extract_features(bad_home, kRef, model),
                         doctest::Contains("hometown_code"), ValidationError);

    auto negative = good;
    negative.zidou = -1;
    CHECK_THROWS_WITH_AS(extract_features(negative, kRef, model), doctest::Contains("zidou"),
                         ValidationError);
}

TEST_CASE("extraction is deterministic") {
    auto model = toy_model();
    auto rec = fixture_record();
    auto a = extract_features(rec, kRef, model);
    auto b = extract_features(rec, kRef, model);
    CHECK(a == b);
}

TEST_CASE("feature CSV round-trips losslessly in schema order") {
    auto model = toy_model();
    FeatureTable table;
    table.ids.push_back("u1");
    table.rows.push_back(extract_features(fixture_record(), kRef, model));
    UserRecord empty;
    empty.user_id = "u2";
    empty.gender = "m";
    empty.birth_year = 1991;
    empty.registration_date = days_ago(50);
    table.ids.push_back("u2");
    table.rows.push_back(extract_features(empty, kRef, model));

    auto csv = features_to_csv(table);
    auto tmp = std::filesystem::temp_directory_path() / "persona_features_roundtrip.csv";
    write_text_atomic(tmp, csv);
    auto loaded = load_features(tmp);
    REQUIRE(loaded.ids == table.ids);
    REQUIRE(loaded.rows.size() == table.rows.size());
    for (size_t r = 0; r < table.rows.size(); ++r)
        for (size_t c = 0; c < 41; ++c) CHECK(loaded.rows[r][c] == table.rows[r][c]);
    CHECK(features_to_csv(loaded) == csv);
    std::filesystem::remove(tmp);

    // header drift is a schema-version mismatch
    auto broken = std::filesystem::temp_directory_path() / "persona_features_broken.csv";
    write_text_atomic(broken, "user_id,not_the_schema\nu1,1\n");
    CHECK_THROWS_WITH_AS(load_features(broken), doctest::Contains("schema"), ValidationError);
    std::filesystem::remove(broken);
}

TEST_CASE("user record JSONL round-trips") {
    auto rec = fixture_record();
    auto j = user_record_to_json(rec);
    auto back = user_record_from_json(j);
    CHECK(user_record_to_json(back) == j);
    CHECK(back.user_id == "u1");
    CHECK(back.statuses.size() == 12);
    CHECK(back.blogs[0].comments.size() == 2);
}
