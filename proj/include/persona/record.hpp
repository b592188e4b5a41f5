#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "persona/common.hpp"

namespace persona {

/// One user's raw behavior log, as ingested from JSONL. Timestamps are
/// Unix epoch seconds (UTC).
struct Status {
    long long timestamp = 0;
    std::string text;
    bool is_republished = false;
};

struct BlogComment {
    std::string author_id;
    long long timestamp = 0;
};

struct Blog {
    long long timestamp = 0;
    std::string text;
    long long emoticon_count = 0;
    std::vector<BlogComment> comments;
};

struct UserRecord {
    std::string user_id;
    std::string gender;          // "m" or "f"
    int birth_year = 0;
    int hometown_code = 0;       // province-level region id, 0..63
    long long zidou = 0;         // account virtual money
    long long registration_date = 0;
    long long friend_count = 0;
    std::vector<long long> login_events;
    std::vector<Status> statuses;
    std::vector<Blog> blogs;
    long long photo_count = 0;
    long long album_count = 0;
    long long share_count = 0;
    long long gift_count = 0;
    long long checkin_count = 0;
    long long guestbook_count = 0;
    long long app_count = 0;
    long long page_follow_count = 0;
    long long comments_given = 0;

    /// Field-naming validation; reference_date bounds every timestamp.
    void validate(long long reference_date) const {
        auto bad = [&](const std::string& field, const std::string& why) {
            detail::fail("user '" + user_id + "': field " + field + " " + why);
        };
        if (user_id.empty()) detail::fail("user record with empty user_id");
        if (gender != "m" && gender != "f") bad("gender", "must be 'm' or 'f'");
        int ref_year = year_of_epoch(reference_date);
        if (birth_year < 1900 || birth_year > ref_year) bad("birth_year", "out of range");
        if (hometown_code < 0 || hometown_code > 63) bad("hometown_code", "out of range 0..63");
        if (zidou < 0) bad("zidou", "must be >= 0");
        if (registration_date > reference_date) bad("registration_date", "after reference date");
        if (friend_count < 0) bad("friend_count", "must be >= 0");
        for (long long t : login_events)
            if (t > reference_date) bad("login_events", "timestamp after reference date");
        for (const auto& s : statuses)
            if (s.timestamp > reference_date) bad("statuses", "timestamp after reference date");
        for (const auto& b : blogs) {
            if (b.timestamp > reference_date) bad("blogs", "timestamp after reference date");
            if (b.emoticon_count < 0) bad("blogs", "negative emoticon_count");
            for (const auto& c : b.comments)
                if (c.timestamp > reference_date)
                    bad("blogs.comments", "timestamp after reference date");
        }
        for (auto [count, name] : {std::pair<long long, const char*>{photo_count, "photo_count"},
                                   {album_count, "album_count"},
                                   {share_count, "share_count"},
                                   {gift_count, "gift_count"},
                                   {checkin_count, "checkin_count"},
                                   {guestbook_count, "guestbook_count"},
                                   {app_count, "app_count"},
                                   {page_follow_count, "page_follow_count"},
                                   {comments_given, "comments_given"}})
            if (count < 0) bad(name, "must be >= 0");
    }
};

inline nlohmann::ordered_json user_record_to_json(const UserRecord& u) {
    nlohmann::ordered_json j;
    j["user_id"] = u.user_id;
    j["gender"] = u.gender;
    j["birth_year"] = u.birth_year;
    j["hometown_code"] = u.hometown_code;
    j["zidou"] = u.zidou;
    j["registration_date"] = u.registration_date;
    j["friend_count"] = u.friend_count;
    j["login_events"] = u.login_events;
    nlohmann::ordered_json statuses = nlohmann::ordered_json::array();
    for (const auto& s : u.statuses)
        statuses.push_back({{"timestamp", s.timestamp},
                            {"text", s.text},
                            {"is_republished", s.is_republished}});
    j["statuses"] = statuses;
    nlohmann::ordered_json blogs = nlohmann::ordered_json::array();
    for (const auto& b : u.blogs) {
        nlohmann::ordered_json comments = nlohmann::ordered_json::array();
        for (const auto& c : b.comments)
            comments.push_back({{"author_id", c.author_id}, {"timestamp", c.timestamp}});
        blogs.push_back({{"timestamp", b.timestamp},
                         {"text", b.text},
                         {"emoticon_count", b.emoticon_count},
                         {"comments", comments}});
    }
    j["blogs"] = blogs;
    j["photo_count"] = u.photo_count;
    j["album_count"] = u.album_count;
    j["share_count"] = u.share_count;
    j["gift_count"] = u.gift_count;
    j["checkin_count"] = u.checkin_count;
    j["guestbook_count"] = u.guestbook_count;
    j["app_count"] = u.app_count;
    j["page_follow_count"] = u.page_follow_count;
    j["comments_given"] = u.comments_given;
    return j;
}

inline UserRecord user_record_from_json(const nlohmann::json& j) {
    UserRecord u;
    u.user_id = j.at("user_id").get<std::string>();
    u.gender = j.at("gender").get<std::string>();
    u.birth_year = j.at("birth_year").get<int>();
    u.hometown_code = j.at("hometown_code").get<int>();
    u.zidou = j.at("zidou").get<long long>();
    u.registration_date = j.at("registration_date").get<long long>();
    u.friend_count = j.at("friend_count").get<long long>();
    u.login_events = j.at("login_events").get<std::vector<long long>>();
    for (const auto& s : j.at("statuses")) {
        Status st;
        st.timestamp = s.at("timestamp").get<long long>();
        st.text = s.at("text").get<std::string>();
        st.is_republished = s.at("is_republished").get<bool>();
        u.statuses.push_back(std::move(st));
    }
    for (const auto& b : j.at("blogs")) {
        Blog blog;
        blog.timestamp = b.at("timestamp").get<long long>();
        blog.text = b.at("text").get<std::string>();
        blog.emoticon_count = b.at("emoticon_count").get<long long>();
        for (const auto& c : b.at("comments")) {
            BlogComment bc;
            bc.author_id = c.at("author_id").get<std::string>();
            bc.timestamp = c.at("timestamp").get<long long>();
            blog.comments.push_back(std::move(bc));
        }
        u.blogs.push_back(std::move(blog));
    }
    u.photo_count = j.at("photo_count").get<long long>();
    u.album_count = j.at("album_count").get<long long>();
    u.share_count = j.at("share_count").get<long long>();
    u.gift_count = j.at("gift_count").get<long long>();
    u.checkin_count = j.at("checkin_count").get<long long>();
    u.guestbook_count = j.at("guestbook_count").get<long long>();
    u.app_count = j.at("app_count").get<long long>();
    u.page_follow_count = j.at("page_follow_count").get<long long>();
    u.comments_given = j.at("comments_given").get<long long>();
    return u;
}

} // namespace persona
