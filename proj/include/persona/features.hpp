#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "persona/common.hpp"
#include "persona/dataset.hpp"
#include "persona/emotion.hpp"
#include "persona/record.hpp"
#include "persona/text.hpp"

namespace persona {

enum class FeatureGroup { BasicInfo, SnsUsage, TimeRelated, EmotionRelated, TimeEmotionRelated };

inline const char* feature_group_name(FeatureGroup g) {
    switch (g) {
        case FeatureGroup::BasicInfo: return "basic_info";
        case FeatureGroup::SnsUsage: return "sns_usage";
        case FeatureGroup::TimeRelated: return "time_related";
        case FeatureGroup::EmotionRelated: return "emotion_related";
        default: return "time_emotion_related";
    }
}

struct FeatureDescriptor {
    std::string name;
    FeatureGroup group;
    FeatureKind kind;
    std::string unit;
    std::string definition;
    // "core" features carry their conventional RenRen names; "gap-fill"
    // slots round the usage group out to its fixed cardinality
    std::string provenance;
    std::vector<std::string> aliases;
};

constexpr int kFeatureCount = 41;
constexpr int kFeatureSchemaVersion = 1;

/// The ordered 41-slot feature schema. Group cardinalities are fixed at
/// 5/28/3/2/3; slot order is the on-disk CSV column order.
inline const std::vector<FeatureDescriptor>& feature_schema() {
    using G = FeatureGroup;
    using K = FeatureKind;
    static const std::vector<FeatureDescriptor> schema = {
        // --- basic info (5)
        {"gender", G::BasicInfo, K::Categorical, "m|f", "profile gender", "core", {}},
        {"age", G::BasicInfo, K::Numeric, "years", "reference year minus birth year", "core", {}},
        {"hometown", G::BasicInfo, K::Categorical, "region id",
         "province-level hometown code h0..h63", "core", {"hometown_code"}},
        {"zidou", G::BasicInfo, K::Numeric, "credits", "account virtual money balance", "core", {}},
        {"account_tenure_days", G::BasicInfo, K::Numeric, "days",
         "days since account registration", "gap-fill", {}},
        // --- sns usage (28)
        {"friend_count", G::SnsUsage, K::Numeric, "count", "number of friends", "core",
         {"friend"}},
        {"guestbook_count", G::SnsUsage, K::Numeric, "count", "guestbook entries", "core",
         {"guestbook"}},
        {"usage", G::SnsUsage, K::Numeric, "logins/week",
         "login events per week since registration", "core", {}},
        {"blog_emoticon_count", G::SnsUsage, K::Numeric, "count",
         "emoticons used across all blogs", "core", {"blogemoticon"}},
        {"zzstatus_proportion", G::SnsUsage, K::Numeric, "ratio",
         "republished statuses over all statuses", "core", {"zzstatus", "p(zzstatus)"}},
        {"self_comment_proportion", G::SnsUsage, K::Numeric, "ratio",
         "own comments on own blogs over all comments received", "core",
         {"selfcommentproportion", "selfcomment", "p(selfcomment)"}},
        {"friend_comment_proportion", G::SnsUsage, K::Numeric, "ratio",
         "others' comments on own blogs over all comments received", "core",
         {"friendcommentproportion", "friendcomment", "p(friendcomment)"}},
        {"blog_person_category", G::SnsUsage, K::Categorical, "I|you|it",
         "dominant grammatical person across blog texts (see also blog_i/you/it_ratio)", "core",
         {"BlogIYouIt", "blogiyouit"}},
        {"status_count", G::SnsUsage, K::Numeric, "count", "total statuses", "gap-fill", {}},
        {"blog_count", G::SnsUsage, K::Numeric, "count", "total blogs", "gap-fill", {}},
        {"photo_count", G::SnsUsage, K::Numeric, "count", "uploaded photos", "gap-fill", {}},
        {"album_count", G::SnsUsage, K::Numeric, "count", "photo albums", "gap-fill", {}},
        {"share_count", G::SnsUsage, K::Numeric, "count", "shared resources", "gap-fill", {}},
        {"gift_count", G::SnsUsage, K::Numeric, "count", "virtual gifts sent", "gap-fill", {}},
        {"checkin_count", G::SnsUsage, K::Numeric, "count", "check-ins", "gap-fill", {}},
        {"comment_received_count", G::SnsUsage, K::Numeric, "count",
         "comments received on blogs", "gap-fill", {}},
        {"comment_given_count", G::SnsUsage, K::Numeric, "count", "comments written on others'",
         "gap-fill", {}},
        {"status_emoticon_count", G::SnsUsage, K::Numeric, "count",
         "emoticon occurrences in status texts", "gap-fill", {}},
        {"avg_blog_length", G::SnsUsage, K::Numeric, "tokens", "mean blog text length",
         "gap-fill", {}},
        {"avg_status_length", G::SnsUsage, K::Numeric, "tokens", "mean status text length",
         "gap-fill", {}},
        {"avg_comments_per_blog", G::SnsUsage, K::Numeric, "count",
         "comments received per blog", "gap-fill", {}},
        {"blog_i_ratio", G::SnsUsage, K::Numeric, "ratio",
         "first-person pronouns over all pronouns in blogs", "gap-fill", {}},
        {"blog_you_ratio", G::SnsUsage, K::Numeric, "ratio",
         "second-person pronouns over all pronouns in blogs", "gap-fill", {}},
        {"blog_it_ratio", G::SnsUsage, K::Numeric, "ratio",
         "third-person pronouns over all pronouns in blogs", "gap-fill", {}},
        {"statuses_per_week", G::SnsUsage, K::Numeric, "count/week",
         "statuses per week of tenure", "gap-fill", {}},
        {"blogs_per_week", G::SnsUsage, K::Numeric, "count/week", "blogs per week of tenure",
         "gap-fill", {}},
        {"app_count", G::SnsUsage, K::Numeric, "count", "installed applications", "gap-fill", {}},
        {"page_follow_count", G::SnsUsage, K::Numeric, "count", "followed pages", "gap-fill", {}},
        // --- time-related (3)
        {"recent_status_count_30d", G::TimeRelated, K::Numeric, "count",
         "statuses in the 30 days before the reference date", "core", {"recentstatus"}},
        {"recent_blog_count_30d", G::TimeRelated, K::Numeric, "count",
         "blogs in the 30 days before the reference date", "core", {"recentblog"}},
        {"recent_comment_count_30d", G::TimeRelated, K::Numeric, "count",
         "comments received in the 30 days before the reference date", "gap-fill", {}},
        // --- emotion-related (2)
        {"blog_top_emotion", G::EmotionRelated, K::Categorical,
         "angry|funny|surprised|moving|none", "majority predicted emotion over all blogs",
         "core", {}},
        {"angry_blog_proportion", G::EmotionRelated, K::Numeric, "ratio",
         "blogs whose predicted reader emotion is angry, over all blogs", "core",
         {"angryblogproportion", "angryblog", "p(angryblog)"}},
        // --- time & emotion related (3)
        {"recent_status_top_emotion_ratio", G::TimeEmotionRelated, K::Numeric, "ratio",
         "share of the majority emotion among statuses of the last 30 days", "core",
         {"recentstatustopemotionratio"}},
        {"latest_status_emotion", G::TimeEmotionRelated, K::Categorical,
         "angry|funny|surprised|moving|none", "predicted emotion of the newest status", "core",
         {}},
        {"latest_emotion_length_days", G::TimeEmotionRelated, K::Numeric, "days",
         "days the newest status's emotion has been sustained", "core", {"emotionlength"}},
    };
    return schema;
}

inline std::array<int, 5> feature_group_sizes() {
    std::array<int, 5> sizes{};
    for (const auto& f : feature_schema()) ++sizes[static_cast<size_t>(f.group)];
    return sizes;
}

/// Schema index for a feature name or one of its historical aliases
/// (case-insensitive on the alias side); -1 when unknown.
inline int resolve_feature(const std::string& name) {
    auto lower = [](std::string s) {
        for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    const auto& schema = feature_schema();
    for (size_t i = 0; i < schema.size(); ++i)
        if (schema[i].name == name) return static_cast<int>(i);
    std::string n = lower(name);
    for (size_t i = 0; i < schema.size(); ++i) {
        for (const auto& alias : schema[i].aliases)
            if (lower(alias) == n) return static_cast<int>(i);
    }
    return -1;
}

inline std::vector<ColumnSpec> feature_columns() {
    std::vector<ColumnSpec> cols;
    for (const auto& f : feature_schema()) cols.push_back({f.name, f.kind});
    return cols;
}

using FeatureVector = std::vector<Value>;

constexpr long long kRecentWindowDays = 30;

/// Duration in days of the newest status's emotion: the span from the
/// earliest status of the maximal same-emotion suffix run to the reference
/// date. Statuses must be sorted by timestamp; empty input gives 0.
inline double emotion_length(const std::vector<Status>& statuses, const EmotionModel& model,
                             long long reference_date) {
    if (statuses.empty()) return 0.0;
    std::vector<EmotionLabel> labels;
    labels.reserve(statuses.size());
    for (const auto& s : statuses) labels.push_back(model.classify(s.text).label);
    size_t start = statuses.size() - 1;
    while (start > 0 && labels[start - 1] == labels.back()) --start;
    return static_cast<double>(reference_date - statuses[start].timestamp) /
           static_cast<double>(kSecondsPerDay);
}

/// Deterministic UserRecord -> 41-slot vector transformation. Every slot is
/// always populated; proportions with empty denominators are 0.
inline FeatureVector extract_features(const UserRecord& rec, long long reference_date,
                                      const EmotionModel& model) {
    rec.validate(reference_date);

    // statuses ordered by time (stable on equal timestamps)
    std::vector<Status> statuses = rec.statuses;
    std::stable_sort(statuses.begin(), statuses.end(),
                     [](const Status& a, const Status& b) { return a.timestamp < b.timestamp; });

    double tenure_days = static_cast<double>(reference_date - rec.registration_date) /
                         static_cast<double>(kSecondsPerDay);
    double tenure_weeks = tenure_days / 7.0;
    auto per_week = [&](double count) { return tenure_weeks > 0.0 ? count / tenure_weeks : 0.0; };
    auto ratio = [](double part, double whole) { return whole > 0.0 ? part / whole : 0.0; };

    long long n_statuses = static_cast<long long>(statuses.size());
    long long n_blogs = static_cast<long long>(rec.blogs.size());

    long long republished = 0;
    long long status_emoticons = 0;
    long long status_tokens = 0;
    for (const auto& s : statuses) {
        if (s.is_republished) ++republished;
        status_emoticons += count_emoticons(s.text);
        status_tokens += static_cast<long long>(tokenize(s.text).size());
    }

    long long blog_emoticons = 0;
    long long comments_received = 0;
    long long self_comments = 0;
    long long blog_tokens = 0;
    std::vector<std::string> blog_texts;
    for (const auto& b : rec.blogs) {
        blog_emoticons += b.emoticon_count;
        comments_received += static_cast<long long>(b.comments.size());
        for (const auto& c : b.comments)
            if (c.author_id == rec.user_id) ++self_comments;
        blog_tokens += static_cast<long long>(tokenize(b.text).size());
        blog_texts.push_back(b.text);
    }

    std::array<long long, 3> pronouns{0, 0, 0};
    for (const auto& t : blog_texts) {
        auto c = count_pronouns(tokenize(t));
        for (size_t i = 0; i < 3; ++i) pronouns[i] += c[i];
    }
    long long pronoun_total = pronouns[0] + pronouns[1] + pronouns[2];

    long long window_start = reference_date - kRecentWindowDays * kSecondsPerDay;
    auto in_window = [&](long long t) { return t >= window_start && t <= reference_date; };

    long long recent_statuses = 0;
    std::array<long long, kEmotionCount> recent_status_emotions{};
    for (const auto& s : statuses) {
        if (!in_window(s.timestamp)) continue;
        ++recent_statuses;
        ++recent_status_emotions[static_cast<size_t>(model.classify(s.text).label)];
    }
    long long recent_top_emotion = 0;
    for (long long c : recent_status_emotions) recent_top_emotion = std::max(recent_top_emotion, c);

    long long recent_blogs = 0;
    long long recent_comments = 0;
    std::array<long long, kEmotionCount> blog_emotions{};
    long long angry_blogs = 0;
    for (const auto& b : rec.blogs) {
        if (in_window(b.timestamp)) ++recent_blogs;
        for (const auto& c : b.comments)
            if (in_window(c.timestamp)) ++recent_comments;
        EmotionLabel label = model.classify(b.text).label;
        ++blog_emotions[static_cast<size_t>(label)];
        if (label == EmotionLabel::Angry) ++angry_blogs;
    }

    std::string blog_top = "none";
    if (n_blogs > 0) {
        int best = 0;
        for (int c = 1; c < kEmotionCount; ++c)
            if (blog_emotions[static_cast<size_t>(c)] > blog_emotions[static_cast<size_t>(best)])
                best = c;
        blog_top = emotion_name(static_cast<EmotionLabel>(best));
    }

    std::string latest_emotion = "none";
    if (!statuses.empty()) latest_emotion = emotion_name(model.classify(statuses.back().text).label);

    FeatureVector v;
    v.reserve(kFeatureCount);
    // basic info
    v.emplace_back(rec.gender);
    v.emplace_back(static_cast<double>(year_of_epoch(reference_date) - rec.birth_year));
    v.emplace_back("h" + std::to_string(rec.hometown_code));
    v.emplace_back(static_cast<double>(rec.zidou));
    v.emplace_back(tenure_days);
    // sns usage
    v.emplace_back(static_cast<double>(rec.friend_count));
    v.emplace_back(static_cast<double>(rec.guestbook_count));
    v.emplace_back(per_week(static_cast<double>(rec.login_events.size())));
    v.emplace_back(static_cast<double>(blog_emoticons));
    v.emplace_back(ratio(static_cast<double>(republished), static_cast<double>(n_statuses)));
    v.emplace_back(ratio(static_cast<double>(self_comments), static_cast<double>(comments_received)));
    v.emplace_back(ratio(static_cast<double>(comments_received - self_comments),
                         static_cast<double>(comments_received)));
    v.emplace_back(person_category_name(pronoun_profile(blog_texts)));
    v.emplace_back(static_cast<double>(n_statuses));
    v.emplace_back(static_cast<double>(n_blogs));
    v.emplace_back(static_cast<double>(rec.photo_count));
    v.emplace_back(static_cast<double>(rec.album_count));
    v.emplace_back(static_cast<double>(rec.share_count));
    v.emplace_back(static_cast<double>(rec.gift_count));
    v.emplace_back(static_cast<double>(rec.checkin_count));
    v.emplace_back(static_cast<double>(comments_received));
    v.emplace_back(static_cast<double>(rec.comments_given));
    v.emplace_back(static_cast<double>(status_emoticons));
    v.emplace_back(ratio(static_cast<double>(blog_tokens), static_cast<double>(n_blogs)));
    v.emplace_back(ratio(static_cast<double>(status_tokens), static_cast<double>(n_statuses)));
    v.emplace_back(ratio(static_cast<double>(comments_received), static_cast<double>(n_blogs)));
    v.emplace_back(ratio(static_cast<double>(pronouns[0]), static_cast<double>(pronoun_total)));
    v.emplace_back(ratio(static_cast<double>(pronouns[1]), static_cast<double>(pronoun_total)));
    v.emplace_back(ratio(static_cast<double>(pronouns[2]), static_cast<double>(pronoun_total)));
    v.emplace_back(per_week(static_cast<double>(n_statuses)));
    v.emplace_back(per_week(static_cast<double>(n_blogs)));
    v.emplace_back(static_cast<double>(rec.app_count));
    v.emplace_back(static_cast<double>(rec.page_follow_count));
    // time-related
    v.emplace_back(static_cast<double>(recent_statuses));
    v.emplace_back(static_cast<double>(recent_blogs));
    v.emplace_back(static_cast<double>(recent_comments));
    // emotion-related
    v.emplace_back(blog_top);
    v.emplace_back(ratio(static_cast<double>(angry_blogs), static_cast<double>(n_blogs)));
    // time & emotion
    v.emplace_back(ratio(static_cast<double>(recent_top_emotion), static_cast<double>(recent_statuses)));
    v.emplace_back(latest_emotion);
    v.emplace_back(emotion_length(statuses, model, reference_date));
    return v;
}

} // namespace persona
