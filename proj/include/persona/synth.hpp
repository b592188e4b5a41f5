#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "persona/common.hpp"
#include "persona/emotion.hpp"
#include "persona/features.hpp"
#include "persona/inventory.hpp"
#include "persona/record.hpp"
#include "persona/rng.hpp"
#include "persona/text.hpp"

namespace persona {

// --- toy emotion vocabulary ---------------------------------------------------
//
// Four small class-exclusive token pools plus a shared neutral pool. Both the
// default training corpus and generated cohort texts sample from these, so the
// trained classifier tags generated texts with its intended label nearly
// always and emotion-derived features stay faithful to the planted signal.

inline const std::vector<std::string>& emotion_vocabulary(EmotionLabel label) {
    static const std::vector<std::string> angry = {"furious", "rage",    "mad",  "annoyed",
                                                   "outrage", "unfair",  "grr",  "hmph"};
    static const std::vector<std::string> funny = {"lol",    "haha",  "hilarious", "joke",
                                                   "giggle", "prank", "witty",     "comic"};
    static const std::vector<std::string> surprised = {"wow",          "sudden", "unexpected",
                                                       "astonished",   "shock",  "gasp",
                                                       "unbelievable", "startled"};
    static const std::vector<std::string> moving = {"touching", "tears",   "heartwarming",
                                                    "grateful", "warm",    "sincere",
                                                    "hug",      "cherish"};
    switch (label) {
        case EmotionLabel::Angry: return angry;
        case EmotionLabel::Funny: return funny;
        case EmotionLabel::Surprised: return surprised;
        default: return moving;
    }
}

inline const std::vector<std::string>& neutral_vocabulary() {
    static const std::vector<std::string> neutral = {"today", "friend",  "time",    "campus",
                                                     "dinner", "study",  "weather", "weekend",
                                                     "really", "just"};
    return neutral;
}

inline std::set<std::string> default_emotion_lexicon() {
    std::set<std::string> lex;
    for (int c = 0; c < kEmotionCount; ++c)
        for (const auto& t : emotion_vocabulary(static_cast<EmotionLabel>(c))) lex.insert(t);
    return lex;
}

namespace detail {

inline const std::vector<std::string>& pronoun_pool(PersonCategory c) {
    static const std::vector<std::string> first = {"i", "my", "we", "me"};
    static const std::vector<std::string> second = {"you", "your"};
    static const std::vector<std::string> third = {"it", "he", "she", "they"};
    switch (c) {
        case PersonCategory::I: return first;
        case PersonCategory::You: return second;
        default: return third;
    }
}

inline const std::string& pick(const std::vector<std::string>& pool, Rng& rng) {
    return pool[static_cast<size_t>(rng.uniform_int(0, static_cast<long long>(pool.size()) - 1))];
}

} // namespace detail

/// Token-bag text with a dominant emotion vocabulary; optionally salted with
/// pronouns of a preferred person category and an emoticon.
inline std::string sample_text(EmotionLabel label, Rng& rng, int min_tokens, int max_tokens,
                               const PersonCategory* pronoun_pref = nullptr,
                               double emoticon_prob = 0.0) {
    int k = static_cast<int>(rng.uniform_int(min_tokens, max_tokens));
    std::string out;
    for (int i = 0; i < k; ++i) {
        const auto& pool =
            rng.bernoulli(0.72) ? emotion_vocabulary(label) : neutral_vocabulary();
        if (!out.empty()) out += ' ';
        out += detail::pick(pool, rng);
    }
    if (pronoun_pref != nullptr) {
        int pronouns = static_cast<int>(rng.uniform_int(1, 3));
        for (int i = 0; i < pronouns; ++i) {
            PersonCategory cat = *pronoun_pref;
            if (!rng.bernoulli(0.7))
                cat = static_cast<PersonCategory>(rng.uniform_int(0, 2));
            out += ' ';
            out += detail::pick(detail::pronoun_pool(cat), rng);
        }
    }
    if (emoticon_prob > 0.0 && rng.bernoulli(emoticon_prob)) {
        const auto& pats = emoticon_patterns();
        out += ' ';
        out += pats[static_cast<size_t>(rng.uniform_int(0, static_cast<long long>(pats.size()) - 1))];
    }
    return out;
}

/// Balanced labeled corpus for training the toy emotion classifier.
inline std::vector<LabeledText> make_toy_emotion_corpus(int per_class = 30,
                                                        std::uint64_t seed = 7) {
    require(per_class >= 1, "toy corpus: per_class must be >= 1");
    std::vector<LabeledText> corpus;
    Rng rng(seed ^ 0xface7e57ull);
    for (int c = 0; c < kEmotionCount; ++c) {
        for (int i = 0; i < per_class; ++i) {
            EmotionLabel label = static_cast<EmotionLabel>(c);
            corpus.push_back({sample_text(label, rng, 6, 12), label});
        }
    }
    return corpus;
}

// --- cohort configuration ------------------------------------------------------

struct DimensionMoments {
    double mean = 3.0;
    double sigma = 0.6;
};

struct LinkSpec {
    Dimension dimension = Dimension::E;
    std::string feature;
    int direction = 1;      // +1 or -1
    double strength = 0.5;  // effect size on the log/logit scale per latent z
};

/// Table-2-shaped defaults: per-dimension score moments plus the planted
/// monotone trait->behavior links the pipeline is expected to recover.
struct CohortConfig {
    int n = 209;
    std::uint64_t seed = 42;
    long long reference_date = epoch_seconds(2012, 3, 1);
    std::array<DimensionMoments, kDimensionCount> moments = {{
        {2.95, 0.64},  // E
        {3.71, 0.47},  // A
        {3.29, 0.55},  // C
        {3.02, 0.61},  // N
        {3.39, 0.61},  // O
    }};
    std::vector<LinkSpec> links = default_links();
    double noise_scale = 1.0;      // 0 = deterministic link means, 1 = full sampling noise
    double inventory_jitter = 0.55;

    static std::vector<LinkSpec> default_links() {
        return {
            {Dimension::E, "zzstatus_proportion", +1, 0.9},
            {Dimension::N, "angry_blog_proportion", +1, 1.35},
            {Dimension::O, "usage", +1, 0.45},
            {Dimension::O, "recent_status_count_30d", +1, 0.5},
            {Dimension::A, "zidou", +1, 0.5},
            {Dimension::A, "blog_emoticon_count", +1, 0.5},
            {Dimension::C, "guestbook_count", +1, 0.6},
        };
    }

    void validate() const {
        require(n >= 1, "cohort config: n must be >= 1");
        require(noise_scale >= 0.0 && noise_scale <= 1.0, "cohort config: noise_scale in [0,1]");
        require(inventory_jitter >= 0.0, "cohort config: inventory_jitter must be >= 0");
        for (const auto& link : links) {
            require(resolve_feature(link.feature) >= 0,
                    "cohort config: link references unknown feature '" + link.feature + "'");
            require(link.strength >= 0.0, "cohort config: link strength must be >= 0");
            require(link.direction == 1 || link.direction == -1,
                    "cohort config: link direction must be +1 or -1");
        }
        for (const auto& m : moments) {
            require(m.sigma >= 0.0, "cohort config: sigma must be >= 0");
            require(m.mean >= 1.0 && m.mean <= 5.0, "cohort config: mean must be in [1,5]");
        }
    }
};

struct SyntheticParticipant {
    PersonalityScore latent;
    InventoryResponse inventory;
    UserRecord record;
};

namespace detail {

/// Sum of planted effects on one feature: sigma-standardized latent score
/// times signed strength, over every link that targets the feature.
inline double link_effect(const CohortConfig& cfg, const PersonalityScore& latent,
                          const std::string& feature) {
    double effect = 0.0;
    for (const auto& link : cfg.links) {
        if (link.feature != feature) continue;
        const auto& m = cfg.moments[static_cast<size_t>(link.dimension)];
        double z = m.sigma > 0.0 ? (latent[link.dimension] - m.mean) / m.sigma : 0.0;
        effect += link.direction * link.strength * z;
    }
    return effect;
}

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Poisson draw blended toward its mean by (1 - noise_scale); noise 0 is the
/// deterministic rounded rate.
inline long long blend_count(Rng& rng, double rate, double noise_scale) {
    if (rate < 0.0) rate = 0.0;
    if (noise_scale <= 0.0) return std::llround(rate);
    double sampled = static_cast<double>(rng.poisson(rate));
    return std::llround(noise_scale * sampled + (1.0 - noise_scale) * rate);
}

inline InventoryResponse make_inventory(const std::string& id, const PersonalityScore& latent,
                                        double jitter, Rng& rng) {
    const auto& key = scoring_key();
    InventoryResponse resp;
    resp.participant_id = id;
    resp.answers.resize(kInventoryItems);
    for (int i = 0; i < kInventoryItems; ++i) {
        const KeyEntry& entry = key[static_cast<size_t>(i)];
        double ideal = latent[entry.dimension];
        if (entry.reversed) ideal = 6.0 - ideal;
        double noisy = ideal + rng.normal(0.0, jitter);
        resp.answers[static_cast<size_t>(i)] =
            static_cast<int>(std::clamp<long long>(std::llround(noisy), 1, 5));
    }

    // greedy repair: nudge answers until each dimension mean sits within 0.3
    // of the latent score (always reachable, means are multiples of 1/k)
    for (Dimension d : all_dimensions()) {
        for (int guard = 0; guard < 64; ++guard) {
            double sum = 0.0;
            int k = 0;
            for (int i = 0; i < kInventoryItems; ++i) {
                if (key[static_cast<size_t>(i)].dimension != d) continue;
                int a = resp.answers[static_cast<size_t>(i)];
                sum += key[static_cast<size_t>(i)].reversed ? 6 - a : a;
                ++k;
            }
            double mean = sum / k;
            double target = latent[d];
            if (std::abs(mean - target) <= 0.3) break;
            int step = mean < target ? 1 : -1;
            bool moved = false;
            for (int i = 0; i < kInventoryItems && !moved; ++i) {
                if (key[static_cast<size_t>(i)].dimension != d) continue;
                bool rev = key[static_cast<size_t>(i)].reversed;
                int delta = rev ? -step : step;
                int next = resp.answers[static_cast<size_t>(i)] + delta;
                if (next >= 1 && next <= 5) {
                    resp.answers[static_cast<size_t>(i)] = next;
                    moved = true;
                }
            }
            if (!moved) break;  // saturated; target is at the clamp boundary
        }
    }
    return resp;
}

} // namespace detail

/// Deterministically generate one participant from the stream derived from
/// (seed, index).
inline SyntheticParticipant generate_participant(const CohortConfig& cfg, int index) {
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(index));
    SyntheticParticipant p;

    // latent scores: uniform with the configured mean/sigma per dimension,
    // clamped to the valid score range
    for (Dimension d : all_dimensions()) {
        const auto& m = cfg.moments[static_cast<size_t>(d)];
        double half = std::sqrt(3.0) * m.sigma;
        p.latent[d] = std::clamp(rng.uniform(m.mean - half, m.mean + half), 1.0, 5.0);
    }

    std::string id = "p" + std::to_string(index);
    p.inventory = detail::make_inventory(id, p.latent, cfg.inventory_jitter, rng);

    UserRecord& u = p.record;
    u.user_id = id;
    u.gender = rng.bernoulli(137.0 / 209.0) ? "m" : "f";
    int ref_year = year_of_epoch(cfg.reference_date);
    u.birth_year = ref_year - static_cast<int>(rng.uniform_int(19, 29));
    u.hometown_code = static_cast<int>(rng.uniform_int(0, 30));
    long long tenure_days = rng.uniform_int(400, 1800);
    u.registration_date = cfg.reference_date - tenure_days * kSecondsPerDay;
    u.friend_count = 100 + detail::blend_count(rng, 80.0, cfg.noise_scale);

    double ns = cfg.noise_scale;
    auto effect = [&](const char* feature) { return detail::link_effect(cfg, p.latent, feature); };

    u.zidou = detail::blend_count(rng, 200.0 * std::exp(effect("zidou")), ns);
    u.guestbook_count = detail::blend_count(rng, 20.0 * std::exp(effect("guestbook_count")), ns);
    u.photo_count = detail::blend_count(rng, 25.0 * std::exp(effect("photo_count")), ns);
    u.album_count = detail::blend_count(rng, 4.0 * std::exp(effect("album_count")), ns);
    u.share_count = detail::blend_count(rng, 12.0 * std::exp(effect("share_count")), ns);
    u.gift_count = detail::blend_count(rng, 6.0 * std::exp(effect("gift_count")), ns);
    u.checkin_count = detail::blend_count(rng, 8.0 * std::exp(effect("checkin_count")), ns);
    u.app_count = detail::blend_count(rng, 6.0 * std::exp(effect("app_count")), ns);
    u.page_follow_count =
        detail::blend_count(rng, 12.0 * std::exp(effect("page_follow_count")), ns);
    u.comments_given = detail::blend_count(rng, 40.0 * std::exp(effect("comment_given_count")), ns);

    // logins drive the weekly-usage feature
    double weeks = static_cast<double>(tenure_days) / 7.0;
    double login_rate = 3.0 * std::exp(effect("usage"));
    long long logins = detail::blend_count(rng, login_rate * weeks, ns);
    u.login_events.resize(static_cast<size_t>(logins));
    for (auto& t : u.login_events)
        t = cfg.reference_date - rng.uniform_int(0, tenure_days * kSecondsPerDay);

    // statuses: an older bulk plus a recent-window block tied to the
    // recent_status_count_30d link
    long long window = kRecentWindowDays * kSecondsPerDay;
    long long old_statuses = detail::blend_count(rng, 50.0, ns);
    long long recent_statuses =
        detail::blend_count(rng, 5.0 * std::exp(effect("recent_status_count_30d")), ns);
    double p_republish = detail::logistic(-0.8 + effect("zzstatus_proportion"));
    PersonCategory pronoun_pref = static_cast<PersonCategory>(
        rng.bernoulli(0.5) ? 0 : (rng.bernoulli(0.4) ? 1 : 2));

    static const double kStatusEmotionCdf[kEmotionCount] = {0.20, 0.55, 0.75, 1.0};
    auto draw_status_emotion = [&]() {
        double u01 = rng.uniform01();
        for (int c = 0; c < kEmotionCount; ++c)
            if (u01 <= kStatusEmotionCdf[c]) return static_cast<EmotionLabel>(c);
        return EmotionLabel::Moving;
    };

    long long total_statuses = old_statuses + recent_statuses;
    long long deterministic_republished = std::llround(
        p_republish * static_cast<double>(total_statuses));
    for (long long i = 0; i < total_statuses; ++i) {
        Status s;
        bool recent = i >= old_statuses;
        long long off_lo = recent ? 0 : window + 1;
        long long off_hi = recent ? window - 1 : tenure_days * kSecondsPerDay - 1;
        s.timestamp = cfg.reference_date - rng.uniform_int(off_lo, off_hi);
        s.text = sample_text(draw_status_emotion(), rng, 5, 10, nullptr, 0.25);
        s.is_republished = ns > 0.0 ? rng.bernoulli(p_republish) : i < deterministic_republished;
        u.statuses.push_back(std::move(s));
    }

    // blogs: reader emotion tied to the angry_blog_proportion link,
    // emoticons to its own link
    long long blogs = detail::blend_count(rng, 16.0, ns);
    double p_angry = detail::logistic(-1.0 + effect("angry_blog_proportion"));
    double emoticon_rate = 2.0 * std::exp(effect("blog_emoticon_count"));
    long long deterministic_angry = std::llround(p_angry * static_cast<double>(blogs));
    for (long long i = 0; i < blogs; ++i) {
        Blog b;
        b.timestamp = cfg.reference_date - rng.uniform_int(0, tenure_days * kSecondsPerDay - 1);
        bool angry = ns > 0.0 ? rng.bernoulli(p_angry) : i < deterministic_angry;
        EmotionLabel label =
            angry ? EmotionLabel::Angry
                  : static_cast<EmotionLabel>(rng.uniform_int(1, kEmotionCount - 1));
        b.text = sample_text(label, rng, 10, 16, &pronoun_pref, 0.0);
        b.emoticon_count = detail::blend_count(rng, emoticon_rate, ns);
        long long comments = detail::blend_count(rng, 3.0, ns);
        for (long long c = 0; c < comments; ++c) {
            BlogComment bc;
            bc.author_id = rng.bernoulli(0.25)
                               ? u.user_id
                               : "u" + std::to_string(rng.uniform_int(1, 99999));
            bc.timestamp = b.timestamp + rng.uniform_int(0, cfg.reference_date - b.timestamp);
            b.comments.push_back(std::move(bc));
        }
        u.blogs.push_back(std::move(b));
    }

    return p;
}

inline std::vector<SyntheticParticipant> generate_cohort(const CohortConfig& cfg) {
    cfg.validate();
    std::vector<SyntheticParticipant> cohort;
    cohort.reserve(static_cast<size_t>(cfg.n));
    for (int i = 0; i < cfg.n; ++i) cohort.push_back(generate_participant(cfg, i));
    return cohort;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size() && !x.empty(), "pearson: length mismatch or empty");
    double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

struct CohortReport {
    int n = 0;
    std::array<DimensionMoments, kDimensionCount> score_moments{};
    struct LinkStat {
        LinkSpec link;
        double pearson = 0.0;
    };
    std::vector<LinkStat> links;
};

/// Latent-score moments plus the realized correlation of every planted
/// (dimension, feature) pair, measured through the real feature extractor.
inline CohortReport cohort_report(const std::vector<SyntheticParticipant>& cohort,
                                  const CohortConfig& cfg, const EmotionModel& model) {
    require(!cohort.empty(), "cohort_report: empty cohort");
    CohortReport report;
    report.n = static_cast<int>(cohort.size());
    for (Dimension d : all_dimensions()) {
        std::vector<double> scores;
        scores.reserve(cohort.size());
        for (const auto& p : cohort) scores.push_back(p.latent[d]);
        double mean = 0.0;
        for (double s : scores) mean += s;
        mean /= static_cast<double>(scores.size());
        double sq = 0.0;
        for (double s : scores) sq += (s - mean) * (s - mean);
        report.score_moments[static_cast<size_t>(d)] = {
            mean, std::sqrt(sq / static_cast<double>(scores.size()))};
    }

    std::vector<FeatureVector> rows;
    rows.reserve(cohort.size());
    for (const auto& p : cohort)
        rows.push_back(extract_features(p.record, cfg.reference_date, model));
    for (const auto& link : cfg.links) {
        int col = resolve_feature(link.feature);
        require(col >= 0, "cohort_report: unknown feature '" + link.feature + "'");
        require(feature_schema()[static_cast<size_t>(col)].kind == FeatureKind::Numeric,
                "cohort_report: cannot correlate categorical feature '" + link.feature + "'");
        std::vector<double> xs, ys;
        for (size_t i = 0; i < cohort.size(); ++i) {
            xs.push_back(cohort[i].latent[link.dimension]);
            ys.push_back(num(rows[i][static_cast<size_t>(col)]));
        }
        report.links.push_back({link, pearson(xs, ys)});
    }
    return report;
}

inline nlohmann::ordered_json cohort_report_to_json(const CohortReport& report) {
    nlohmann::ordered_json j;
    j["n"] = report.n;
    nlohmann::ordered_json dims = nlohmann::ordered_json::object();
    for (Dimension d : all_dimensions()) {
        const auto& m = report.score_moments[static_cast<size_t>(d)];
        dims[std::string(1, dimension_letter(d))] = {{"mean", m.mean}, {"sigma", m.sigma}};
    }
    j["score_moments"] = dims;
    nlohmann::ordered_json links = nlohmann::ordered_json::array();
    for (const auto& ls : report.links) {
        links.push_back({{"dimension", std::string(1, dimension_letter(ls.link.dimension))},
                         {"feature", ls.link.feature},
                         {"direction", ls.link.direction},
                         {"strength", ls.link.strength},
                         {"pearson", ls.pearson}});
    }
    j["links"] = links;
    return j;
}

// --- config file -----------------------------------------------------------

inline CohortConfig cohort_config_from_json(const nlohmann::json& j) {
    CohortConfig cfg;
    cfg.n = j.value("n", cfg.n);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("reference_date"))
        cfg.reference_date = parse_date(j.at("reference_date").get<std::string>());
    if (j.contains("dimensions")) {
        for (const auto& [letter, m] : j.at("dimensions").items()) {
            require(letter.size() == 1, "cohort config: bad dimension '" + letter + "'");
            Dimension d = dimension_from_letter(letter[0]);
            cfg.moments[static_cast<size_t>(d)] = {m.at("mean").get<double>(),
                                                   m.at("sigma").get<double>()};
        }
    }
    if (j.contains("links")) {
        cfg.links.clear();
        for (const auto& l : j.at("links")) {
            LinkSpec spec;
            std::string letter = l.at("dimension").get<std::string>();
            require(letter.size() == 1, "cohort config: bad link dimension '" + letter + "'");
            spec.dimension = dimension_from_letter(letter[0]);
            spec.feature = l.at("feature").get<std::string>();
            spec.direction = l.value("direction", 1);
            spec.strength = l.at("strength").get<double>();
            cfg.links.push_back(std::move(spec));
        }
    }
    cfg.noise_scale = j.value("noise_scale", cfg.noise_scale);
    cfg.inventory_jitter = j.value("inventory_jitter", cfg.inventory_jitter);
    cfg.validate();
    return cfg;
}

} // namespace persona
