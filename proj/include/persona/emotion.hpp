#pragma once

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "persona/common.hpp"
#include "persona/text.hpp"

namespace persona {

/// Reader-emotion categories, in fixed tie-break order.
enum class EmotionLabel { Angry = 0, Funny = 1, Surprised = 2, Moving = 3 };

constexpr int kEmotionCount = 4;

inline const char* emotion_name(EmotionLabel label) {
    static const char* names[] = {"angry", "funny", "surprised", "moving"};
    return names[static_cast<int>(label)];
}

inline EmotionLabel emotion_from_name(const std::string& name) {
    for (int i = 0; i < kEmotionCount; ++i)
        if (name == emotion_name(static_cast<EmotionLabel>(i))) return static_cast<EmotionLabel>(i);
    detail::fail("unknown emotion label: '" + name + "'");
}

struct LabeledText {
    std::string text;
    EmotionLabel label;
};

/// Multinomial Naive Bayes over tokens, with occurrences of emotion-lexicon
/// tokens weighted up by a boost factor >= 1 at training time.
///
/// Token probabilities use additive smoothing over the training vocabulary;
/// tokens unseen in training are ignored at classification time.
class EmotionModel {
public:
    EmotionModel() = default;

    static EmotionModel train(const std::vector<LabeledText>& corpus,
                              const std::set<std::string>& lexicon, double boost,
                              double smoothing) {
        require(!corpus.empty(), "emotion training corpus is empty");
        require(boost >= 1.0, "emotion boost factor must be >= 1");
        require(smoothing > 0.0, "emotion smoothing pseudo-count must be > 0");

        EmotionModel m;
        m.boost_ = boost;
        m.smoothing_ = smoothing;
        m.lexicon_.assign(lexicon.begin(), lexicon.end());

        std::array<long long, kEmotionCount> doc_counts{};
        for (const auto& doc : corpus) {
            int cls = static_cast<int>(doc.label);
            ++doc_counts[static_cast<size_t>(cls)];
            for (const auto& token : tokenize(doc.text)) {
                double w = lexicon.count(token) ? boost : 1.0;
                m.token_counts_[token][static_cast<size_t>(cls)] += w;
                m.class_totals_[static_cast<size_t>(cls)] += w;
            }
        }
        for (int c = 0; c < kEmotionCount; ++c)
            m.priors_[static_cast<size_t>(c)] =
                static_cast<double>(doc_counts[static_cast<size_t>(c)]) /
                static_cast<double>(corpus.size());
        return m;
    }

    /// P(token | class) with additive smoothing. Zero for tokens outside the
    /// training vocabulary.
    double token_probability(const std::string& token, EmotionLabel cls) const {
        auto it = token_counts_.find(token);
        if (it == token_counts_.end()) return 0.0;
        size_t c = static_cast<size_t>(cls);
        double denom = class_totals_[c] + smoothing_ * static_cast<double>(token_counts_.size());
        return (it->second[c] + smoothing_) / denom;
    }

    double prior(EmotionLabel cls) const { return priors_[static_cast<size_t>(cls)]; }
    double boost() const { return boost_; }
    double smoothing() const { return smoothing_; }
    size_t vocabulary_size() const { return token_counts_.size(); }
    const std::vector<std::string>& lexicon() const { return lexicon_; }

    struct Classification {
        EmotionLabel label;
        std::array<double, kEmotionCount> posterior;
    };

    /// Posterior over the four labels; argmax with ties resolved in label
    /// order. Empty or fully-unseen text falls back to the priors.
    Classification classify(const std::string& text) const {
        return classify_tokens(tokenize(text));
    }

    Classification classify_tokens(const std::vector<std::string>& tokens) const {
        std::array<double, kEmotionCount> logp{};
        for (int c = 0; c < kEmotionCount; ++c) {
            double p = priors_[static_cast<size_t>(c)];
            logp[static_cast<size_t>(c)] = p > 0.0 ? std::log(p) : -1e300;
        }
        double vocab = static_cast<double>(token_counts_.size());
        for (const auto& token : tokens) {
            auto it = token_counts_.find(token);
            if (it == token_counts_.end()) continue;  // unseen: no evidence
            for (int c = 0; c < kEmotionCount; ++c) {
                size_t ci = static_cast<size_t>(c);
                double denom = class_totals_[ci] + smoothing_ * vocab;
                logp[ci] += std::log((it->second[ci] + smoothing_) / denom);
            }
        }
        double maxlog = logp[0];
        for (int c = 1; c < kEmotionCount; ++c) maxlog = std::max(maxlog, logp[static_cast<size_t>(c)]);
        std::array<double, kEmotionCount> post{};
        double total = 0.0;
        for (int c = 0; c < kEmotionCount; ++c) {
            post[static_cast<size_t>(c)] = std::exp(logp[static_cast<size_t>(c)] - maxlog);
            total += post[static_cast<size_t>(c)];
        }
        int best = 0;
        for (int c = 0; c < kEmotionCount; ++c) {
            post[static_cast<size_t>(c)] /= total;
            if (post[static_cast<size_t>(c)] > post[static_cast<size_t>(best)]) best = c;
        }
        return {static_cast<EmotionLabel>(best), post};
    }

    std::array<long long, kEmotionCount> histogram(const std::vector<std::string>& texts) const {
        std::array<long long, kEmotionCount> counts{};
        for (const auto& t : texts) ++counts[static_cast<size_t>(classify(t).label)];
        return counts;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["format"] = "persona-emotion";
        j["version"] = 1;
        j["labels"] = {"angry", "funny", "surprised", "moving"};
        j["boost"] = boost_;
        j["smoothing"] = smoothing_;
        std::string lex_blob;
        for (const auto& t : lexicon_) {
            lex_blob += t;
            lex_blob += '\n';
        }
        j["lexicon_hash"] = hex64(fnv1a(lex_blob));
        j["lexicon"] = lexicon_;
        j["priors"] = priors_;
        j["class_totals"] = class_totals_;
        nlohmann::ordered_json tokens = nlohmann::ordered_json::object();
        for (const auto& [token, counts] : token_counts_) tokens[token] = counts;
        j["tokens"] = tokens;
        return j;
    }

    static EmotionModel from_json(const nlohmann::json& j) {
        require(j.value("format", "") == "persona-emotion", "not an emotion model file");
        EmotionModel m;
        m.boost_ = j.at("boost").get<double>();
        m.smoothing_ = j.at("smoothing").get<double>();
        m.lexicon_ = j.at("lexicon").get<std::vector<std::string>>();
        auto priors = j.at("priors").get<std::vector<double>>();
        auto totals = j.at("class_totals").get<std::vector<double>>();
        require(priors.size() == kEmotionCount && totals.size() == kEmotionCount,
                "emotion model: wrong class count");
        for (int c = 0; c < kEmotionCount; ++c) {
            m.priors_[static_cast<size_t>(c)] = priors[static_cast<size_t>(c)];
            m.class_totals_[static_cast<size_t>(c)] = totals[static_cast<size_t>(c)];
        }
        for (const auto& [token, counts] : j.at("tokens").items()) {
            auto v = counts.get<std::vector<double>>();
            require(v.size() == kEmotionCount, "emotion model: bad token row for '" + token + "'");
            auto& row = m.token_counts_[token];
            for (int c = 0; c < kEmotionCount; ++c) row[static_cast<size_t>(c)] = v[static_cast<size_t>(c)];
        }
        return m;
    }

private:
    // std::map keeps vocabulary iteration and serialization order stable
    std::map<std::string, std::array<double, kEmotionCount>> token_counts_;
    std::array<double, kEmotionCount> class_totals_{};
    std::array<double, kEmotionCount> priors_{};
    std::vector<std::string> lexicon_;  // sorted
    double boost_ = 1.0;
    double smoothing_ = 1.0;
};

} // namespace persona
