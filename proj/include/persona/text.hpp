#pragma once

#include <array>
#include <string>
#include <unordered_set>
#include <vector>

namespace persona {

/// Whitespace/punctuation tokenizer with ASCII lowercasing, no stemming.
/// Bytes >= 0x80 are kept as token characters so multibyte text splits on
/// the same whitespace/punctuation boundaries instead of being destroyed.
inline std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        bool keep = std::isalnum(c) != 0 || c >= 0x80 || c == '_';
        if (keep) {
            cur.push_back(static_cast<char>(std::isupper(c) ? std::tolower(c) : c));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

enum class PersonCategory { I = 0, You = 1, It = 2 };

inline const char* person_category_name(PersonCategory c) {
    switch (c) {
        case PersonCategory::I: return "I";
        case PersonCategory::You: return "you";
        default: return "it";
    }
}

namespace detail {

inline const std::unordered_set<std::string>& first_person() {
    static const std::unordered_set<std::string> s = {"i",  "me",  "my",   "mine",
                                                      "we", "us",  "our",  "ours",
                                                      "myself", "ourselves"};
    return s;
}

inline const std::unordered_set<std::string>& second_person() {
    static const std::unordered_set<std::string> s = {"you", "your", "yours", "yourself",
                                                      "yourselves"};
    return s;
}

// third person covers "he", "she" and "they" alongside "it"
inline const std::unordered_set<std::string>& third_person() {
    static const std::unordered_set<std::string> s = {
        "it", "its", "itself", "he",   "him",  "his",   "she",  "her",
        "hers", "they", "them", "their", "theirs", "himself", "herself", "themselves"};
    return s;
}

} // namespace detail

/// Pronoun tallies per person category over already-tokenized text.
inline std::array<long long, 3> count_pronouns(const std::vector<std::string>& tokens) {
    std::array<long long, 3> counts{0, 0, 0};
    for (const auto& t : tokens) {
        if (detail::first_person().count(t))
            ++counts[0];
        else if (detail::second_person().count(t))
            ++counts[1];
        else if (detail::third_person().count(t))
            ++counts[2];
    }
    return counts;
}

/// Dominant person category across texts; ties resolve I < you < it and
/// pronoun-free input defaults to I.
inline PersonCategory pronoun_profile(const std::vector<std::string>& texts) {
    std::array<long long, 3> total{0, 0, 0};
    for (const auto& text : texts) {
        auto c = count_pronouns(tokenize(text));
        for (int i = 0; i < 3; ++i) total[static_cast<size_t>(i)] += c[static_cast<size_t>(i)];
    }
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (total[static_cast<size_t>(i)] > total[static_cast<size_t>(best)]) best = i;
    return static_cast<PersonCategory>(best);
}

/// Emoticon substrings counted over raw (untokenized) text.
inline const std::vector<std::string>& emoticon_patterns() {
    static const std::vector<std::string> pats = {":-)", ":-(", ":)", ":(", ":D",
                                                  ";)",  ":P",  "T_T", "^_^", "orz"};
    return pats;
}

inline long long count_emoticons(const std::string& text) {
    long long total = 0;
    for (const auto& pat : emoticon_patterns()) {
        size_t pos = 0;
        while ((pos = text.find(pat, pos)) != std::string::npos) {
            ++total;
            pos += pat.size();
        }
    }
    return total;
}

} // namespace persona
