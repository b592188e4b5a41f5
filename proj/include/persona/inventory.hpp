#pragma once

#include <array>
#include <string>
#include <vector>

#include "persona/common.hpp"

namespace persona {

enum class Dimension { E = 0, A = 1, C = 2, N = 3, O = 4 };

constexpr int kDimensionCount = 5;
constexpr int kInventoryItems = 44;

inline char dimension_letter(Dimension d) {
    static const char letters[] = {'E', 'A', 'C', 'N', 'O'};
    return letters[static_cast<int>(d)];
}

inline Dimension dimension_from_letter(char c) {
    switch (c) {
        case 'E': return Dimension::E;
        case 'A': return Dimension::A;
        case 'C': return Dimension::C;
        case 'N': return Dimension::N;
        case 'O': return Dimension::O;
        default: detail::fail(std::string("unknown personality dimension: '") + c + "'");
    }
}

inline const std::array<Dimension, 5>& all_dimensions() {
    static const std::array<Dimension, 5> dims = {Dimension::E, Dimension::A, Dimension::C,
                                                  Dimension::N, Dimension::O};
    return dims;
}

/// One scoring-key entry: which dimension item i contributes to, and
/// whether its answer is flipped (6 - answer) before averaging.
struct KeyEntry {
    Dimension dimension;
    bool reversed;
};

/// The public 44-item Big Five Inventory scoring key (John & Srivastava
/// instrument distributed by the Berkeley lab). Item numbers are 1-based;
/// key()[i-1] is the entry for item i. Dimension item counts:
/// E=8, A=9, C=9, N=8, O=10.
inline const std::array<KeyEntry, kInventoryItems>& scoring_key() {
    using D = Dimension;
    static const std::array<KeyEntry, kInventoryItems> key = {{
        {D::E, false},  // 1
        {D::A, true},   // 2
        {D::C, false},  // 3
        {D::N, false},  // 4
        {D::O, false},  // 5
        {D::E, true},   // 6
        {D::A, false},  // 7
        {D::C, true},   // 8
        {D::N, true},   // 9
        {D::O, false},  // 10
        {D::E, false},  // 11
        {D::A, true},   // 12
        {D::C, false},  // 13
        {D::N, false},  // 14
        {D::O, false},  // 15
        {D::E, false},  // 16
        {D::A, false},  // 17
        {D::C, true},   // 18
        {D::N, false},  // 19
        {D::O, false},  // 20
        {D::E, true},   // 21
        {D::A, false},  // 22
        {D::C, true},   // 23
        {D::N, true},   // 24
        {D::O, false},  // 25
        {D::E, false},  // 26
        {D::A, true},   // 27
        {D::C, false},  // 28
        {D::N, false},  // 29
        {D::O, false},  // 30
        {D::E, true},   // 31
        {D::A, false},  // 32
        {D::C, false},  // 33
        {D::N, true},   // 34
        {D::O, true},   // 35
        {D::E, false},  // 36
        {D::A, true},   // 37
        {D::C, false},  // 38
        {D::N, false},  // 39
        {D::O, false},  // 40
        {D::O, true},   // 41
        {D::A, false},  // 42
        {D::C, true},   // 43
        {D::O, false},  // 44
    }};
    return key;
}

inline int dimension_item_count(Dimension d) {
    static const int counts[] = {8, 9, 9, 8, 10};
    return counts[static_cast<int>(d)];
}

/// 44 Likert answers (1..5) from one participant.
struct InventoryResponse {
    std::string participant_id;
    std::vector<int> answers;

    void validate() const {
        require(answers.size() == kInventoryItems,
                "inventory '" + participant_id + "': expected 44 answers, got " +
                    std::to_string(answers.size()));
        for (size_t i = 0; i < answers.size(); ++i) {
            require(answers[i] >= 1 && answers[i] <= 5,
                    "inventory '" + participant_id + "': answer for item " +
                        std::to_string(i + 1) + " out of range 1..5: " +
                        std::to_string(answers[i]));
        }
    }
};

/// Five continuous trait scores, each the mean of its dimension's
/// reverse-corrected items, so each lies in [1,5].
struct PersonalityScore {
    std::array<double, kDimensionCount> values{};  // indexed by Dimension

    double operator[](Dimension d) const { return values[static_cast<size_t>(d)]; }
    double& operator[](Dimension d) { return values[static_cast<size_t>(d)]; }
    double e() const { return (*this)[Dimension::E]; }
    double a() const { return (*this)[Dimension::A]; }
    double c() const { return (*this)[Dimension::C]; }
    double n() const { return (*this)[Dimension::N]; }
    double o() const { return (*this)[Dimension::O]; }
};

inline PersonalityScore score_bfi(const InventoryResponse& resp) {
    resp.validate();
    const auto& key = scoring_key();
    std::array<double, kDimensionCount> sums{};
    std::array<int, kDimensionCount> counts{};
    for (int i = 0; i < kInventoryItems; ++i) {
        const KeyEntry& entry = key[static_cast<size_t>(i)];
        int a = resp.answers[static_cast<size_t>(i)];
        int corrected = entry.reversed ? 6 - a : a;
        sums[static_cast<size_t>(entry.dimension)] += corrected;
        counts[static_cast<size_t>(entry.dimension)] += 1;
    }
    PersonalityScore score;
    for (int d = 0; d < kDimensionCount; ++d)
        score.values[static_cast<size_t>(d)] =
            sums[static_cast<size_t>(d)] / counts[static_cast<size_t>(d)];
    return score;
}

} // namespace persona
