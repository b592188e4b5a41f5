#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "persona/common.hpp"
#include "persona/inventory.hpp"

namespace persona {

enum class ClassLabel { Low = 0, Mid = 1, High = 2 };

inline const char* class_label_name(ClassLabel c) {
    static const char* names[] = {"low", "mid", "high"};
    return names[static_cast<int>(c)];
}

inline ClassLabel class_label_from_name(const std::string& s) {
    if (s == "low") return ClassLabel::Low;
    if (s == "mid") return ClassLabel::Mid;
    if (s == "high") return ClassLabel::High;
    detail::fail("unknown class label: '" + s + "'");
}

inline const std::vector<std::string>& three_class_names() {
    static const std::vector<std::string> names = {"low", "mid", "high"};
    return names;
}

/// mean +/- sigma cutpoints for one trait dimension.
struct Thresholds {
    Dimension dimension = Dimension::E;
    double mean = 0.0;
    double sigma = 0.0;
    double alpha = 0.0;  // mean - sigma
    double beta = 0.0;   // mean + sigma
};

/// Population (divide-by-N) moments; alpha/beta derived exactly from them.
inline Thresholds compute_thresholds(const std::vector<double>& scores,
                                     Dimension dim = Dimension::E) {
    require(!scores.empty(), "compute_thresholds: empty score list");
    double sum = 0.0;
    for (double s : scores) sum += s;
    double mean = sum / static_cast<double>(scores.size());
    double sq = 0.0;
    for (double s : scores) sq += (s - mean) * (s - mean);
    double sigma = std::sqrt(sq / static_cast<double>(scores.size()));
    Thresholds t;
    t.dimension = dim;
    t.mean = mean;
    t.sigma = sigma;
    t.alpha = mean - sigma;
    t.beta = mean + sigma;
    return t;
}

/// low below alpha, high above beta, mid owns both boundaries.
inline ClassLabel bin_score(double score, const Thresholds& t) {
    if (score < t.alpha) return ClassLabel::Low;
    if (score > t.beta) return ClassLabel::High;
    return ClassLabel::Mid;
}

/// Drop mid-labeled samples, preserving order. T is whatever payload rides
/// along with each label (feature rows, ids, ...).
template <typename T>
std::pair<std::vector<ClassLabel>, std::vector<T>> filter_two_class(
    const std::vector<ClassLabel>& labels, const std::vector<T>& payload) {
    require(labels.size() == payload.size(), "filter_two_class: labels/payload length mismatch");
    std::pair<std::vector<ClassLabel>, std::vector<T>> out;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == ClassLabel::Mid) continue;
        out.first.push_back(labels[i]);
        out.second.push_back(payload[i]);
    }
    return out;
}

} // namespace persona
