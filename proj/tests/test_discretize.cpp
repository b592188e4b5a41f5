#include <doctest.h>

#include <vector>

#include "persona/discretize.hpp"
#include "persona/rng.hpp"

using namespace persona;

namespace {

// scores with exact mean 2.95 and population sigma 0.64
std::vector<double> table_shaped_scores() {
    std::vector<double> out;
    for (int i = 0; i < 6; ++i) {
        out.push_back(2.95 - 0.64);
        out.push_back(2.95 + 0.64);
    }
    return out;
}

} // namespace

TEST_CASE("thresholds from mean 2.95 / sigma 0.64 are 2.31 and 3.59 at two decimals") {
    auto t = compute_thresholds(table_shaped_scores(), Dimension::E);
    CHECK(t.mean == doctest::Approx(2.95).epsilon(1e-12));
    CHECK(t.sigma == doctest::Approx(0.64).epsilon(1e-12));
    CHECK(std::round(t.alpha * 100.0) / 100.0 == doctest::Approx(2.31).epsilon(1e-12));
    CHECK(std::round(t.beta * 100.0) / 100.0 == doctest::Approx(3.59).epsilon(1e-12));
}

TEST_CASE("constant scores give sigma 0 and alpha = beta") {
    auto t = compute_thresholds(std::vector<double>(9, 3.2));
    CHECK(t.sigma == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(t.alpha == doctest::Approx(3.2));
    CHECK(t.beta == doctest::Approx(3.2));
    CHECK(bin_score(3.2, t) == ClassLabel::Mid);

    // an exactly representable constant gives sigma 0 bitwise, and the
    // zero-variance case labels everything mid
    auto exact = compute_thresholds(std::vector<double>(7, 3.25));
    CHECK(exact.sigma == 0.0);
    CHECK(exact.alpha == exact.beta);
    CHECK(bin_score(3.25, exact) == ClassLabel::Mid);
}

TEST_CASE("12-element fixture moments match the direct summation oracle") {
    std::vector<double> xs = {1.5, 2.0, 2.5, 2.5, 3.0, 3.0, 3.5, 3.5, 4.0, 4.0, 4.5, 5.0};
    double sum = 0.0;
    for (double x : xs) sum += x;
    double mean = sum / 12.0;
    double sq = 0.0;
    for (double x : xs) sq += (x - mean) * (x - mean);
    double sigma = std::sqrt(sq / 12.0);

    auto t = compute_thresholds(xs, Dimension::C);
    CHECK(t.mean == doctest::Approx(mean).epsilon(1e-15));
    CHECK(t.sigma == doctest::Approx(sigma).epsilon(1e-15));
    CHECK(t.alpha == doctest::Approx(mean - sigma).epsilon(1e-15));
    CHECK(t.beta == doctest::Approx(mean + sigma).epsilon(1e-15));
    CHECK_THROWS_AS(compute_thresholds({}), ValidationError);
}

TEST_CASE("bin_score boundary rule: mid owns both boundaries") {
    Thresholds t;
    t.alpha = 2.31;
    t.beta = 3.59;
    CHECK(bin_score(2.31, t) == ClassLabel::Mid);
    CHECK(bin_score(3.59, t) == ClassLabel::Mid);
    CHECK(bin_score(2.3099, t) == ClassLabel::Low);
    CHECK(bin_score(3.5901, t) == ClassLabel::High);
    CHECK(bin_score(5.0, t) == ClassLabel::High);
    CHECK(bin_score(1.0, t) == ClassLabel::Low);
}

TEST_CASE("every score maps to exactly one label and counts sum to N") {
    Rng rng(11);
    std::vector<double> scores;
    for (int i = 0; i < 209; ++i) scores.push_back(rng.uniform(1.0, 5.0));
    auto t = compute_thresholds(scores);
    int counts[3] = {0, 0, 0};
    for (double s : scores) ++counts[static_cast<int>(bin_score(s, t))];
    CHECK(counts[0] + counts[1] + counts[2] == 209);
    // mean +/- sigma binning puts the plurality in the mid band
    CHECK(counts[1] > counts[0]);
    CHECK(counts[1] > counts[2]);
}

TEST_CASE("shifting every score by a constant shifts thresholds and keeps labels") {
    Rng rng(12);
    std::vector<double> scores;
    for (int i = 0; i < 60; ++i) scores.push_back(rng.uniform(1.5, 4.0));
    auto t = compute_thresholds(scores);
    double c = 0.75;
    std::vector<double> shifted;
    for (double s : scores) shifted.push_back(s + c);
    auto ts = compute_thresholds(shifted);
    CHECK(ts.alpha == doctest::Approx(t.alpha + c).epsilon(1e-12));
    CHECK(ts.beta == doctest::Approx(t.beta + c).epsilon(1e-12));
    for (size_t i = 0; i < scores.size(); ++i)
        CHECK(bin_score(scores[i], t) == bin_score(shifted[i], ts));
}

TEST_CASE("filter_two_class keeps low/high rows in order") {
    std::vector<ClassLabel> labels = {ClassLabel::Low, ClassLabel::Mid, ClassLabel::High,
                                      ClassLabel::Mid, ClassLabel::Low};
    std::vector<int> payload = {10, 20, 30, 40, 50};
    auto [fl, fp] = filter_two_class(labels, payload);
    CHECK(fl == std::vector<ClassLabel>{ClassLabel::Low, ClassLabel::High, ClassLabel::Low});
    CHECK(fp == std::vector<int>{10, 30, 50});

    auto [al, ap] = filter_two_class(std::vector<ClassLabel>(4, ClassLabel::Mid),
                                     std::vector<int>{1, 2, 3, 4});
    CHECK(al.empty());
    CHECK(ap.empty());

    std::vector<ClassLabel> extremes = {ClassLabel::Low, ClassLabel::High};
    auto [el, ep] = filter_two_class(extremes, std::vector<int>{7, 8});
    CHECK(el == extremes);
    CHECK(ep == std::vector<int>{7, 8});

    CHECK_THROWS_AS(filter_two_class(labels, std::vector<int>{1}), ValidationError);
}

TEST_CASE("Table-2-shaped label counts produce the documented two-class sample count") {
    // 62 low, 92 mid, 55 high -> 117 extreme samples
    std::vector<ClassLabel> labels;
    std::vector<int> payload;
    for (int i = 0; i < 62; ++i) labels.push_back(ClassLabel::Low);
    for (int i = 0; i < 92; ++i) labels.push_back(ClassLabel::Mid);
    for (int i = 0; i < 55; ++i) labels.push_back(ClassLabel::High);
    for (size_t i = 0; i < labels.size(); ++i) payload.push_back(static_cast<int>(i));
    auto [fl, fp] = filter_two_class(labels, payload);
    CHECK(fl.size() == 117);
    CHECK(fp.size() == 117);
}
