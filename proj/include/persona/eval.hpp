#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "persona/c45.hpp"
#include "persona/common.hpp"
#include "persona/dataset.hpp"
#include "persona/rng.hpp"

namespace persona {

/// Square count matrix indexed (true class, predicted class).
struct ConfusionMatrix {
    std::vector<std::string> classes;
    std::vector<std::vector<long long>> counts;

    explicit ConfusionMatrix(std::vector<std::string> class_names = {})
        : classes(std::move(class_names)),
          counts(classes.size(), std::vector<long long>(classes.size(), 0)) {}

    void add(int true_class, int predicted, long long n = 1) {
        counts[static_cast<size_t>(true_class)][static_cast<size_t>(predicted)] += n;
    }

    long long total() const {
        long long t = 0;
        for (const auto& row : counts)
            for (long long c : row) t += c;
        return t;
    }

    long long row_sum(size_t i) const {
        long long t = 0;
        for (long long c : counts[i]) t += c;
        return t;
    }

    long long col_sum(size_t j) const {
        long long t = 0;
        for (const auto& row : counts) t += row[j];
        return t;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["classes"] = classes;
        j["matrix"] = counts;
        j["total"] = total();
        return j;
    }
};

inline double f_measure(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

struct ClassMetrics {
    std::string class_name;
    long long support = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f = 0.0;
};

/// Per-class precision/recall/F plus support-weighted averages for one
/// dimension; the layout behind each printed report row.
struct MetricsRow {
    std::string dimension;
    std::vector<ClassMetrics> per_class;
    long long total = 0;
    double weighted_precision = 0.0;
    double weighted_recall = 0.0;
    double weighted_f = 0.0;
};

/// precision = diag/column, recall = diag/row, F = harmonic(P,R); zero
/// denominators give 0; weights are true-class supports.
inline MetricsRow prf(const ConfusionMatrix& cm, const std::string& dimension = "") {
    long long total = cm.total();
    require(total > 0, "prf: empty confusion matrix");
    MetricsRow row;
    row.dimension = dimension;
    row.total = total;
    for (size_t i = 0; i < cm.classes.size(); ++i) {
        ClassMetrics m;
        m.class_name = cm.classes[i];
        m.support = cm.row_sum(i);
        long long diag = cm.counts[i][i];
        long long col = cm.col_sum(i);
        m.precision = col > 0 ? static_cast<double>(diag) / static_cast<double>(col) : 0.0;
        m.recall = m.support > 0 ? static_cast<double>(diag) / static_cast<double>(m.support) : 0.0;
        m.f = f_measure(m.precision, m.recall);
        double w = static_cast<double>(m.support) / static_cast<double>(total);
        row.weighted_precision += w * m.precision;
        row.weighted_recall += w * m.recall;
        row.weighted_f += w * m.f;
        row.per_class.push_back(std::move(m));
    }
    return row;
}

/// Stratified fold assignment: per class (ascending), indices are shuffled
/// with the seeded generator and dealt round-robin off a shared counter, so
/// fold sizes and per-class counts both stay within one of each other.
inline std::vector<int> stratified_folds(const std::vector<int>& labels, int n_classes, int k,
                                         std::uint64_t seed) {
    require(k >= 2, "stratified_folds: k must be >= 2");
    require(static_cast<size_t>(k) <= labels.size(),
            "stratified_folds: k exceeds sample count " + std::to_string(labels.size()));
    std::vector<int> fold(labels.size(), -1);
    Rng rng(seed ^ 0x5f01d1234abcdef0ull);
    long long counter = 0;
    for (int cls = 0; cls < n_classes; ++cls) {
        std::vector<int> members;
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == cls) members.push_back(static_cast<int>(i));
        rng.shuffle(members);
        for (int idx : members) fold[static_cast<size_t>(idx)] = static_cast<int>(counter++ % k);
    }
    return fold;
}

struct CvResult {
    MetricsRow metrics;
    ConfusionMatrix pooled;
    std::vector<std::unique_ptr<TreeNode>> fold_trees;

    CvResult() : pooled(std::vector<std::string>{}) {}
};

/// k-fold cross-validation of the C4.5 learner on a labeled dataset.
/// Confusion counts are pooled across folds; trees are kept per fold.
inline CvResult cross_validate(const Dataset& data, int k, const TrainParams& params,
                               std::uint64_t seed, const std::string& dimension = "") {
    data.validate();
    require(!data.rows.empty(), "cross_validate: empty dataset");
    auto folds = stratified_folds(data.labels, data.n_classes(), k, seed);

    CvResult result;
    result.pooled = ConfusionMatrix(data.class_names);
    for (int f = 0; f < k; ++f) {
        Dataset train;
        train.columns = data.columns;
        train.class_names = data.class_names;
        std::vector<int> test_rows;
        for (size_t i = 0; i < data.rows.size(); ++i) {
            if (folds[i] == f) {
                test_rows.push_back(static_cast<int>(i));
            } else {
                train.rows.push_back(data.rows[i]);
                train.labels.push_back(data.labels[i]);
            }
        }
        std::vector<long long> train_counts(data.class_names.size(), 0);
        for (int l : train.labels) ++train_counts[static_cast<size_t>(l)];
        for (size_t c = 0; c < train_counts.size(); ++c) {
            long long present = 0;
            for (size_t i = 0; i < data.labels.size(); ++i)
                if (data.labels[i] == static_cast<int>(c)) ++present;
            require(present == 0 || train_counts[c] > 0,
                    "cross_validate: class '" + data.class_names[c] + "' missing from fold " +
                        std::to_string(f) + " training split; use a smaller k");
        }

        auto tree = grow_tree(train, params);
        for (int r : test_rows) {
            auto pred = predict(*tree, data, data.rows[static_cast<size_t>(r)]);
            result.pooled.add(data.labels[static_cast<size_t>(r)], pred.class_id);
        }
        result.fold_trees.push_back(std::move(tree));
    }
    result.metrics = prf(result.pooled, dimension);
    return result;
}

} // namespace persona
