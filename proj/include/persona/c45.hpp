#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "persona/common.hpp"
#include "persona/dataset.hpp"

namespace persona {

// Candidate admissibility constants; part of the best_split contract.
// A candidate counts as positive-gain above kPositiveGainEps, and the
// gain-floor test allows kGainFloorSlack of numeric slack.
constexpr double kPositiveGainEps = 1e-12;
constexpr double kGainFloorSlack = 1e-9;

struct TrainParams {
    int min_leaf = 2;          // nodes with fewer than 2*min_leaf samples become leaves
    double cf = 0.25;          // pessimistic-pruning confidence, 0 < cf < 0.5
    int max_depth = 0;         // 0 = unlimited
    bool prune = true;
    bool gain_floor = true;    // restrict to candidates with gain >= mean positive gain
    std::uint64_t seed = 0;    // reserved; tie-breaking is deterministic without it

    void validate() const {
        require(min_leaf >= 1, "min_leaf must be >= 1");
        require(cf > 0.0 && cf < 0.5, "pruning confidence must be in (0, 0.5)");
        require(max_depth >= 0, "max_depth must be >= 0");
    }
};

/// Entropy in bits of a class-count vector, summed in index order.
inline double entropy(const std::vector<long long>& counts) {
    long long total = 0;
    for (long long c : counts) {
        require(c >= 0, "entropy: negative count");
        total += c;
    }
    require(total > 0, "entropy: all counts are zero");
    double h = 0.0;
    for (long long c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

struct SplitEval {
    double gain = 0.0;
    double split_info = 0.0;
    double ratio = 0.0;
};

/// Gain, split information and gain ratio for a concrete partition,
/// evaluated in canonical order: parent entropy minus size-weighted child
/// entropies, branches in branch order, classes ascending. Zero split
/// information yields ratio 0.
inline SplitEval evaluate_partition(const std::vector<long long>& parent_counts,
                                    const std::vector<std::vector<long long>>& branch_counts) {
    long long n = 0;
    for (long long c : parent_counts) n += c;
    std::vector<long long> sizes;
    sizes.reserve(branch_counts.size());
    double child_term = 0.0;
    for (const auto& branch : branch_counts) {
        long long nb = 0;
        for (long long c : branch) nb += c;
        sizes.push_back(nb);
        if (nb > 0)
            child_term += (static_cast<double>(nb) / static_cast<double>(n)) * entropy(branch);
    }
    SplitEval ev;
    ev.gain = entropy(parent_counts) - child_term;
    ev.split_info = entropy(sizes);
    ev.ratio = ev.split_info > 0.0 ? ev.gain / ev.split_info : 0.0;
    return ev;
}

/// A concrete candidate split: numeric threshold (<=/>) or a multiway
/// categorical split over the categories observed at the node, sorted.
struct SplitSpec {
    FeatureKind kind = FeatureKind::Numeric;
    double threshold = 0.0;
    std::vector<std::string> categories;
};

inline int branch_of(const Dataset& data, int row, int col, const SplitSpec& spec) {
    const Value& v = data.rows[static_cast<size_t>(row)][static_cast<size_t>(col)];
    if (spec.kind == FeatureKind::Numeric) return num(v) <= spec.threshold ? 0 : 1;
    auto it = std::lower_bound(spec.categories.begin(), spec.categories.end(), cat(v));
    if (it != spec.categories.end() && *it == cat(v))
        return static_cast<int>(it - spec.categories.begin());
    return -1;  // unseen category
}

/// Gain statistics of one candidate on a row subset.
inline SplitEval evaluate_split(const Dataset& data, const std::vector<int>& row_ids, int col,
                                const SplitSpec& spec) {
    size_t n_branches = spec.kind == FeatureKind::Numeric ? 2 : spec.categories.size();
    std::vector<std::vector<long long>> branches(
        n_branches, std::vector<long long>(data.class_names.size(), 0));
    for (int r : row_ids) {
        int b = branch_of(data, r, col, spec);
        require(b >= 0, "evaluate_split: category not in split spec");
        ++branches[static_cast<size_t>(b)][static_cast<size_t>(data.labels[static_cast<size_t>(r)])];
    }
    return evaluate_partition(data.class_counts(row_ids), branches);
}

inline double gain_ratio(const Dataset& data, const std::vector<int>& row_ids, int col,
                         const SplitSpec& spec) {
    return evaluate_split(data, row_ids, col, spec).ratio;
}

struct Candidate {
    int col = -1;
    SplitSpec spec;
    SplitEval eval;
};

/// All candidate splits at a node, in canonical order: columns in schema
/// order; per numeric column the midpoints between consecutive distinct
/// sorted values, ascending; per categorical column one multiway split
/// when at least two categories are observed.
inline std::vector<Candidate> enumerate_candidates(const Dataset& data,
                                                   const std::vector<int>& row_ids) {
    std::vector<Candidate> out;
    int n_classes = data.n_classes();
    std::vector<long long> parent = data.class_counts(row_ids);

    for (int col = 0; col < static_cast<int>(data.n_cols()); ++col) {
        if (data.columns[static_cast<size_t>(col)].kind == FeatureKind::Numeric) {
            std::vector<std::pair<double, int>> vals;
            vals.reserve(row_ids.size());
            for (int r : row_ids)
                vals.emplace_back(num(data.rows[static_cast<size_t>(r)][static_cast<size_t>(col)]),
                                  data.labels[static_cast<size_t>(r)]);
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            std::vector<long long> left(static_cast<size_t>(n_classes), 0);
            for (size_t i = 0; i + 1 < vals.size(); ++i) {
                ++left[static_cast<size_t>(vals[i].second)];
                if (vals[i].first == vals[i + 1].first) continue;
                Candidate c;
                c.col = col;
                c.spec.kind = FeatureKind::Numeric;
                c.spec.threshold = (vals[i].first + vals[i + 1].first) / 2.0;
                std::vector<long long> right(static_cast<size_t>(n_classes), 0);
                for (int k = 0; k < n_classes; ++k)
                    right[static_cast<size_t>(k)] =
                        parent[static_cast<size_t>(k)] - left[static_cast<size_t>(k)];
                c.eval = evaluate_partition(parent, {left, right});
                out.push_back(std::move(c));
            }
        } else {
            std::vector<std::string> cats;
            for (int r : row_ids)
                cats.push_back(cat(data.rows[static_cast<size_t>(r)][static_cast<size_t>(col)]));
            std::sort(cats.begin(), cats.end());
            cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
            if (cats.size() < 2) continue;
            Candidate c;
            c.col = col;
            c.spec.kind = FeatureKind::Categorical;
            c.spec.categories = cats;
            std::vector<std::vector<long long>> branches(
                cats.size(), std::vector<long long>(static_cast<size_t>(n_classes), 0));
            for (int r : row_ids) {
                int b = branch_of(data, r, col, c.spec);
                ++branches[static_cast<size_t>(b)][static_cast<size_t>(
                    data.labels[static_cast<size_t>(r)])];
            }
            c.eval = evaluate_partition(parent, branches);
            out.push_back(std::move(c));
        }
    }
    return out;
}

inline bool labels_pure(const Dataset& data, const std::vector<int>& row_ids) {
    if (row_ids.empty()) return true;
    int first = data.labels[static_cast<size_t>(row_ids[0])];
    for (int r : row_ids)
        if (data.labels[static_cast<size_t>(r)] != first) return false;
    return true;
}

/// Pick the winning split for a node, or nothing when the node is pure or
/// offers no candidates.
///
/// With the gain floor enabled and at least one positive-gain candidate,
/// only candidates whose gain reaches the mean gain of the positive-gain
/// candidates compete; the winner is the admissible candidate with the
/// highest gain ratio, earlier candidates winning ties (schema order, then
/// lower threshold). When every candidate has zero gain the floor is
/// vacuous and the same ratio/tie rule runs over all candidates, so an
/// impure node can still split (XOR-style data needs two levels before any
/// gain appears).
inline std::optional<Candidate> best_split(const Dataset& data, const std::vector<int>& row_ids,
                                           const TrainParams& params) {
    if (labels_pure(data, row_ids)) return std::nullopt;
    std::vector<Candidate> cands = enumerate_candidates(data, row_ids);
    if (cands.empty()) return std::nullopt;

    double floor = -1.0;  // admissible: gain >= floor
    if (params.gain_floor) {
        double sum = 0.0;
        int positives = 0;
        for (const auto& c : cands) {
            if (c.eval.gain > kPositiveGainEps) {
                sum += c.eval.gain;
                ++positives;
            }
        }
        if (positives > 0) floor = sum / positives - kGainFloorSlack;
    }

    const Candidate* best = nullptr;
    for (const auto& c : cands) {
        if (c.eval.gain < floor) continue;
        if (best == nullptr || c.eval.ratio > best->eval.ratio) best = &c;
    }
    if (best == nullptr) return std::nullopt;
    return *best;
}

struct TreeNode {
    // every node keeps the training class distribution it saw
    std::vector<long long> counts;
    int predicted = 0;

    bool is_leaf = true;
    int col = -1;
    SplitSpec spec;
    int fallback_child = 0;  // categorical routing for unseen categories
    std::vector<std::unique_ptr<TreeNode>> children;

    size_t node_count() const {
        size_t n = 1;
        for (const auto& ch : children) n += ch->node_count();
        return n;
    }

    int depth() const {
        int d = 0;
        for (const auto& ch : children) d = std::max(d, 1 + ch->depth());
        return d;
    }
};

namespace detail {

inline int majority_class(const std::vector<long long>& counts) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(counts.size()); ++i)
        if (counts[static_cast<size_t>(i)] > counts[static_cast<size_t>(best)]) best = i;
    return best;
}

inline std::unique_ptr<TreeNode> grow_node(const Dataset& data, const std::vector<int>& row_ids,
                                           const TrainParams& params, int depth) {
    auto node = std::make_unique<TreeNode>();
    node->counts = data.class_counts(row_ids);
    node->predicted = majority_class(node->counts);

    bool stop = labels_pure(data, row_ids) ||
                static_cast<int>(row_ids.size()) < 2 * params.min_leaf ||
                (params.max_depth > 0 && depth >= params.max_depth);
    if (!stop) {
        auto cand = best_split(data, row_ids, params);
        if (cand) {
            size_t n_branches =
                cand->spec.kind == FeatureKind::Numeric ? 2 : cand->spec.categories.size();
            std::vector<std::vector<int>> parts(n_branches);
            for (int r : row_ids)
                parts[static_cast<size_t>(branch_of(data, r, cand->col, cand->spec))].push_back(r);
            node->is_leaf = false;
            node->col = cand->col;
            node->spec = cand->spec;
            size_t biggest = 0;
            for (size_t b = 0; b < parts.size(); ++b) {
                if (parts[b].size() > parts[biggest].size()) biggest = b;
                node->children.push_back(grow_node(data, parts[b], params, depth + 1));
            }
            node->fallback_child = static_cast<int>(biggest);
        }
    }
    return node;
}

/// One-sided upper confidence bound on a binomial error rate (normal
/// approximation). f = observed error rate, n = samples, z = normal
/// quantile at 1 - CF.
inline double pessimistic_upper_bound(double f, double n, double z) {
    double z2 = z * z;
    return (f + z2 / (2.0 * n) + z * std::sqrt(f * (1.0 - f) / n + z2 / (4.0 * n * n))) /
           (1.0 + z2 / n);
}

inline double node_leaf_error_estimate(const TreeNode& node, double z) {
    long long n = 0, maxc = 0;
    for (long long c : node.counts) {
        n += c;
        maxc = std::max(maxc, c);
    }
    if (n == 0) return 0.0;
    double f = static_cast<double>(n - maxc) / static_cast<double>(n);
    return static_cast<double>(n) * pessimistic_upper_bound(f, static_cast<double>(n), z);
}

inline double subtree_error_estimate(const TreeNode& node, double z) {
    if (node.is_leaf) return node_leaf_error_estimate(node, z);
    double total = 0.0;
    for (const auto& ch : node.children) total += subtree_error_estimate(*ch, z);
    return total;
}

inline void prune_node(TreeNode& node, double z) {
    if (node.is_leaf) return;
    for (auto& ch : node.children) prune_node(*ch, z);
    double as_leaf = node_leaf_error_estimate(node, z);
    double as_subtree = subtree_error_estimate(node, z);
    if (as_leaf <= as_subtree + 1e-12) {
        node.is_leaf = true;
        node.col = -1;
        node.spec = SplitSpec{};
        node.children.clear();
        node.predicted = majority_class(node.counts);
    }
}

} // namespace detail

/// Bottom-up pessimistic pruning: replace a subtree by a leaf whenever the
/// collapsed leaf's upper-bound error estimate does not exceed the
/// subtree's. Never increases node count.
inline void prune_tree(TreeNode& root, double cf) {
    require(cf > 0.0 && cf < 0.5, "pruning confidence must be in (0, 0.5)");
    double z = normal_quantile(1.0 - cf);
    detail::prune_node(root, z);
}

inline std::unique_ptr<TreeNode> grow_tree(const Dataset& data, const TrainParams& params) {
    params.validate();
    data.validate();
    require(!data.rows.empty(), "grow_tree: empty dataset");
    auto root = detail::grow_node(data, data.all_rows(), params, 0);
    if (params.prune) prune_tree(*root, params.cf);
    return root;
}

struct PredictStep {
    std::string feature;
    std::string decision;
};

struct Prediction {
    int class_id = 0;
    std::vector<PredictStep> path;
};

/// Deterministic descent; unseen categorical values route to the
/// majority-mass child. The path records every decision taken.
inline Prediction predict(const TreeNode& root, const Dataset& schema,
                          const std::vector<Value>& row) {
    require(row.size() == schema.n_cols(), "predict: row width does not match schema");
    const TreeNode* node = &root;
    Prediction pred;
    while (!node->is_leaf) {
        const auto& colspec = schema.columns[static_cast<size_t>(node->col)];
        const Value& v = row[static_cast<size_t>(node->col)];
        int branch;
        std::string decision;
        if (node->spec.kind == FeatureKind::Numeric) {
            require(is_numeric(v), "predict: expected numeric value for '" + colspec.name + "'");
            branch = num(v) <= node->spec.threshold ? 0 : 1;
            decision = (branch == 0 ? "<= " : "> ") + format_double(node->spec.threshold);
        } else {
            require(!is_numeric(v), "predict: expected category for '" + colspec.name + "'");
            auto it = std::lower_bound(node->spec.categories.begin(), node->spec.categories.end(),
                                       cat(v));
            if (it != node->spec.categories.end() && *it == cat(v)) {
                branch = static_cast<int>(it - node->spec.categories.begin());
                decision = "= " + cat(v);
            } else {
                branch = node->fallback_child;
                decision = "unseen '" + cat(v) + "' -> fallback '" +
                           node->spec.categories[static_cast<size_t>(branch)] + "'";
            }
        }
        pred.path.push_back({colspec.name, decision});
        node = node->children[static_cast<size_t>(branch)].get();
    }
    pred.class_id = node->predicted;
    return pred;
}

/// (depth, feature) pairs for split nodes above depth_limit, breadth-first,
/// first occurrence of each feature kept.
inline std::vector<std::pair<int, std::string>> top_features(const TreeNode& root,
                                                             const Dataset& schema,
                                                             int depth_limit = 2) {
    std::vector<std::pair<int, std::string>> out;
    std::deque<std::pair<const TreeNode*, int>> queue{{&root, 0}};
    while (!queue.empty()) {
        auto [node, depth] = queue.front();
        queue.pop_front();
        if (node->is_leaf || depth >= depth_limit) continue;
        const std::string& name = schema.columns[static_cast<size_t>(node->col)].name;
        bool seen = false;
        for (const auto& [d, f] : out)
            if (f == name) seen = true;
        if (!seen) out.emplace_back(depth, name);
        for (const auto& ch : node->children) queue.emplace_back(ch.get(), depth + 1);
    }
    return out;
}

// --- model (de)serialization ---------------------------------------------

struct TreeModel {
    std::string dimension;  // which personality dimension this tree predicts
    std::vector<ColumnSpec> columns;
    std::vector<std::string> class_names;
    TrainParams params;
    std::unique_ptr<TreeNode> root;

    Dataset schema_view() const {
        Dataset d;
        d.columns = columns;
        d.class_names = class_names;
        return d;
    }
};

namespace detail {

inline nlohmann::ordered_json node_to_json(const TreeNode& node,
                                           const std::vector<ColumnSpec>& columns,
                                           const std::vector<std::string>& class_names) {
    nlohmann::ordered_json j;
    j["type"] = node.is_leaf ? "leaf" : "split";
    j["counts"] = node.counts;
    j["predicted"] = class_names[static_cast<size_t>(node.predicted)];
    if (!node.is_leaf) {
        j["feature"] = columns[static_cast<size_t>(node.col)].name;
        if (node.spec.kind == FeatureKind::Numeric) {
            j["threshold"] = node.spec.threshold;
        } else {
            j["categories"] = node.spec.categories;
            j["fallback"] = node.fallback_child;
        }
        nlohmann::ordered_json kids = nlohmann::ordered_json::array();
        for (const auto& ch : node.children)
            kids.push_back(node_to_json(*ch, columns, class_names));
        j["children"] = kids;
    }
    return j;
}

inline std::unique_ptr<TreeNode> node_from_json(const nlohmann::json& j,
                                                const std::vector<ColumnSpec>& columns,
                                                const std::vector<std::string>& class_names) {
    auto node = std::make_unique<TreeNode>();
    node->counts = j.at("counts").get<std::vector<long long>>();
    require(node->counts.size() == class_names.size(), "tree model: counts width mismatch");
    std::string pred = j.at("predicted").get<std::string>();
    auto it = std::find(class_names.begin(), class_names.end(), pred);
    require(it != class_names.end(), "tree model: unknown class '" + pred + "'");
    node->predicted = static_cast<int>(it - class_names.begin());
    if (j.at("type") == "leaf") return node;

    node->is_leaf = false;
    std::string feature = j.at("feature").get<std::string>();
    node->col = -1;
    for (size_t c = 0; c < columns.size(); ++c)
        if (columns[c].name == feature) node->col = static_cast<int>(c);
    require(node->col >= 0, "tree model: unknown feature '" + feature + "'");
    if (j.contains("threshold")) {
        node->spec.kind = FeatureKind::Numeric;
        node->spec.threshold = j.at("threshold").get<double>();
    } else {
        node->spec.kind = FeatureKind::Categorical;
        node->spec.categories = j.at("categories").get<std::vector<std::string>>();
        node->fallback_child = j.at("fallback").get<int>();
    }
    for (const auto& ch : j.at("children"))
        node->children.push_back(node_from_json(ch, columns, class_names));
    size_t expected =
        node->spec.kind == FeatureKind::Numeric ? 2 : node->spec.categories.size();
    require(node->children.size() == expected, "tree model: child count mismatch");
    return node;
}

} // namespace detail

inline nlohmann::ordered_json tree_model_to_json(const TreeModel& model) {
    nlohmann::ordered_json j;
    j["format"] = "persona-tree";
    j["version"] = 1;
    j["dimension"] = model.dimension;
    j["classes"] = model.class_names;
    nlohmann::ordered_json cols = nlohmann::ordered_json::array();
    for (const auto& c : model.columns)
        cols.push_back({{"name", c.name}, {"kind", feature_kind_name(c.kind)}});
    j["columns"] = cols;
    j["params"] = {{"min_leaf", model.params.min_leaf},
                   {"cf", model.params.cf},
                   {"max_depth", model.params.max_depth},
                   {"prune", model.params.prune},
                   {"gain_floor", model.params.gain_floor},
                   {"seed", model.params.seed}};
    j["root"] = detail::node_to_json(*model.root, model.columns, model.class_names);
    return j;
}

inline TreeModel tree_model_from_json(const nlohmann::json& j) {
    require(j.value("format", "") == "persona-tree", "not a tree model file");
    TreeModel m;
    m.dimension = j.at("dimension").get<std::string>();
    m.class_names = j.at("classes").get<std::vector<std::string>>();
    for (const auto& c : j.at("columns"))
        m.columns.push_back(
            {c.at("name").get<std::string>(), feature_kind_from_name(c.at("kind").get<std::string>())});
    const auto& p = j.at("params");
    m.params.min_leaf = p.at("min_leaf").get<int>();
    m.params.cf = p.at("cf").get<double>();
    m.params.max_depth = p.at("max_depth").get<int>();
    m.params.prune = p.at("prune").get<bool>();
    m.params.gain_floor = p.at("gain_floor").get<bool>();
    m.params.seed = p.at("seed").get<std::uint64_t>();
    m.root = detail::node_from_json(j.at("root"), m.columns, m.class_names);
    return m;
}

} // namespace persona
