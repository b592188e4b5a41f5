#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "persona/c45.hpp"
#include "persona/common.hpp"
#include "persona/discretize.hpp"
#include "persona/emotion.hpp"
#include "persona/eval.hpp"
#include "persona/features.hpp"
#include "persona/inventory.hpp"
#include "persona/io.hpp"
#include "persona/synth.hpp"

namespace persona {

namespace fs = std::filesystem;

inline bool log_enabled() {
    const char* v = std::getenv("PERSONA_LOG");
    return v != nullptr && v[0] != '\0';
}

inline void log_line(const std::string& msg) {
    if (log_enabled()) std::fprintf(stderr, "[persona] %s\n", msg.c_str());
}

enum class LabelMode { ThreeClass, TwoClass };

inline const char* label_mode_name(LabelMode m) {
    return m == LabelMode::ThreeClass ? "3class" : "2class";
}

inline LabelMode label_mode_from_name(const std::string& s) {
    if (s == "3class") return LabelMode::ThreeClass;
    if (s == "2class") return LabelMode::TwoClass;
    detail::fail("unknown mode '" + s + "' (expected 3class or 2class)");
}

enum class ThresholdMode { Global, PerFold };

// --- synth ------------------------------------------------------------------

struct SynthOptions {
    std::optional<fs::path> config_path;
    std::optional<int> n;
    std::optional<std::uint64_t> seed;
    fs::path out_dir;
};

/// Writes records.jsonl, inventories.csv, emotion_corpus.jsonl,
/// emotion_lexicon.txt and cohort_report.json into the output directory.
inline void run_synth(const SynthOptions& opts) {
    CohortConfig cfg;
    if (opts.config_path) {
        auto text = read_text(*opts.config_path);
        try {
            cfg = cohort_config_from_json(nlohmann::json::parse(text));
        } catch (const nlohmann::json::exception& e) {
            detail::fail(opts.config_path->string() + ": bad config: " + e.what());
        }
    }
    if (opts.n) cfg.n = *opts.n;
    if (opts.seed) cfg.seed = *opts.seed;
    cfg.validate();

    log_line("generating cohort of " + std::to_string(cfg.n) + " (seed " +
             std::to_string(cfg.seed) + ")");
    auto cohort = generate_cohort(cfg);

    std::vector<UserRecord> records;
    std::vector<InventoryResponse> inventories;
    for (const auto& p : cohort) {
        records.push_back(p.record);
        inventories.push_back(p.inventory);
    }
    auto corpus = make_toy_emotion_corpus();
    auto lexicon = default_emotion_lexicon();
    auto model = EmotionModel::train(corpus, lexicon, 2.0, 1.0);
    auto report = cohort_report(cohort, cfg, model);

    write_text_atomic(opts.out_dir / "records.jsonl", records_to_jsonl(records));
    write_text_atomic(opts.out_dir / "inventories.csv", inventories_to_csv(inventories));
    write_text_atomic(opts.out_dir / "emotion_corpus.jsonl", emotion_corpus_to_jsonl(corpus));
    std::string lex_text;
    for (const auto& t : lexicon) {
        lex_text += t;
        lex_text += '\n';
    }
    write_text_atomic(opts.out_dir / "emotion_lexicon.txt", lex_text);
    write_json_atomic(opts.out_dir / "cohort_report.json", cohort_report_to_json(report));
}

// --- emotion-train ------------------------------------------------------------

struct EmotionTrainOptions {
    fs::path corpus_path;
    fs::path lexicon_path;
    double boost = 2.0;
    double smoothing = 1.0;
    fs::path out_path;
};

inline void run_emotion_train(const EmotionTrainOptions& opts) {
    auto corpus = load_emotion_corpus(opts.corpus_path);
    auto lexicon = load_lexicon(opts.lexicon_path);
    auto model = EmotionModel::train(corpus, lexicon, opts.boost, opts.smoothing);
    log_line("trained emotion model on " + std::to_string(corpus.size()) + " docs, vocabulary " +
             std::to_string(model.vocabulary_size()));
    write_json_atomic(opts.out_path, model.to_json());
}

inline EmotionModel load_emotion_model(const fs::path& path) {
    try {
        return EmotionModel::from_json(nlohmann::json::parse(read_text(path)));
    } catch (const nlohmann::json::exception& e) {
        detail::fail(path.string() + ": bad emotion model: " + e.what());
    }
}

// --- score ---------------------------------------------------------------------

struct ScoreOptions {
    fs::path inventories_path;
    fs::path out_path;
};

inline void run_score(const ScoreOptions& opts) {
    auto inventories = load_inventories(opts.inventories_path);
    ScoreTable table;
    for (const auto& r : inventories) {
        table.ids.push_back(r.participant_id);
        table.scores.push_back(score_bfi(r));
    }
    write_text_atomic(opts.out_path, scores_to_csv(table));
    log_line("scored " + std::to_string(table.ids.size()) + " inventories");
}

// --- features --------------------------------------------------------------------

struct FeaturesOptions {
    fs::path records_path;
    fs::path emotion_model_path;
    long long reference_date = epoch_seconds(2012, 3, 1);
    fs::path out_path;
};

inline void run_features(const FeaturesOptions& opts) {
    auto records = load_records(opts.records_path);
    auto model = load_emotion_model(opts.emotion_model_path);
    FeatureTable table;
    for (const auto& r : records) {
        table.ids.push_back(r.user_id);
        table.rows.push_back(extract_features(r, opts.reference_date, model));
    }
    write_text_atomic(opts.out_path, features_to_csv(table));
    fs::path schema_path = opts.out_path;
    schema_path.replace_extension(".schema.json");
    write_json_atomic(schema_path, feature_schema_json());
    log_line("extracted " + std::to_string(table.ids.size()) + " feature vectors");
}

// --- discretize --------------------------------------------------------------------

struct DiscretizeOptions {
    fs::path scores_path;
    LabelMode mode = LabelMode::ThreeClass;
    fs::path out_labels;
    fs::path out_thresholds;
};

inline std::array<Thresholds, kDimensionCount> compute_all_thresholds(const ScoreTable& scores) {
    std::array<Thresholds, kDimensionCount> out{};
    for (Dimension d : all_dimensions()) {
        std::vector<double> xs;
        xs.reserve(scores.ids.size());
        for (const auto& s : scores.scores) xs.push_back(s[d]);
        out[static_cast<size_t>(d)] = compute_thresholds(xs, d);
    }
    return out;
}

inline nlohmann::ordered_json thresholds_to_json(
    const std::array<Thresholds, kDimensionCount>& thresholds, LabelMode mode) {
    nlohmann::ordered_json j;
    j["format"] = "persona-thresholds";
    j["version"] = 1;
    j["mode"] = label_mode_name(mode);
    nlohmann::ordered_json dims = nlohmann::ordered_json::object();
    for (Dimension d : all_dimensions()) {
        const auto& t = thresholds[static_cast<size_t>(d)];
        dims[std::string(1, dimension_letter(d))] = {
            {"mean", t.mean}, {"sigma", t.sigma}, {"alpha", t.alpha}, {"beta", t.beta}};
    }
    j["dimensions"] = dims;
    return j;
}

inline void run_discretize(const DiscretizeOptions& opts) {
    auto scores = load_scores(opts.scores_path);
    auto thresholds = compute_all_thresholds(scores);
    LabelTable labels;
    labels.ids = scores.ids;
    for (const auto& s : scores.scores) {
        std::array<ClassLabel, kDimensionCount> row{};
        for (Dimension d : all_dimensions())
            row[static_cast<size_t>(d)] = bin_score(s[d], thresholds[static_cast<size_t>(d)]);
        labels.labels.push_back(row);
    }
    write_text_atomic(opts.out_labels, labels_to_csv(labels));
    write_json_atomic(opts.out_thresholds, thresholds_to_json(thresholds, opts.mode));
    log_line("discretized " + std::to_string(labels.ids.size()) + " score rows");
}

// --- dataset assembly ----------------------------------------------------------------

/// Join features with one dimension's labels (by participant id) into a
/// training table. Two-class mode drops mid rows and uses {low, high}.
inline Dataset build_dataset(const FeatureTable& features, const LabelTable& labels,
                             Dimension dim, LabelMode mode) {
    std::map<std::string, size_t> label_row;
    for (size_t i = 0; i < labels.ids.size(); ++i) label_row[labels.ids[i]] = i;

    Dataset data;
    data.columns = feature_columns();
    data.class_names = mode == LabelMode::ThreeClass
                           ? three_class_names()
                           : std::vector<std::string>{"low", "high"};
    for (size_t i = 0; i < features.ids.size(); ++i) {
        auto it = label_row.find(features.ids[i]);
        require(it != label_row.end(),
                "no label row for participant '" + features.ids[i] + "'");
        ClassLabel label = labels.labels[it->second][static_cast<size_t>(dim)];
        if (mode == LabelMode::TwoClass) {
            if (label == ClassLabel::Mid) continue;
            data.labels.push_back(label == ClassLabel::Low ? 0 : 1);
        } else {
            data.labels.push_back(static_cast<int>(label));
        }
        data.rows.push_back(features.rows[i]);
    }
    require(!data.rows.empty(), "dataset is empty after joining features and labels");
    return data;
}

// --- train ------------------------------------------------------------------------

struct TrainOptions {
    fs::path features_path;
    fs::path labels_path;
    Dimension dimension = Dimension::E;
    LabelMode mode = LabelMode::ThreeClass;
    TrainParams params;
    fs::path out_path;
};

inline void run_train(const TrainOptions& opts) {
    auto features = load_features(opts.features_path);
    auto labels = load_labels(opts.labels_path);
    Dataset data = build_dataset(features, labels, opts.dimension, opts.mode);
    TreeModel model;
    model.dimension = std::string(1, dimension_letter(opts.dimension));
    model.columns = data.columns;
    model.class_names = data.class_names;
    model.params = opts.params;
    model.root = grow_tree(data, opts.params);
    log_line("dimension " + model.dimension + ": tree with " +
             std::to_string(model.root->node_count()) + " nodes");
    write_json_atomic(opts.out_path, tree_model_to_json(model));
}

// --- cross-validation ------------------------------------------------------------------

struct CvOptions {
    fs::path features_path;
    fs::path labels_path;
    std::optional<fs::path> scores_path;  // required for per-fold thresholds
    std::vector<Dimension> dimensions = {Dimension::E, Dimension::A, Dimension::C, Dimension::N,
                                         Dimension::O};
    LabelMode mode = LabelMode::ThreeClass;
    ThresholdMode threshold_mode = ThresholdMode::Global;
    int folds = 10;
    std::uint64_t seed = 0;
    TrainParams params;
    std::optional<fs::path> out_dir;
};

namespace detail {

/// Per-fold-threshold CV: alpha/beta are recomputed from the training
/// fold's raw scores, then both splits are relabeled before training.
/// Fold assignment is stratified on the globally-discretized labels so the
/// folds stay comparable across modes.
inline CvResult cross_validate_per_fold(const Dataset& base, const std::vector<int>& global_labels,
                                        const std::vector<double>& raw_scores, Dimension dim,
                                        LabelMode mode, int k, const TrainParams& params,
                                        std::uint64_t seed) {
    auto folds = stratified_folds(global_labels, 3, k, seed);
    std::vector<std::string> class_names =
        mode == LabelMode::ThreeClass ? three_class_names() : std::vector<std::string>{"low", "high"};

    CvResult result;
    result.pooled = ConfusionMatrix(class_names);
    for (int f = 0; f < k; ++f) {
        std::vector<double> train_scores;
        for (size_t i = 0; i < raw_scores.size(); ++i)
            if (folds[i] != f) train_scores.push_back(raw_scores[i]);
        Thresholds t = compute_thresholds(train_scores, dim);

        Dataset train;
        train.columns = base.columns;
        train.class_names = class_names;
        std::vector<std::pair<int, int>> test_rows;  // (row, class)
        for (size_t i = 0; i < raw_scores.size(); ++i) {
            ClassLabel label = bin_score(raw_scores[i], t);
            int cls;
            if (mode == LabelMode::TwoClass) {
                if (label == ClassLabel::Mid) continue;
                cls = label == ClassLabel::Low ? 0 : 1;
            } else {
                cls = static_cast<int>(label);
            }
            if (folds[i] == f) {
                test_rows.emplace_back(static_cast<int>(i), cls);
            } else {
                train.rows.push_back(base.rows[i]);
                train.labels.push_back(cls);
            }
        }
        require(!train.rows.empty(), "cross_validate: empty training fold; use a smaller k");
        // a class present anywhere under this fold's thresholds must be
        // trainable, or the tree could never predict it
        std::vector<bool> seen_train(class_names.size(), false);
        std::vector<bool> seen_any(class_names.size(), false);
        for (int l : train.labels) {
            seen_train[static_cast<size_t>(l)] = true;
            seen_any[static_cast<size_t>(l)] = true;
        }
        for (const auto& [row, cls] : test_rows) seen_any[static_cast<size_t>(cls)] = true;
        for (size_t c = 0; c < class_names.size(); ++c)
            require(!seen_any[c] || seen_train[c],
                    "cross_validate: class '" + class_names[c] + "' missing from fold " +
                        std::to_string(f) + " training split; use a smaller k");

        auto tree = grow_tree(train, params);
        for (auto [row, cls] : test_rows) {
            auto pred = predict(*tree, train, base.rows[static_cast<size_t>(row)]);
            result.pooled.add(cls, pred.class_id);
        }
        result.fold_trees.push_back(std::move(tree));
    }
    result.metrics = prf(result.pooled, std::string(1, dimension_letter(dim)));
    return result;
}

} // namespace detail

/// Fixed-width table in the three-column report layout.
inline std::string render_metrics_table(const std::vector<MetricsRow>& rows) {
    char buf[128];
    std::string out = "DIMENSION      P        R        F-VALUE\n";
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%-14s %-8.3f %-8.3f %.3f\n", r.dimension.c_str(),
                      r.weighted_precision, r.weighted_recall, r.weighted_f);
        out += buf;
    }
    return out;
}

inline std::string metrics_to_csv(const std::vector<MetricsRow>& rows) {
    std::string out = "dimension,class,precision,recall,f,support\n";
    for (const auto& r : rows) {
        for (const auto& c : r.per_class) {
            out += r.dimension + "," + c.class_name + "," + format_double(c.precision) + "," +
                   format_double(c.recall) + "," + format_double(c.f) + "," +
                   std::to_string(c.support) + "\n";
        }
        out += r.dimension + ",weighted," + format_double(r.weighted_precision) + "," +
               format_double(r.weighted_recall) + "," + format_double(r.weighted_f) + "," +
               std::to_string(r.total) + "\n";
    }
    return out;
}

struct CvRunResult {
    std::vector<MetricsRow> metrics;
    std::vector<ConfusionMatrix> confusions;
    std::string table_text;
};

inline CvRunResult run_cv(const CvOptions& opts) {
    require(opts.folds >= 2, "cv: folds must be >= 2");
    require(!opts.dimensions.empty(), "cv: no dimensions requested");
    auto features = load_features(opts.features_path);
    auto labels = load_labels(opts.labels_path);

    std::optional<ScoreTable> scores;
    if (opts.threshold_mode == ThresholdMode::PerFold) {
        require(opts.scores_path.has_value(), "cv: per-fold thresholds need --scores");
        scores = load_scores(*opts.scores_path);
    }

    CvRunResult out;
    for (Dimension dim : opts.dimensions) {
        CvResult r;
        if (opts.threshold_mode == ThresholdMode::Global) {
            Dataset data = build_dataset(features, labels, dim, opts.mode);
            r = cross_validate(data, opts.folds, opts.params, opts.seed,
                               std::string(1, dimension_letter(dim)));
        } else {
            // align raw scores + global labels with the feature table order
            std::map<std::string, size_t> score_row, label_row;
            for (size_t i = 0; i < scores->ids.size(); ++i) score_row[scores->ids[i]] = i;
            for (size_t i = 0; i < labels.ids.size(); ++i) label_row[labels.ids[i]] = i;
            Dataset base;
            base.columns = feature_columns();
            base.class_names = three_class_names();
            std::vector<double> raw;
            std::vector<int> global;
            for (size_t i = 0; i < features.ids.size(); ++i) {
                auto sit = score_row.find(features.ids[i]);
                auto lit = label_row.find(features.ids[i]);
                require(sit != score_row.end(),
                        "no score row for participant '" + features.ids[i] + "'");
                require(lit != label_row.end(),
                        "no label row for participant '" + features.ids[i] + "'");
                base.rows.push_back(features.rows[i]);
                base.labels.push_back(
                    static_cast<int>(labels.labels[lit->second][static_cast<size_t>(dim)]));
                raw.push_back(scores->scores[sit->second][dim]);
                global.push_back(base.labels.back());
            }
            r = detail::cross_validate_per_fold(base, global, raw, dim, opts.mode, opts.folds,
                                                opts.params, opts.seed);
        }
        log_line("cv dimension " + std::string(1, dimension_letter(dim)) + ": weighted F " +
                 format_double(r.metrics.weighted_f));
        out.metrics.push_back(r.metrics);
        out.confusions.push_back(r.pooled);
    }
    out.table_text = render_metrics_table(out.metrics);

    if (opts.out_dir) {
        write_text_atomic(*opts.out_dir / "metrics.csv", metrics_to_csv(out.metrics));
        write_text_atomic(*opts.out_dir / "metrics.txt", out.table_text);
        for (size_t i = 0; i < out.metrics.size(); ++i)
            write_json_atomic(*opts.out_dir / ("confusion_" + out.metrics[i].dimension + ".json"),
                              out.confusions[i].to_json());
    }
    return out;
}

// --- predict ------------------------------------------------------------------------

struct PredictOptions {
    fs::path model_path;
    fs::path records_path;
    fs::path emotion_model_path;
    long long reference_date = epoch_seconds(2012, 3, 1);
    std::optional<fs::path> out_path;
};

inline TreeModel load_tree_model(const fs::path& path) {
    try {
        return tree_model_from_json(nlohmann::json::parse(read_text(path)));
    } catch (const nlohmann::json::exception& e) {
        detail::fail(path.string() + ": bad tree model: " + e.what());
    }
}

inline std::string run_predict(const PredictOptions& opts) {
    TreeModel model = load_tree_model(opts.model_path);
    require(model.columns == feature_columns(),
            opts.model_path.string() + ": model schema does not match feature schema version " +
                std::to_string(kFeatureSchemaVersion));
    auto records = load_records(opts.records_path);
    auto emotion = load_emotion_model(opts.emotion_model_path);
    Dataset schema = model.schema_view();

    std::string out;
    for (const auto& rec : records) {
        FeatureVector row = extract_features(rec, opts.reference_date, emotion);
        Prediction pred = predict(*model.root, schema, row);
        nlohmann::ordered_json j;
        j["user_id"] = rec.user_id;
        j["dimension"] = model.dimension;
        j["label"] = model.class_names[static_cast<size_t>(pred.class_id)];
        nlohmann::ordered_json path = nlohmann::ordered_json::array();
        for (const auto& step : pred.path)
            path.push_back({{"feature", step.feature}, {"decision", step.decision}});
        j["path"] = path;
        out += j.dump();
        out += "\n";
    }
    if (opts.out_path) write_text_atomic(*opts.out_path, out);
    return out;
}

// --- report -------------------------------------------------------------------------

/// Root / 2nd-root feature listing across per-dimension models.
inline std::string run_report(const std::vector<fs::path>& model_paths) {
    require(!model_paths.empty(), "report: no models given");
    char buf[256];
    std::string out = "D.   LEVEL      FEATURES\n";
    for (const auto& path : model_paths) {
        TreeModel model = load_tree_model(path);
        Dataset schema = model.schema_view();
        auto features = top_features(*model.root, schema, 2);
        std::string root, second;
        for (const auto& [depth, name] : features) {
            std::string& target = depth == 0 ? root : second;
            if (!target.empty()) target += ", ";
            target += name;
        }
        if (root.empty()) root = "(leaf-only tree)";
        if (second.empty()) second = "-";
        std::snprintf(buf, sizeof(buf), "%-4s %-10s %s\n", model.dimension.c_str(), "Root",
                      root.c_str());
        out += buf;
        std::snprintf(buf, sizeof(buf), "%-4s %-10s %s\n", "", "2nd Root", second.c_str());
        out += buf;
    }
    return out;
}

} // namespace persona
