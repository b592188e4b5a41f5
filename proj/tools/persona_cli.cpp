// persona: Big-Five personality prediction from SNS behavior logs.
//
// Single binary with subcommands covering the whole pipeline:
//   synth -> emotion-train -> score / features -> discretize -> train / cv
//   -> predict / report
//
// Exit codes: 0 success, 1 input/validation error, 2 internal error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "persona/persona.hpp"

namespace {

using namespace persona;

std::vector<Dimension> parse_dims(const std::string& dims) {
    std::vector<Dimension> out;
    for (char c : dims) out.push_back(dimension_from_letter(c));
    require(!out.empty(), "--dims must name at least one of E,A,C,N,O");
    return out;
}

struct CommonTrainFlags {
    int min_leaf = 2;
    double cf = 0.25;
    int max_depth = 0;
    bool no_prune = false;
    bool no_gain_floor = false;

    TrainParams params(std::uint64_t seed) const {
        TrainParams p;
        p.min_leaf = min_leaf;
        p.cf = cf;
        p.max_depth = max_depth;
        p.prune = !no_prune;
        p.gain_floor = !no_gain_floor;
        p.seed = seed;
        p.validate();
        return p;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--min-leaf", min_leaf, "minimum samples per expandable node (default 2)");
        cmd->add_option("--cf", cf, "pruning confidence in (0,0.5), default 0.25");
        cmd->add_option("--max-depth", max_depth, "depth limit, 0 = unlimited");
        cmd->add_flag("--no-prune", no_prune, "skip pessimistic pruning");
        cmd->add_flag("--no-gain-floor", no_gain_floor, "pure gain-ratio split selection");
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Big-Five personality prediction from SNS behavior logs"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic cohort");
    std::string synth_out, synth_config;
    int synth_n = -1;
    long long synth_seed = -1;
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--config", synth_config, "cohort config JSON");
    synth->add_option("--n", synth_n, "participant count (default 209)");
    synth->add_option("--seed", synth_seed, "cohort seed (default 42)");

    // emotion-train
    auto* etrain = app.add_subcommand("emotion-train", "train the emotion classifier");
    std::string et_corpus, et_lexicon, et_out;
    double et_boost = 2.0, et_smoothing = 1.0;
    etrain->add_option("--corpus", et_corpus, "labeled corpus JSONL {text,label}")->required();
    etrain->add_option("--lexicon", et_lexicon, "emotion lexicon, one token per line")->required();
    etrain->add_option("--boost", et_boost, "lexicon token weight >= 1 (default 2)");
    etrain->add_option("--smoothing", et_smoothing, "additive smoothing > 0 (default 1)");
    etrain->add_option("--out", et_out, "output model JSON")->required();

    // score
    auto* score = app.add_subcommand("score", "score BFI-44 inventories");
    std::string score_in, score_out;
    score->add_option("--inventories", score_in, "inventories CSV or JSONL")->required();
    score->add_option("--out", score_out, "output scores CSV")->required();

    // features
    auto* features = app.add_subcommand("features", "extract 41-slot feature vectors");
    std::string feat_records, feat_model, feat_out, feat_refdate = "2012-03-01";
    features->add_option("--records", feat_records, "user records JSONL")->required();
    features->add_option("--emotion-model", feat_model, "emotion model JSON")->required();
    features->add_option("--reference-date", feat_refdate, "YYYY-MM-DD (default 2012-03-01)");
    features->add_option("--out", feat_out, "output features CSV")->required();

    // discretize
    auto* discretize = app.add_subcommand("discretize", "scores -> low/mid/high labels");
    std::string disc_scores, disc_labels, disc_thresholds, disc_mode = "3class";
    discretize->add_option("--scores", disc_scores, "scores CSV")->required();
    discretize->add_option("--mode", disc_mode, "3class or 2class (recorded in thresholds)");
    discretize->add_option("--out", disc_labels, "output labels CSV")->required();
    discretize->add_option("--thresholds-out", disc_thresholds, "output thresholds JSON")
        ->required();

    // train
    auto* train = app.add_subcommand("train", "train one C4.5 tree");
    std::string tr_features, tr_labels, tr_out, tr_dim = "E", tr_mode = "3class";
    long long tr_seed = 0;
    CommonTrainFlags tr_flags;
    train->add_option("--features", tr_features, "features CSV")->required();
    train->add_option("--labels", tr_labels, "labels CSV")->required();
    train->add_option("--dim", tr_dim, "dimension letter E|A|C|N|O");
    train->add_option("--mode", tr_mode, "3class or 2class");
    train->add_option("--seed", tr_seed, "recorded in the model file");
    tr_flags.attach(train);
    train->add_option("--out", tr_out, "output model JSON")->required();

    // cv
    auto* cv = app.add_subcommand("cv", "stratified k-fold cross-validation");
    std::string cv_features, cv_labels, cv_scores, cv_dims = "EACNO", cv_mode = "3class";
    std::string cv_thresholds = "global", cv_out;
    int cv_folds = 10;
    long long cv_seed = 0;
    CommonTrainFlags cv_flags;
    cv->add_option("--features", cv_features, "features CSV")->required();
    cv->add_option("--labels", cv_labels, "labels CSV")->required();
    cv->add_option("--scores", cv_scores, "scores CSV (needed for per-fold thresholds)");
    cv->add_option("--dims", cv_dims, "dimension letters (default EACNO)");
    cv->add_option("--mode", cv_mode, "3class or 2class");
    cv->add_option("--thresholds", cv_thresholds, "global or per-fold (default global)");
    cv->add_option("--folds", cv_folds, "fold count (default 10)");
    cv->add_option("--seed", cv_seed, "fold-assignment seed");
    cv_flags.attach(cv);
    cv->add_option("--out", cv_out, "output directory for metrics/confusions");

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "predict labels for user records");
    std::string pr_model, pr_records, pr_emotion, pr_out, pr_refdate = "2012-03-01";
    predict_cmd->add_option("--model", pr_model, "tree model JSON")->required();
    predict_cmd->add_option("--records", pr_records, "user records JSONL")->required();
    predict_cmd->add_option("--emotion-model", pr_emotion, "emotion model JSON")->required();
    predict_cmd->add_option("--reference-date", pr_refdate, "YYYY-MM-DD (default 2012-03-01)");
    predict_cmd->add_option("--out", pr_out, "optional output JSONL (default stdout only)");

    // report
    auto* report = app.add_subcommand("report", "root / 2nd-root feature listing");
    std::vector<std::string> rep_models;
    std::string rep_out;
    report->add_option("--models", rep_models, "tree model JSON files")->required();
    report->add_option("--out", rep_out, "optional output text file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) {
            SynthOptions opts;
            if (!synth_config.empty()) opts.config_path = synth_config;
            if (synth_n >= 0) opts.n = synth_n;
            if (synth_seed >= 0) opts.seed = static_cast<std::uint64_t>(synth_seed);
            opts.out_dir = synth_out;
            run_synth(opts);
        } else if (*etrain) {
            run_emotion_train({et_corpus, et_lexicon, et_boost, et_smoothing, et_out});
        } else if (*score) {
            run_score({score_in, score_out});
        } else if (*features) {
            FeaturesOptions opts;
            opts.records_path = feat_records;
            opts.emotion_model_path = feat_model;
            opts.reference_date = parse_date(feat_refdate);
            opts.out_path = feat_out;
            run_features(opts);
        } else if (*discretize) {
            DiscretizeOptions opts;
            opts.scores_path = disc_scores;
            opts.mode = label_mode_from_name(disc_mode);
            opts.out_labels = disc_labels;
            opts.out_thresholds = disc_thresholds;
            run_discretize(opts);
        } else if (*train) {
            TrainOptions opts;
            opts.features_path = tr_features;
            opts.labels_path = tr_labels;
            require(tr_dim.size() == 1, "--dim takes a single letter");
            opts.dimension = dimension_from_letter(tr_dim[0]);
            opts.mode = label_mode_from_name(tr_mode);
            opts.params = tr_flags.params(static_cast<std::uint64_t>(tr_seed));
            opts.out_path = tr_out;
            run_train(opts);
        } else if (*cv) {
            CvOptions opts;
            opts.features_path = cv_features;
            opts.labels_path = cv_labels;
            if (!cv_scores.empty()) opts.scores_path = cv_scores;
            opts.dimensions = parse_dims(cv_dims);
            opts.mode = label_mode_from_name(cv_mode);
            if (cv_thresholds == "global")
                opts.threshold_mode = ThresholdMode::Global;
            else if (cv_thresholds == "per-fold")
                opts.threshold_mode = ThresholdMode::PerFold;
            else
                detail::fail("--thresholds must be 'global' or 'per-fold'");
            opts.folds = cv_folds;
            opts.seed = static_cast<std::uint64_t>(cv_seed);
            opts.params = cv_flags.params(opts.seed);
            if (!cv_out.empty()) opts.out_dir = cv_out;
            auto result = run_cv(opts);
            std::cout << result.table_text;
        } else if (*predict_cmd) {
            PredictOptions opts;
            opts.model_path = pr_model;
            opts.records_path = pr_records;
            opts.emotion_model_path = pr_emotion;
            opts.reference_date = parse_date(pr_refdate);
            if (!pr_out.empty()) opts.out_path = pr_out;
            std::cout << run_predict(opts);
        } else if (*report) {
            std::vector<persona::fs::path> paths(rep_models.begin(), rep_models.end());
            std::string text = run_report(paths);
            if (!rep_out.empty()) write_text_atomic(rep_out, text);
            std::cout << text;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
