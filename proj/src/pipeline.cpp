#include "scrub/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>
#include <utility>

#include "scrub/error.hpp"
#include "scrub/rng.hpp"
#include "scrub/smote.hpp"

namespace scrub {
namespace {

// Renames module errors with the failing stage; the cleaning error keeps its
// type so the report payload survives.
template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const DegenerateCleaningError&) {
        throw;
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(name) + ": " + e.what());
    }
}

std::vector<CleanDocument> normalize_all(const LabeledDataset& dataset,
                                         const TokenPipelineConfig& tokens) {
    std::vector<CleanDocument> docs;
    docs.reserve(dataset.records.size());
    for (const auto& record : dataset.records) docs.push_back(normalize(record.text, tokens));
    return docs;
}

std::vector<int> labels_of(const LabeledDataset& dataset) {
    std::vector<int> y;
    y.reserve(dataset.records.size());
    for (const auto& record : dataset.records) y.push_back(record.class_id);
    return y;
}

class StageTimer {
public:
    explicit StageTimer(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}

    template <typename F>
    auto time(const std::string& name, F&& f) -> decltype(f()) {
        const auto start = std::chrono::steady_clock::now();
        auto result = f();
        const auto stop = std::chrono::steady_clock::now();
        sink_.push_back({name, std::chrono::duration<double, std::milli>(stop - start).count()});
        return result;
    }

private:
    std::vector<std::pair<std::string, double>>& sink_;
};

PredictionMatrix out_of_fold_predictions(const LabeledDataset& dataset,
                                         const std::vector<CleanDocument>& all_docs,
                                         const PipelineConfig& config) {
    const std::size_t n = dataset.records.size();
    const std::size_t k = config.oof_folds;
    if (k < 2) throw config_error("out-of-fold cleaning needs at least 2 folds");
    if (k > n) throw config_error("more folds than records");
    const std::vector<int> y = labels_of(dataset);

    Rng rng(oof_seed(config.seed));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    std::vector<std::size_t> fold_of(n);
    for (std::size_t i = 0; i < n; ++i) fold_of[order[i]] = i % k;

    PredictionMatrix matrix;
    matrix.rows.resize(n);
    for (std::size_t fold = 0; fold < k; ++fold) {
        std::vector<CleanDocument> train_docs;
        std::vector<int> train_y;
        std::vector<std::size_t> holdout;
        for (std::size_t i = 0; i < n; ++i) {
            if (fold_of[i] == fold) {
                holdout.push_back(i);
            } else {
                train_docs.push_back(all_docs[i]);
                train_y.push_back(y[i]);
            }
        }
        const TfidfModel tfidf = fit_tfidf(train_docs, config.min_df, config.max_features);
        std::vector<FeatureVector> X_train = transform_all(tfidf, train_docs);
        std::vector<FeatureVector> X_hold;
        X_hold.reserve(holdout.size());
        for (std::size_t i : holdout) X_hold.push_back(transform(tfidf, all_docs[i]));

        const std::uint64_t fold_master = Rng::mix(oof_seed(config.seed), fold + 1);
        const SmoteResult balanced =
            oversample(X_train, train_y, {config.smote_k, smote_seed(fold_master)});
        for (ModelKind kind : kModelKinds) {
            Hyperparameters hp = config.hp;
            hp.seed = model_seed(fold_master, kind);
            const ModelPtr model =
                fit_model(kind, balanced.X, balanced.y, tfidf.num_features(), hp);
            const std::vector<int> predictions = model->predict(X_hold);
            const auto m = static_cast<std::size_t>(model_ordinal(kind));
            for (std::size_t h = 0; h < holdout.size(); ++h) {
                matrix.rows[holdout[h]][m] = predictions[h];
            }
        }
    }
    return matrix;
}

} // namespace

std::uint64_t balance_seed(std::uint64_t master) { return Rng::mix(master, 1); }
std::uint64_t split_seed(std::uint64_t master) { return Rng::mix(master, 2); }
std::uint64_t smote_seed(std::uint64_t master) { return Rng::mix(master, 3); }
std::uint64_t oof_seed(std::uint64_t master) { return Rng::mix(master, 4); }
std::uint64_t noise_seed(std::uint64_t master) { return Rng::mix(master, 5); }

IngestResult ingest_csv(const PipelineConfig& config) {
    if (config.input_path.empty()) throw config_error("no input file given");
    IngestResult result;
    const std::vector<RawRecord> records = stage("load", [&] {
        return load_csv(config.input_path, config.text_col, config.label_col);
    });
    result.raw_count = records.size();
    const std::vector<RawRecord> balanced = stage("balance", [&] {
        return filter_and_balance(records, {config.min_class_count, balance_seed(config.seed)});
    });
    result.dataset = stage("encode", [&] { return encode_labels(balanced); });
    return result;
}

BaselineResult run_baseline(const LabeledDataset& dataset, const PipelineConfig& config) {
    BaselineResult result;
    result.split = stage("split", [&] {
        return split(dataset, config.test_fraction, split_seed(config.seed),
                     config.stratified_split);
    });
    const auto C = static_cast<std::size_t>(dataset.num_classes());
    const std::vector<CleanDocument> train_docs =
        stage("normalize", [&] { return normalize_all(result.split.train, config.tokens); });
    const std::vector<CleanDocument> test_docs =
        stage("normalize", [&] { return normalize_all(result.split.test, config.tokens); });
    result.tfidf = stage("tfidf-fit", [&] {
        return fit_tfidf(train_docs, config.min_df, config.max_features);
    });
    const std::vector<FeatureVector> X_train = transform_all(result.tfidf, train_docs);
    const std::vector<FeatureVector> X_test = transform_all(result.tfidf, test_docs);
    result.y_test = labels_of(result.split.test);
    const std::vector<int> y_train = labels_of(result.split.train);
    const SmoteResult balanced = stage("smote", [&] {
        return oversample(X_train, y_train, {config.smote_k, smote_seed(config.seed)});
    });
    for (ModelKind kind : kModelKinds) {
        Hyperparameters hp = config.hp;
        hp.seed = model_seed(config.seed, kind);
        const auto m = static_cast<std::size_t>(model_ordinal(kind));
        result.models.push_back(stage(model_name(kind).data(), [&] {
            return fit_model(kind, balanced.X, balanced.y, result.tfidf.num_features(), hp);
        }));
        result.test_scores[m] = result.models[m]->predict_scores(X_test);
        const std::vector<int> predicted = result.models[m]->predict(X_test);
        result.metrics[m] = evaluate_predictions(result.y_test, predicted, result.test_scores[m], C);
        result.accuracies[m] = result.metrics[m].accuracy;
    }
    return result;
}

CleanResult run_clean(const LabeledDataset& dataset, const BaselineResult& baseline,
                      const PipelineConfig& config) {
    CleanResult result;
    result.bias_used =
        config.bias_ranked ? derive_bias(baseline.accuracies) : BiasVector{config.bias};
    const std::vector<CleanDocument> all_docs = normalize_all(dataset, config.tokens);
    if (config.out_of_fold) {
        result.votes = stage("oof-predict", [&] {
            return out_of_fold_predictions(dataset, all_docs, config);
        });
    } else {
        const std::vector<FeatureVector> X_full = transform_all(baseline.tfidf, all_docs);
        result.votes = stage("collect", [&] {
            return collect_predictions(baseline.models, X_full);
        });
    }
    const auto C = static_cast<std::size_t>(dataset.num_classes());
    std::vector<int> verdicts(result.votes.size());
    std::vector<std::vector<double>> tallies(result.votes.size());
    for (std::size_t r = 0; r < result.votes.size(); ++r) {
        tallies[r] = vote_tally(result.votes.rows[r], result.bias_used, C);
        verdicts[r] = weighted_vote(result.votes.rows[r], result.bias_used, C);
    }
    result.outcome = filter_dataset(dataset, verdicts, tallies);
    return result;
}

EvaluateResult run_evaluate(const LabeledDataset& dataset, std::size_t raw_count,
                            const PipelineConfig& config) {
    EvaluateResult result;
    RunReport& report = result.report;
    report.config = config;
    report.raw_count = raw_count;
    report.balanced_count = dataset.records.size();
    report.class_names = dataset.class_names;
    StageTimer timer(report.timings_ms);

    const BaselineResult before =
        timer.time("baseline", [&] { return run_baseline(dataset, config); });
    result.clean = timer.time("clean", [&] { return run_clean(dataset, before, config); });
    result.working = dataset;
    result.improved = result.clean.outcome.improved;
    const BaselineResult after =
        timer.time("rebaseline", [&] { return run_baseline(result.improved, config); });

    report.improved_count = result.improved.records.size();
    if (report.improved_count > report.balanced_count ||
        (raw_count > 0 && report.balanced_count > raw_count)) {
        throw internal_error("dataset ledger is not non-increasing");
    }
    report.bias_used = result.clean.bias_used;
    report.cleaning = result.clean.outcome.report;
    report.y_test_before = before.y_test;
    report.y_test_after = after.y_test;
    report.before = before.metrics;
    report.after = after.metrics;
    report.scores_before = before.test_scores;
    report.scores_after = after.test_scores;
    return result;
}

NoiseStudyResult run_noise_study(const SynthConfig& synth, double noise_rate,
                                 const PipelineConfig& config) {
    NoiseStudyResult study;
    const LabeledDataset corpus = generate_synthetic_corpus(synth);
    auto [noisy, mask] = inject_noise(corpus, noise_rate, noise_seed(config.seed));
    study.mask = std::move(mask);
    study.evaluation = run_evaluate(noisy, corpus.records.size(), config);

    // Synthetic record ids are positions, so the mask indexes them directly.
    std::vector<bool> removed(noisy.records.size(), false);
    for (std::int64_t id : study.evaluation.clean.outcome.report.removed_ids) {
        removed[static_cast<std::size_t>(id)] = true;
    }
    for (std::size_t i = 0; i < noisy.records.size(); ++i) {
        if (study.mask.flipped[i]) {
            ++study.flipped_total;
            if (removed[i]) ++study.flipped_removed;
        } else {
            ++study.clean_total;
            if (!removed[i]) ++study.clean_kept;
        }
    }
    study.flipped_removed_fraction =
        study.flipped_total == 0 ? 1.0
                                 : static_cast<double>(study.flipped_removed) /
                                       static_cast<double>(study.flipped_total);
    study.clean_kept_fraction = study.clean_total == 0
                                    ? 1.0
                                    : static_cast<double>(study.clean_kept) /
                                          static_cast<double>(study.clean_total);
    return study;
}

} // namespace scrub
