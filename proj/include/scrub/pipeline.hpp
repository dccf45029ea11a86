#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scrub/dataset.hpp"
#include "scrub/ensemble.hpp"
#include "scrub/metrics.hpp"
#include "scrub/models.hpp"
#include "scrub/textprep.hpp"
#include "scrub/tfidf.hpp"

namespace scrub {

struct PipelineConfig {
    std::string input_path;
    std::string text_col = "transcription";
    std::string label_col = "medical_specialty";
    std::size_t min_class_count = 355;
    double test_fraction = 0.2;
    std::uint64_t seed = 42;
    bool stratified_split = false;

    bool bias_ranked = false; // derive weights from baseline accuracies
    std::array<double, 6> bias = kDefaultBias;
    bool out_of_fold = false; // leakage-free cleaning predictions
    std::size_t oof_folds = 5;

    TokenPipelineConfig tokens;
    std::size_t min_df = 2;
    std::size_t max_features = 20000;
    std::size_t smote_k = 5;
    Hyperparameters hp; // hp.seed is ignored; per-model seeds derive from seed

    std::string out_dir; // empty = nothing written
};

// Derived stage seeds, all mixed from the master seed.
std::uint64_t balance_seed(std::uint64_t master);
std::uint64_t split_seed(std::uint64_t master);
std::uint64_t smote_seed(std::uint64_t master);
std::uint64_t oof_seed(std::uint64_t master);
std::uint64_t noise_seed(std::uint64_t master);

struct IngestResult {
    LabeledDataset dataset;   // balanced + encoded working set
    std::size_t raw_count = 0; // records surviving null-dropping, pre-balance
};

// load -> drop nulls -> filter_and_balance -> encode_labels.
IngestResult ingest_csv(const PipelineConfig& config);

// Steps A-B: split, fit TF-IDF on train, transform, SMOTE the train side,
// fit all six models, evaluate on the test side.
struct BaselineResult {
    SplitPair split;
    TfidfModel tfidf;
    std::vector<ModelPtr> models;
    std::vector<int> y_test;
    std::array<MetricsReport, 6> metrics;
    std::array<ScoreMatrix, 6> test_scores;
    std::array<double, 6> accuracies{};
};
BaselineResult run_baseline(const LabeledDataset& dataset, const PipelineConfig& config);

// Step C: predict the whole working dataset, vote, filter.
struct CleanResult {
    CleaningOutcome outcome;
    PredictionMatrix votes;
    BiasVector bias_used;
};
CleanResult run_clean(const LabeledDataset& dataset, const BaselineResult& baseline,
                      const PipelineConfig& config);

// Steps A-D: baseline -> clean -> fresh baseline on the improved dataset.
// The before and after phases use the same stage seeds; only the data differs.
struct RunReport {
    PipelineConfig config;
    std::size_t raw_count = 0;
    std::size_t balanced_count = 0;
    std::size_t improved_count = 0;
    BiasVector bias_used;
    std::vector<std::string> class_names;
    CleaningReport cleaning;
    std::vector<int> y_test_before;
    std::vector<int> y_test_after;
    std::array<MetricsReport, 6> before;
    std::array<MetricsReport, 6> after;
    std::array<ScoreMatrix, 6> scores_before;
    std::array<ScoreMatrix, 6> scores_after;
    std::vector<std::pair<std::string, double>> timings_ms; // excluded from report.json
};

struct EvaluateResult {
    RunReport report;
    LabeledDataset working; // the dataset the cleaner saw, for the removed listing
    LabeledDataset improved;
    CleanResult clean;
};
EvaluateResult run_evaluate(const LabeledDataset& dataset, std::size_t raw_count,
                            const PipelineConfig& config);

// Label-noise harness: ground truth for measuring the filter.
struct NoiseMask {
    std::vector<bool> flipped;       // by record position
    std::vector<int> original_labels; // every record's pre-noise class id
    double rate = 0.0;
};
std::pair<LabeledDataset, NoiseMask> inject_noise(const LabeledDataset& dataset, double rate,
                                                  std::uint64_t seed);

struct SynthConfig {
    std::size_t classes = 4;
    std::size_t docs_per_class = 500;
    std::size_t class_vocab = 50;
    std::size_t shared_vocab = 200;
    std::size_t doc_len = 30;
    double noise_word_fraction = 0.3;
    std::uint64_t seed = 42;
};

// Deterministic corpus whose tokens pass the cleaning pipeline unchanged:
// each class owns a disjoint token block, plus a shared block every class
// draws from at the configured fraction.
LabeledDataset generate_synthetic_corpus(const SynthConfig& config);

// synth -> inject-noise -> evaluate, then score the filter against the mask.
struct NoiseStudyResult {
    EvaluateResult evaluation;
    NoiseMask mask;
    std::size_t flipped_total = 0;
    std::size_t flipped_removed = 0;
    std::size_t clean_total = 0;
    std::size_t clean_kept = 0;
    double flipped_removed_fraction = 0.0;
    double clean_kept_fraction = 0.0;
};
NoiseStudyResult run_noise_study(const SynthConfig& synth, double noise_rate,
                                 const PipelineConfig& config);

} // namespace scrub
