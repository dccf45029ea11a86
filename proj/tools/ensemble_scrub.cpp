// Command-line front end: each subcommand wraps one pipeline entry point and
// writes its reports under --out-dir.
#include <array>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scrub/csv.hpp"
#include "scrub/error.hpp"
#include "scrub/pipeline.hpp"
#include "scrub/report.hpp"

namespace {

struct CliOptions {
    scrub::PipelineConfig pipeline;
    std::string bias = "fixed";
    double noise_rate = 0.15;
    scrub::SynthConfig synth;
};

void apply_bias_flag(const std::string& text, scrub::PipelineConfig& config) {
    if (text == "ranked") {
        config.bias_ranked = true;
        return;
    }
    config.bias_ranked = false;
    if (text == "fixed") return; // keep the default weights
    const std::string prefix = "fixed:";
    if (text.rfind(prefix, 0) != 0) {
        throw scrub::config_error("--bias must be 'ranked', 'fixed', or 'fixed:<w1,...,w6>'");
    }
    std::array<double, 6> weights{};
    std::size_t pos = prefix.size();
    for (std::size_t m = 0; m < 6; ++m) {
        std::size_t end = text.find(',', pos);
        if (m == 5) {
            if (end != std::string::npos) {
                throw scrub::config_error("--bias fixed: takes exactly 6 weights");
            }
            end = text.size();
        } else if (end == std::string::npos) {
            throw scrub::config_error("--bias fixed: takes exactly 6 weights");
        }
        const std::string piece = text.substr(pos, end - pos);
        try {
            std::size_t used = 0;
            weights[m] = std::stod(piece, &used);
            if (piece.empty() || used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            throw scrub::config_error("--bias weight '" + piece + "' is not a number");
        }
        pos = end + 1;
    }
    config.bias = weights;
}

void print_accuracies(const std::array<double, 6>& accuracies) {
    std::cout << std::fixed << std::setprecision(4);
    for (scrub::ModelKind kind : scrub::kModelKinds) {
        const auto m = static_cast<std::size_t>(scrub::model_ordinal(kind));
        std::cout << "  " << scrub::model_name(kind) << " test accuracy " << accuracies[m]
                  << '\n';
    }
}

void cmd_baseline(const CliOptions& opt) {
    const scrub::PipelineConfig& config = opt.pipeline;
    const scrub::IngestResult ingest = scrub::ingest_csv(config);
    const scrub::BaselineResult baseline = scrub::run_baseline(ingest.dataset, config);
    scrub::write_baseline_outputs(config, ingest.raw_count, ingest.dataset, baseline,
                                  config.out_dir);
    std::cout << "balanced " << ingest.dataset.records.size() << " of " << ingest.raw_count
              << " records across " << ingest.dataset.class_names.size() << " classes\n";
    print_accuracies(baseline.accuracies);
    std::cout << "reports written to " << config.out_dir << '\n';
}

void cmd_clean(const CliOptions& opt) {
    const scrub::PipelineConfig& config = opt.pipeline;
    const scrub::IngestResult ingest = scrub::ingest_csv(config);
    const scrub::BaselineResult baseline = scrub::run_baseline(ingest.dataset, config);
    const scrub::CleanResult clean = scrub::run_clean(ingest.dataset, baseline, config);
    scrub::write_clean_outputs(config, ingest.dataset, clean, config.out_dir);
    const scrub::CleaningReport& report = clean.outcome.report;
    std::cout << "removed " << report.removed_ids.size() << " of "
              << ingest.dataset.records.size() << " records (agreement rate " << std::fixed
              << std::setprecision(4) << report.agreement_rate << ")\n";
    std::cout << "improved dataset and verdicts written to " << config.out_dir << '\n';
}

void cmd_evaluate(const CliOptions& opt) {
    const scrub::PipelineConfig& config = opt.pipeline;
    const scrub::IngestResult ingest = scrub::ingest_csv(config);
    const scrub::EvaluateResult result =
        scrub::run_evaluate(ingest.dataset, ingest.raw_count, config);
    scrub::write_run_outputs(result, config.out_dir);
    std::cout << scrub::summary_markdown(result.report);
    std::cout << "\nreports written to " << config.out_dir << '\n';
}

void cmd_inject_noise(const CliOptions& opt) {
    const scrub::PipelineConfig& config = opt.pipeline;
    const scrub::IngestResult ingest = scrub::ingest_csv(config);
    const auto [noisy, mask] =
        scrub::inject_noise(ingest.dataset, opt.noise_rate, scrub::noise_seed(config.seed));
    std::filesystem::create_directories(config.out_dir);
    const std::filesystem::path out_dir = config.out_dir;
    scrub::write_csv(out_dir / "noisy.csv",
                     scrub::dataset_to_table(noisy, config.text_col, config.label_col));

    scrub::CsvTable table;
    table.header = {"record_id", "original_label", "noisy_label", "flipped"};
    std::size_t flips = 0;
    for (std::size_t i = 0; i < noisy.records.size(); ++i) {
        if (mask.flipped[i]) ++flips;
        table.rows.push_back({
            std::to_string(noisy.records[i].record_id),
            noisy.class_names[static_cast<std::size_t>(mask.original_labels[i])],
            noisy.class_names[static_cast<std::size_t>(noisy.records[i].class_id)],
            mask.flipped[i] ? "1" : "0",
        });
    }
    scrub::write_csv(out_dir / "noise_mask.csv", table);
    std::cout << "flipped " << flips << " of " << noisy.records.size() << " labels into "
              << config.out_dir << '\n';
}

void cmd_synth(const CliOptions& opt) {
    const scrub::LabeledDataset corpus = scrub::generate_synthetic_corpus(opt.synth);
    const std::filesystem::path out_dir = opt.pipeline.out_dir;
    std::filesystem::create_directories(out_dir);
    scrub::write_csv(
        out_dir / "corpus.csv",
        scrub::dataset_to_table(corpus, opt.pipeline.text_col, opt.pipeline.label_col));
    std::cout << "wrote " << corpus.records.size() << " records across "
              << corpus.class_names.size() << " classes to " << opt.pipeline.out_dir << '\n';
}

void cmd_full(const CliOptions& opt) {
    const scrub::NoiseStudyResult study =
        scrub::run_noise_study(opt.synth, opt.noise_rate, opt.pipeline);
    scrub::write_study_outputs(study, opt.pipeline.out_dir);
    std::cout << scrub::summary_markdown(study.evaluation.report);
    std::cout << "\nflipped records removed: " << study.flipped_removed << "/"
              << study.flipped_total << ", clean records kept: " << study.clean_kept << "/"
              << study.clean_total << '\n';
    std::cout << "reports written to " << opt.pipeline.out_dir << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cleans a labeled text dataset by vetoing records whose label disagrees with a "
                 "bias-weighted vote of six classifiers"};
    app.require_subcommand(1);

    CliOptions opt;
    scrub::PipelineConfig& config = opt.pipeline;
    config.out_dir = "out";

    app.set_config("--config")->description(
        "key=value file with # comments; command-line flags win");
    app.add_option("--input", config.input_path, "labeled CSV to work on");
    app.add_option("--text-col", config.text_col, "text column name")->capture_default_str();
    app.add_option("--label-col", config.label_col, "label column name")->capture_default_str();
    app.add_option("--min-class-count", config.min_class_count,
                   "keep classes with at least this many records, then downsample to it")
        ->capture_default_str();
    app.add_option("--test-fraction", config.test_fraction, "held-out share for metrics")
        ->capture_default_str();
    app.add_option("--seed", config.seed, "master seed; every stage seed derives from it")
        ->envname("ENSEMBLE_SCRUB_SEED")
        ->capture_default_str();
    app.add_option("--bias", opt.bias, "'ranked', 'fixed', or 'fixed:<w1,...,w6>'")
        ->capture_default_str();
    app.add_flag("--oof", config.out_of_fold, "out-of-fold cleaning predictions (leakage-free)");
    app.add_option("--oof-folds", config.oof_folds, "fold count for --oof")
        ->capture_default_str();
    app.add_flag("--stratified", config.stratified_split,
                 "stratify the train/test split by class");
    app.add_option("--min-df", config.min_df, "drop terms seen in fewer documents")
        ->capture_default_str();
    app.add_option("--max-features", config.max_features,
                   "vocabulary cap; highest document frequency wins")
        ->capture_default_str();
    app.add_option("--smote-k", config.smote_k, "neighbor count for minority oversampling")
        ->capture_default_str();
    app.add_option("--out-dir", config.out_dir, "report directory")->capture_default_str();
    app.add_option("--noise-rate", opt.noise_rate, "label flip fraction for inject-noise and full")
        ->capture_default_str();
    app.add_option("--classes", opt.synth.classes, "synthetic class count")
        ->capture_default_str();
    app.add_option("--docs-per-class", opt.synth.docs_per_class, "synthetic documents per class")
        ->capture_default_str();
    app.add_option("--class-vocab", opt.synth.class_vocab, "tokens owned by each synthetic class")
        ->capture_default_str();
    app.add_option("--shared-vocab", opt.synth.shared_vocab, "tokens shared by all classes")
        ->capture_default_str();
    app.add_option("--doc-len", opt.synth.doc_len, "tokens per synthetic document")
        ->capture_default_str();
    app.add_option("--noise-word-fraction", opt.synth.noise_word_fraction,
                   "shared-token share per synthetic document")
        ->capture_default_str();
    app.add_option("--synth-seed", opt.synth.seed, "synthetic corpus seed")
        ->capture_default_str();

    CLI::App* baseline =
        app.add_subcommand("baseline", "train and score the six models, no cleaning");
    CLI::App* clean =
        app.add_subcommand("clean", "vote out disagreeing records, write the improved dataset");
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "full run: baseline, clean, re-train, before/after report");
    CLI::App* inject =
        app.add_subcommand("inject-noise", "flip a seeded fraction of labels for benchmarking");
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic labeled corpus");
    CLI::App* full =
        app.add_subcommand("full", "noise study: synth, inject noise, evaluate the filter");
    for (CLI::App* sub : {baseline, clean, evaluate, inject, synth, full}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        apply_bias_flag(opt.bias, config);
        if (app.got_subcommand(baseline)) cmd_baseline(opt);
        if (app.got_subcommand(clean)) cmd_clean(opt);
        if (app.got_subcommand(evaluate)) cmd_evaluate(opt);
        if (app.got_subcommand(inject)) cmd_inject_noise(opt);
        if (app.got_subcommand(synth)) cmd_synth(opt);
        if (app.got_subcommand(full)) cmd_full(opt);
    } catch (const scrub::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 5;
    }
    return 0;
}
