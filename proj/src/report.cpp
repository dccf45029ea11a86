#include "scrub/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "scrub/csv.hpp"
#include "scrub/error.hpp"

namespace scrub {
namespace {

using nlohmann::json;

json metrics_to_json(const MetricsReport& m, const std::vector<std::string>& class_names) {
    json per_class = json::array();
    for (std::size_t c = 0; c < m.per_class.size(); ++c) {
        const ClassMetrics& pc = m.per_class[c];
        json entry{
            {"class", class_names[c]},
            {"precision", pc.precision},
            {"recall", pc.recall},
            {"f1", pc.f1},
            {"specificity", pc.specificity},
        };
        entry["auc"] = m.per_class_auc[c] ? json(*m.per_class_auc[c]) : json(nullptr);
        json degenerate = json::array();
        if (pc.f1_degenerate) degenerate.push_back("f1");
        if (pc.precision_degenerate) degenerate.push_back("precision");
        if (pc.recall_degenerate) degenerate.push_back("recall");
        if (pc.specificity_degenerate) degenerate.push_back("specificity");
        if (!degenerate.empty()) entry["degenerate"] = degenerate;
        per_class.push_back(entry);
    }
    json confusion = json::array();
    for (std::size_t a = 0; a < m.cm.num_classes; ++a) {
        json row = json::array();
        for (std::size_t p = 0; p < m.cm.num_classes; ++p) row.push_back(m.cm.at(a, p));
        confusion.push_back(row);
    }
    json out{
        {"accuracy", m.accuracy},
        {"macro_precision", m.macro_precision},
        {"macro_recall", m.macro_recall},
        {"macro_f1", m.macro_f1},
        {"macro_specificity", m.macro_specificity},
        {"confusion", confusion},
        {"per_class", per_class},
    };
    out["macro_ovr_auc"] = m.macro_ovr_auc ? json(*m.macro_ovr_auc) : json(nullptr);
    return out;
}

json config_to_json(const PipelineConfig& c) {
    return json{
        {"input", c.input_path},
        {"text_col", c.text_col},
        {"label_col", c.label_col},
        {"min_class_count", c.min_class_count},
        {"test_fraction", c.test_fraction},
        {"seed", c.seed},
        {"stratified_split", c.stratified_split},
        {"bias_mode", c.bias_ranked ? "ranked" : "fixed"},
        {"bias", c.bias},
        {"out_of_fold", c.out_of_fold},
        {"oof_folds", c.oof_folds},
        {"stopword_list", c.tokens.stopword_list_id},
        {"stemming", c.tokens.stemming_enabled},
        {"strip_markup", c.tokens.strip_markup},
        {"min_df", c.min_df},
        {"max_features", c.max_features},
        {"smote_k", c.smote_k},
        {"hyperparameters",
         {{"nb_alpha", c.hp.nb_alpha},
          {"knn_k", c.hp.knn_k},
          {"svm_lambda", c.hp.svm_lambda},
          {"svm_epochs", c.hp.svm_epochs},
          {"dt_max_depth", c.hp.dt_max_depth},
          {"dt_min_split", c.hp.dt_min_split},
          {"rf_trees", c.hp.rf_trees},
          {"rf_feature_fraction", c.hp.rf_feature_fraction},
          {"rf_bootstrap", c.hp.rf_bootstrap},
          {"lr_lambda", c.hp.lr_lambda},
          {"lr_epochs", c.hp.lr_epochs},
          {"lr_rate", c.hp.lr_rate}}},
    };
}

std::string fmt4(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", value);
    return buffer;
}

std::string fmt4(const std::optional<double>& value) {
    return value ? fmt4(*value) : std::string("n/a");
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw input_error("cannot write " + path.string());
}

void write_phase_matrices(const RunReport& report, const std::filesystem::path& out_dir,
                          const std::array<MetricsReport, 6>& metrics,
                          const std::array<ScoreMatrix, 6>& scores,
                          const std::vector<int>& y_test, const std::string& phase) {
    for (ModelKind kind : kModelKinds) {
        const auto m = static_cast<std::size_t>(model_ordinal(kind));
        const std::string name(model_name(kind));
        write_csv(out_dir / ("cm_" + name + "_" + phase + ".csv"),
                  confusion_to_table(metrics[m].cm, report.class_names));
        for (std::size_t c = 0; c < report.class_names.size(); ++c) {
            if (!metrics[m].per_class_auc[c]) continue; // class degenerate in y_test
            std::vector<double> class_scores(y_test.size());
            std::vector<int> y01(y_test.size());
            for (std::size_t r = 0; r < y_test.size(); ++r) {
                class_scores[r] = scores[m].at(r, c);
                y01[r] = y_test[r] == static_cast<int>(c) ? 1 : 0;
            }
            write_csv(out_dir / ("roc_" + name + "_" + std::to_string(c) + "_" + phase + ".csv"),
                      roc_to_table(roc_curve(class_scores, y01)));
        }
    }
}

} // namespace

std::string run_report_json(const RunReport& report) {
    json models;
    for (ModelKind kind : kModelKinds) {
        const auto m = static_cast<std::size_t>(model_ordinal(kind));
        models[std::string(model_name(kind))] = {
            {"before", metrics_to_json(report.before[m], report.class_names)},
            {"after", metrics_to_json(report.after[m], report.class_names)},
        };
    }
    const json j{
        {"classes", report.class_names},
        {"ledger",
         {{"raw", report.raw_count},
          {"balanced", report.balanced_count},
          {"improved", report.improved_count}}},
        {"bias_weights", report.bias_used.weights},
        {"cleaning",
         {{"kept", report.cleaning.kept_ids.size()},
          {"removed", report.cleaning.removed_ids.size()},
          {"agreement_rate", report.cleaning.agreement_rate},
          {"removed_ids", report.cleaning.removed_ids}}},
        {"config", config_to_json(report.config)},
        {"models", models},
        {"note", "before and after metrics use different test splits; the after split is drawn "
                 "from the cleaned dataset, so part of any improvement is selection-driven"},
    };
    return j.dump(2) + "\n";
}

std::string cleaning_json(const CleaningReport& report,
                          const std::vector<std::string>& class_names) {
    json verdicts = json::array();
    for (int v : report.ensemble_prediction) {
        verdicts.push_back(class_names[static_cast<std::size_t>(v)]);
    }
    const json j{
        {"agreement_rate", report.agreement_rate},
        {"kept_ids", report.kept_ids},
        {"removed_ids", report.removed_ids},
        {"verdicts", verdicts},
        {"tallies", report.tallies},
    };
    return j.dump(2) + "\n";
}

std::string timings_json(const RunReport& report) {
    json stages = json::array();
    for (const auto& [name, ms] : report.timings_ms) {
        stages.push_back({{"stage", name}, {"ms", ms}});
    }
    return json{{"timings", stages}}.dump(2) + "\n";
}

std::string summary_markdown(const RunReport& report) {
    std::string md;
    md += "# Ensemble cleaning report\n\n";
    md += "## Dataset ledger\n\n";
    md += "- raw records: " + std::to_string(report.raw_count) + "\n";
    md += "- balanced records: " + std::to_string(report.balanced_count) + "\n";
    md += "- improved records: " + std::to_string(report.improved_count) + " (removed " +
          std::to_string(report.cleaning.removed_ids.size()) + ", agreement rate " +
          fmt4(report.cleaning.agreement_rate) + ")\n\n";
    md += "Bias weights (nb, knn, svc, dt, rf, lr): ";
    for (std::size_t m = 0; m < report.bias_used.weights.size(); ++m) {
        if (m > 0) md += ", ";
        md += fmt4(report.bias_used.weights[m]);
    }
    md += "\n\n";
    md += "Note: before (BE) and after (AE) metrics use different test splits; the AE split is "
          "drawn from the cleaned dataset, so part of any improvement is selection-driven.\n\n";
    md += "## Model quality before vs after cleaning\n\n";
    md += "| Model | Accuracy BE | Accuracy AE | Precision BE | Precision AE | Recall BE | "
          "Recall AE | F1 BE | F1 AE | ROC AUC BE | ROC AUC AE |\n";
    md += "|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (ModelKind kind : kModelKinds) {
        const auto m = static_cast<std::size_t>(model_ordinal(kind));
        const MetricsReport& be = report.before[m];
        const MetricsReport& ae = report.after[m];
        md += "| " + std::string(model_name(kind)) + " | " + fmt4(be.accuracy) + " | " +
              fmt4(ae.accuracy) + " | " + fmt4(be.macro_precision) + " | " +
              fmt4(ae.macro_precision) + " | " + fmt4(be.macro_recall) + " | " +
              fmt4(ae.macro_recall) + " | " + fmt4(be.macro_f1) + " | " + fmt4(ae.macro_f1) +
              " | " + fmt4(be.macro_ovr_auc) + " | " + fmt4(ae.macro_ovr_auc) + " |\n";
    }
    return md;
}

std::string study_json(const NoiseStudyResult& study) {
    json accuracy_before, accuracy_after;
    double mean_improvement = 0.0;
    for (ModelKind kind : kModelKinds) {
        const auto m = static_cast<std::size_t>(model_ordinal(kind));
        const std::string name(model_name(kind));
        accuracy_before[name] = study.evaluation.report.before[m].accuracy;
        accuracy_after[name] = study.evaluation.report.after[m].accuracy;
        mean_improvement += (study.evaluation.report.after[m].accuracy -
                             study.evaluation.report.before[m].accuracy) /
                            6.0;
    }
    const json j{
        {"noise_rate", study.mask.rate},
        {"flipped_total", study.flipped_total},
        {"flipped_removed", study.flipped_removed},
        {"flipped_removed_fraction", study.flipped_removed_fraction},
        {"clean_total", study.clean_total},
        {"clean_kept", study.clean_kept},
        {"clean_kept_fraction", study.clean_kept_fraction},
        {"accuracy_before", accuracy_before},
        {"accuracy_after", accuracy_after},
        {"mean_accuracy_improvement", mean_improvement},
    };
    return j.dump(2) + "\n";
}

void write_clean_outputs(const PipelineConfig& config, const LabeledDataset& working,
                         const CleanResult& clean, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const CleaningReport& cleaning = clean.outcome.report;
    const std::vector<std::string>& class_names = working.class_names;
    write_text(out_dir / "cleaning.json", cleaning_json(cleaning, class_names));
    write_csv(out_dir / "improved.csv",
              dataset_to_table(clean.outcome.improved, config.text_col, config.label_col));

    CsvTable removed;
    removed.header = {"record_id", "label", "ensemble_prediction",
                      "vote_nb",   "vote_knn", "vote_svc",
                      "vote_dt",   "vote_rf",  "vote_lr"};
    for (std::size_t i = 0; i < working.records.size(); ++i) {
        const auto& record = working.records[i];
        const int verdict = cleaning.ensemble_prediction[i];
        if (record.class_id == verdict) continue;
        std::vector<std::string> row = {
            std::to_string(record.record_id),
            class_names[static_cast<std::size_t>(record.class_id)],
            class_names[static_cast<std::size_t>(verdict)],
        };
        for (std::size_t m = 0; m < 6; ++m) {
            row.push_back(class_names[static_cast<std::size_t>(clean.votes.rows[i][m])]);
        }
        removed.rows.push_back(std::move(row));
    }
    write_csv(out_dir / "removed.csv", removed);
}

void write_run_outputs(const EvaluateResult& result, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const RunReport& report = result.report;
    write_text(out_dir / "report.json", run_report_json(report));
    write_text(out_dir / "summary.md", summary_markdown(report));
    write_text(out_dir / "timings.json", timings_json(report));
    write_clean_outputs(report.config, result.working, result.clean, out_dir);

    write_phase_matrices(report, out_dir, report.before, report.scores_before,
                         report.y_test_before, "be");
    write_phase_matrices(report, out_dir, report.after, report.scores_after, report.y_test_after,
                         "ae");
}

void write_baseline_outputs(const PipelineConfig& config, std::size_t raw_count,
                            const LabeledDataset& dataset, const BaselineResult& baseline,
                            const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    json models;
    for (ModelKind kind : kModelKinds) {
        const auto m = static_cast<std::size_t>(model_ordinal(kind));
        models[std::string(model_name(kind))] = {
            {"before", metrics_to_json(baseline.metrics[m], dataset.class_names)},
        };
    }
    const json j{
        {"classes", dataset.class_names},
        {"ledger", {{"raw", raw_count}, {"balanced", dataset.records.size()}}},
        {"config", config_to_json(config)},
        {"models", models},
    };
    write_text(out_dir / "report.json", j.dump(2) + "\n");
    RunReport shim;
    shim.class_names = dataset.class_names;
    write_phase_matrices(shim, out_dir, baseline.metrics, baseline.test_scores, baseline.y_test,
                         "be");
}

void write_study_outputs(const NoiseStudyResult& study, const std::filesystem::path& out_dir) {
    write_run_outputs(study.evaluation, out_dir);
    write_text(out_dir / "study.json", study_json(study));
}

} // namespace scrub
