#pragma once

#include <filesystem>
#include <string>

#include "scrub/pipeline.hpp"

namespace scrub {

// Deterministic machine payload: sorted keys, no timings.
std::string run_report_json(const RunReport& report);

// Per-record cleaning verdicts and tallies.
std::string cleaning_json(const CleaningReport& report,
                          const std::vector<std::string>& class_names);

std::string timings_json(const RunReport& report);

// Human-readable before/after table in the six-models-by-five-metrics shape.
std::string summary_markdown(const RunReport& report);

// Filter quality against the injected-noise ground truth.
std::string study_json(const NoiseStudyResult& study);

// improved.csv, removed.csv, and cleaning.json for one cleaning pass.
void write_clean_outputs(const PipelineConfig& config, const LabeledDataset& working,
                         const CleanResult& clean, const std::filesystem::path& out_dir);

// report.json, summary.md, cleaning.json, timings.json, improved.csv,
// removed.csv, cm_<model>_<phase>.csv, and roc_<model>_<class>_<phase>.csv.
void write_run_outputs(const EvaluateResult& result, const std::filesystem::path& out_dir);

// Baseline-only subset: report.json (before phase only) and the be-phase
// confusion/ROC CSVs.
void write_baseline_outputs(const PipelineConfig& config, std::size_t raw_count,
                            const LabeledDataset& dataset, const BaselineResult& baseline,
                            const std::filesystem::path& out_dir);

// write_run_outputs plus study.json.
void write_study_outputs(const NoiseStudyResult& study, const std::filesystem::path& out_dir);

} // namespace scrub
