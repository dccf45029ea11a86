#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scrub/csv.hpp"

namespace scrub {

// Row-major dense matrix of per-class scores: rows = records, cols = classes.
struct ScoreMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    ScoreMatrix() = default;
    ScoreMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
};

// rows = actual class, columns = predicted class
struct ConfusionMatrix {
    std::size_t num_classes = 0;
    std::vector<std::int64_t> counts; // row-major, C*C

    explicit ConfusionMatrix(std::size_t c = 0) : num_classes(c), counts(c * c, 0) {}

    std::int64_t at(std::size_t actual, std::size_t predicted) const {
        return counts[actual * num_classes + predicted];
    }
    std::int64_t& at(std::size_t actual, std::size_t predicted) {
        return counts[actual * num_classes + predicted];
    }
    std::int64_t total() const;
    std::int64_t trace() const;
    std::int64_t row_sum(std::size_t actual) const;
    std::int64_t col_sum(std::size_t predicted) const;
};

// One-vs-rest metrics for a single class. A 0/0 ratio is reported as 0 with
// the matching degeneracy flag set.
struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double specificity = 0.0;
    bool precision_degenerate = false;
    bool recall_degenerate = false;
    bool f1_degenerate = false;
    bool specificity_degenerate = false;
};

struct MetricsReport {
    ConfusionMatrix cm;
    double accuracy = 0.0;
    std::vector<ClassMetrics> per_class;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    double macro_specificity = 0.0;
    // AUC entries are absent when the class has no positives or no negatives
    // in y_true (or when no scores were supplied).
    std::vector<std::optional<double>> per_class_auc;
    std::optional<double> macro_ovr_auc;
};

struct RocPoint {
    double threshold = 0.0; // +inf on the leading (0,0) point
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          std::size_t num_classes);

double accuracy(const ConfusionMatrix& cm);

ClassMetrics prf(const ConfusionMatrix& cm, std::size_t cls);

// Threshold sweep over distinct score values (ties grouped), leading (0,0)
// point at threshold +inf, trapezoidal AUC. Needs at least one positive and
// one negative label.
RocCurve roc_curve(const std::vector<double>& scores, const std::vector<int>& y_true_binary);

MetricsReport evaluate_predictions(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                   std::size_t num_classes);

// Same, plus one-vs-rest ROC AUC per class from the score matrix columns.
MetricsReport evaluate_predictions(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                   const ScoreMatrix& scores, std::size_t num_classes);

// CSV forms. The confusion header row/column carries class names; the top-left
// cell documents the orientation.
CsvTable confusion_to_table(const ConfusionMatrix& cm, const std::vector<std::string>& class_names);
CsvTable roc_to_table(const RocCurve& curve);

} // namespace scrub
