#include "scrub/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "scrub/error.hpp"
#include "scrub/numfmt.hpp"

namespace scrub {

std::int64_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::int64_t ConfusionMatrix::trace() const {
    std::int64_t sum = 0;
    for (std::size_t c = 0; c < num_classes; ++c) sum += at(c, c);
    return sum;
}

std::int64_t ConfusionMatrix::row_sum(std::size_t actual) const {
    std::int64_t sum = 0;
    for (std::size_t c = 0; c < num_classes; ++c) sum += at(actual, c);
    return sum;
}

std::int64_t ConfusionMatrix::col_sum(std::size_t predicted) const {
    std::int64_t sum = 0;
    for (std::size_t c = 0; c < num_classes; ++c) sum += at(c, predicted);
    return sum;
}

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          std::size_t num_classes) {
    if (y_true.size() != y_pred.size()) {
        throw internal_error("confusion: y_true and y_pred lengths differ");
    }
    if (y_true.empty()) {
        throw internal_error("confusion: empty label lists");
    }
    ConfusionMatrix cm(num_classes);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int t = y_true[i];
        const int p = y_pred[i];
        if (t < 0 || p < 0 || static_cast<std::size_t>(t) >= num_classes ||
            static_cast<std::size_t>(p) >= num_classes) {
            throw internal_error("confusion: class id out of range");
        }
        ++cm.at(static_cast<std::size_t>(t), static_cast<std::size_t>(p));
    }
    return cm;
}

double accuracy(const ConfusionMatrix& cm) {
    const auto total = cm.total();
    if (total <= 0) {
        throw internal_error("accuracy of an empty confusion matrix");
    }
    return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

ClassMetrics prf(const ConfusionMatrix& cm, std::size_t cls) {
    const double tp = static_cast<double>(cm.at(cls, cls));
    const double fn = static_cast<double>(cm.row_sum(cls)) - tp;
    const double fp = static_cast<double>(cm.col_sum(cls)) - tp;
    const double tn = static_cast<double>(cm.total()) - tp - fn - fp;

    ClassMetrics m;
    if (tp + fp > 0.0) {
        m.precision = tp / (tp + fp);
    } else {
        m.precision_degenerate = true;
    }
    if (tp + fn > 0.0) {
        m.recall = tp / (tp + fn);
    } else {
        m.recall_degenerate = true;
    }
    if (m.precision + m.recall > 0.0) {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    } else {
        m.f1_degenerate = true;
    }
    if (tn + fp > 0.0) {
        m.specificity = tn / (tn + fp);
    } else {
        m.specificity_degenerate = true;
    }
    return m;
}

RocCurve roc_curve(const std::vector<double>& scores, const std::vector<int>& y_true_binary) {
    if (scores.size() != y_true_binary.size()) {
        throw internal_error("roc_curve: scores and labels lengths differ");
    }
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    for (const int y : y_true_binary) {
        if (y == 1) {
            ++pos;
        } else if (y == 0) {
            ++neg;
        } else {
            throw internal_error("roc_curve: labels must be 0 or 1");
        }
    }
    if (pos == 0 || neg == 0) {
        throw degenerate_data_error("roc_curve: needs at least one positive and one negative");
    }

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&scores](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });

    RocCurve curve;
    curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});

    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double threshold = scores[order[i]];
        // consume the whole tie group before emitting a point
        while (i < order.size() && scores[order[i]] == threshold) {
            if (y_true_binary[order[i]] == 1) {
                ++tp;
            } else {
                ++fp;
            }
            ++i;
        }
        curve.points.push_back({threshold, static_cast<double>(fp) / static_cast<double>(neg),
                                static_cast<double>(tp) / static_cast<double>(pos)});
    }

    double auc = 0.0;
    for (std::size_t p = 1; p < curve.points.size(); ++p) {
        const auto& a = curve.points[p - 1];
        const auto& b = curve.points[p];
        auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
    }
    curve.auc = auc;
    return curve;
}

namespace {

MetricsReport build_report(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                           const ScoreMatrix* scores, std::size_t num_classes) {
    MetricsReport report;
    report.cm = confusion(y_true, y_pred, num_classes);
    report.accuracy = accuracy(report.cm);

    for (std::size_t c = 0; c < num_classes; ++c) {
        const auto m = prf(report.cm, c);
        report.macro_precision += m.precision;
        report.macro_recall += m.recall;
        report.macro_f1 += m.f1;
        report.macro_specificity += m.specificity;
        report.per_class.push_back(m);
    }
    const auto denom = static_cast<double>(num_classes);
    report.macro_precision /= denom;
    report.macro_recall /= denom;
    report.macro_f1 /= denom;
    report.macro_specificity /= denom;

    report.per_class_auc.assign(num_classes, std::nullopt);
    if (scores != nullptr) {
        double auc_sum = 0.0;
        std::size_t auc_count = 0;
        for (std::size_t c = 0; c < num_classes; ++c) {
            const auto actual = report.cm.row_sum(c);
            if (actual == 0 || actual == report.cm.total()) continue; // AUC undefined
            std::vector<double> class_scores(y_true.size());
            std::vector<int> binary(y_true.size());
            for (std::size_t i = 0; i < y_true.size(); ++i) {
                class_scores[i] = scores->at(i, c);
                binary[i] = y_true[i] == static_cast<int>(c) ? 1 : 0;
            }
            const auto curve = roc_curve(class_scores, binary);
            report.per_class_auc[c] = curve.auc;
            auc_sum += curve.auc;
            ++auc_count;
        }
        if (auc_count > 0) {
            report.macro_ovr_auc = auc_sum / static_cast<double>(auc_count);
        }
    }
    return report;
}

} // namespace

MetricsReport evaluate_predictions(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                   std::size_t num_classes) {
    return build_report(y_true, y_pred, nullptr, num_classes);
}

MetricsReport evaluate_predictions(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                   const ScoreMatrix& scores, std::size_t num_classes) {
    if (scores.rows != y_true.size() || scores.cols != num_classes) {
        throw internal_error("evaluate_predictions: score matrix shape mismatch");
    }
    return build_report(y_true, y_pred, &scores, num_classes);
}

CsvTable confusion_to_table(const ConfusionMatrix& cm,
                            const std::vector<std::string>& class_names) {
    if (class_names.size() != cm.num_classes) {
        throw internal_error("confusion_to_table: class name count mismatch");
    }
    CsvTable table;
    table.header.push_back("actual\\predicted");
    for (const auto& name : class_names) table.header.push_back(name);
    for (std::size_t a = 0; a < cm.num_classes; ++a) {
        std::vector<std::string> row;
        row.push_back(class_names[a]);
        for (std::size_t p = 0; p < cm.num_classes; ++p) {
            row.push_back(std::to_string(cm.at(a, p)));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable roc_to_table(const RocCurve& curve) {
    CsvTable table;
    table.header = {"threshold", "fpr", "tpr"};
    table.rows.reserve(curve.points.size());
    for (const auto& p : curve.points) {
        table.rows.push_back({format_double(p.threshold), format_double(p.fpr),
                              format_double(p.tpr)});
    }
    return table;
}

} // namespace scrub
