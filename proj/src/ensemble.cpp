#include "scrub/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scrub {
namespace {

void validate_bias(const BiasVector& bias) {
    for (double w : bias.weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw config_error("bias weights must be positive finite reals");
        }
    }
}

} // namespace

PredictionMatrix collect_predictions(const std::vector<ModelPtr>& models,
                                     const std::vector<FeatureVector>& X_full) {
    if (models.size() != kModelKinds.size()) {
        throw internal_error("expected six models, got " + std::to_string(models.size()));
    }
    for (std::size_t m = 0; m < models.size(); ++m) {
        if (!models[m]) throw internal_error("model slot " + std::to_string(m) + " is empty");
        if (models[m]->kind() != kModelKinds[m]) {
            throw internal_error("model slot " + std::to_string(m) + " holds kind " +
                                 std::string(model_name(models[m]->kind())));
        }
        if (models[m]->num_classes() != models[0]->num_classes() ||
            models[m]->num_features() != models[0]->num_features()) {
            throw internal_error("models disagree on class or feature counts");
        }
    }
    PredictionMatrix matrix;
    matrix.rows.resize(X_full.size());
    for (std::size_t m = 0; m < models.size(); ++m) {
        const std::vector<int> column = models[m]->predict(X_full);
        for (std::size_t r = 0; r < column.size(); ++r) matrix.rows[r][m] = column[r];
    }
    return matrix;
}

std::vector<double> vote_tally(const std::array<int, 6>& row, const BiasVector& bias,
                               std::size_t num_classes) {
    validate_bias(bias);
    if (num_classes < 2) throw internal_error("voting needs at least two classes");
    std::vector<double> tally(num_classes, 0.0);
    for (std::size_t m = 0; m < row.size(); ++m) {
        if (row[m] < 0 || static_cast<std::size_t>(row[m]) >= num_classes) {
            throw internal_error("vote " + std::to_string(row[m]) + " outside [0, " +
                                 std::to_string(num_classes) + ")");
        }
        tally[static_cast<std::size_t>(row[m])] += bias.weights[m];
    }
    return tally;
}

int weighted_vote(const std::array<int, 6>& row, const BiasVector& bias,
                  std::size_t num_classes) {
    const std::vector<double> tally = vote_tally(row, bias, num_classes);
    std::size_t best = 0;
    for (std::size_t c = 1; c < tally.size(); ++c) {
        if (tally[c] > tally[best]) best = c;
    }
    return static_cast<int>(best);
}

CleaningOutcome filter_dataset(const LabeledDataset& dataset,
                               const std::vector<int>& ensemble_prediction) {
    return filter_dataset(dataset, ensemble_prediction, {});
}

CleaningOutcome filter_dataset(const LabeledDataset& dataset,
                               const std::vector<int>& ensemble_prediction,
                               const std::vector<std::vector<double>>& tallies) {
    if (ensemble_prediction.size() != dataset.records.size()) {
        throw internal_error("prediction length " + std::to_string(ensemble_prediction.size()) +
                             " does not match dataset size " +
                             std::to_string(dataset.records.size()));
    }
    if (!tallies.empty() && tallies.size() != dataset.records.size()) {
        throw internal_error("tally count does not match dataset size");
    }
    CleaningOutcome outcome;
    outcome.improved.class_names = dataset.class_names;
    outcome.report.ensemble_prediction = ensemble_prediction;
    outcome.report.tallies = tallies;
    for (std::size_t i = 0; i < dataset.records.size(); ++i) {
        const auto& record = dataset.records[i];
        if (record.class_id == ensemble_prediction[i]) {
            outcome.improved.records.push_back(record);
            outcome.report.kept_ids.push_back(record.record_id);
        } else {
            outcome.report.removed_ids.push_back(record.record_id);
        }
    }
    outcome.report.agreement_rate =
        dataset.records.empty()
            ? 0.0
            : static_cast<double>(outcome.report.kept_ids.size()) /
                  static_cast<double>(dataset.records.size());
    std::vector<bool> present(dataset.class_names.size(), false);
    for (const auto& record : outcome.improved.records) {
        present[static_cast<std::size_t>(record.class_id)] = true;
    }
    const auto survivors =
        static_cast<std::size_t>(std::count(present.begin(), present.end(), true));
    if (survivors < dataset.class_names.size() || survivors < 2) {
        throw DegenerateCleaningError(
            "cleaning removed every record of " +
                std::to_string(dataset.class_names.size() - survivors) +
                " class(es); refusing to continue",
            std::move(outcome.report));
    }
    return outcome;
}

CleaningOutcome clean_dataset(const LabeledDataset& dataset, const std::vector<ModelPtr>& models,
                              const std::vector<FeatureVector>& X_full, const BiasVector& bias) {
    if (X_full.size() != dataset.records.size()) {
        throw internal_error("feature matrix size does not match dataset size");
    }
    const PredictionMatrix matrix = collect_predictions(models, X_full);
    const std::size_t C = dataset.num_classes();
    std::vector<int> verdicts(matrix.size());
    std::vector<std::vector<double>> tallies(matrix.size());
    for (std::size_t r = 0; r < matrix.size(); ++r) {
        tallies[r] = vote_tally(matrix.rows[r], bias, C);
        std::size_t best = 0;
        for (std::size_t c = 1; c < tallies[r].size(); ++c) {
            if (tallies[r][c] > tallies[r][best]) best = c;
        }
        verdicts[r] = static_cast<int>(best);
    }
    return filter_dataset(dataset, verdicts, tallies);
}

BiasVector derive_bias(const std::array<double, 6>& baseline_accuracies) {
    static constexpr std::array<double, 6> kRankWeights = {0.7, 0.9, 1.0, 1.1, 1.2, 1.3};
    std::array<std::size_t, 6> order = {0, 1, 2, 3, 4, 5};
    for (double accuracy : baseline_accuracies) {
        if (!std::isfinite(accuracy)) throw internal_error("baseline accuracy is not finite");
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (baseline_accuracies[a] != baseline_accuracies[b]) {
            return baseline_accuracies[a] < baseline_accuracies[b];
        }
        return a < b;
    });
    BiasVector bias;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        bias.weights[order[rank]] = kRankWeights[rank];
    }
    return bias;
}

} // namespace scrub
