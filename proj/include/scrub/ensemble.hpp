#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "scrub/dataset.hpp"
#include "scrub/error.hpp"
#include "scrub/models.hpp"

namespace scrub {

// Default vote weights, indexed by ModelKind ordinal (NB, KNN, SVC, DT, RF, LR).
inline constexpr std::array<double, 6> kDefaultBias = {1.0, 1.3, 0.7, 0.9, 1.1, 1.2};

struct BiasVector {
    std::array<double, 6> weights = kDefaultBias;
};

// Per-record class votes, one column per ModelKind ordinal.
struct PredictionMatrix {
    std::vector<std::array<int, 6>> rows;

    std::size_t size() const { return rows.size(); }
};

struct CleaningReport {
    std::vector<std::int64_t> kept_ids;    // record_id values, input order
    std::vector<std::int64_t> removed_ids; // record_id values, input order
    std::vector<int> ensemble_prediction; // per input record
    std::vector<std::vector<double>> tallies; // per input record, length C
    double agreement_rate = 0.0;          // kept / total
};

// Raised when cleaning would leave fewer than two classes; the report shows
// what the vote decided before the filter gave up.
class DegenerateCleaningError : public Error {
public:
    DegenerateCleaningError(const std::string& message, CleaningReport report)
        : Error(ErrorKind::DegenerateData, message), report(std::move(report)) {}

    CleaningReport report;
};

struct CleaningOutcome {
    LabeledDataset improved;
    CleaningReport report;
};

// Predicts every record with each of the six models; column order is the
// ModelKind ordinal order. Models must cover all six kinds and agree on
// class and feature counts.
PredictionMatrix collect_predictions(const std::vector<ModelPtr>& models,
                                     const std::vector<FeatureVector>& X_full);

// Adds each model's weight to the class it voted for and returns the tally.
std::vector<double> vote_tally(const std::array<int, 6>& row, const BiasVector& bias,
                               std::size_t num_classes);

// Argmax of the tally; ties resolve to the lowest class id.
int weighted_vote(const std::array<int, 6>& row, const BiasVector& bias, std::size_t num_classes);

// Keeps the records whose label matches the ensemble verdict. The overload
// with tallies stores them in the report for serialization.
CleaningOutcome filter_dataset(const LabeledDataset& dataset,
                               const std::vector<int>& ensemble_prediction);
CleaningOutcome filter_dataset(const LabeledDataset& dataset,
                               const std::vector<int>& ensemble_prediction,
                               const std::vector<std::vector<double>>& tallies);

// collect -> vote -> filter in one pass over the whole dataset.
CleaningOutcome clean_dataset(const LabeledDataset& dataset, const std::vector<ModelPtr>& models,
                              const std::vector<FeatureVector>& X_full, const BiasVector& bias);

// Ranks models ascending by baseline accuracy (ties by ModelKind ordinal)
// and assigns {0.7, 0.9, 1.0, 1.1, 1.2, 1.3} in rank order.
BiasVector derive_bias(const std::array<double, 6>& baseline_accuracies);

} // namespace scrub
