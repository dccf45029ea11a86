#include "scrub/models.hpp"

#include <cmath>

#include "scrub/error.hpp"
#include "detail.hpp"

namespace scrub {

std::string_view model_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::NB: return "nb";
    case ModelKind::KNN: return "knn";
    case ModelKind::SVC: return "svc";
    case ModelKind::DT: return "dt";
    case ModelKind::RF: return "rf";
    case ModelKind::LR: return "lr";
    }
    throw internal_error("unknown model kind");
}

ScoreMatrix Model::predict_scores(const std::vector<FeatureVector>& X) const {
    for (const auto& row : X) {
        for (const auto& [index, value] : row.entries) {
            if (index >= num_features_) {
                throw internal_error("feature index " + std::to_string(index) +
                                     " out of range for model with " +
                                     std::to_string(num_features_) + " features");
            }
            if (!std::isfinite(value)) {
                throw internal_error("non-finite feature value");
            }
        }
    }
    ScoreMatrix scores = scores_impl(X);
    for (std::size_t r = 0; r < scores.rows; ++r) {
        for (std::size_t c = 0; c < scores.cols; ++c) {
            if (!std::isfinite(scores.at(r, c))) {
                throw internal_error("non-finite score");
            }
        }
    }
    return scores;
}

std::vector<int> Model::predict(const std::vector<FeatureVector>& X) const {
    ScoreMatrix scores = predict_scores(X);
    std::vector<int> labels(scores.rows, 0);
    for (std::size_t r = 0; r < scores.rows; ++r) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < scores.cols; ++c) {
            if (scores.at(r, c) > scores.at(r, best)) best = c;
        }
        labels[r] = static_cast<int>(best);
    }
    return labels;
}

namespace detail {

std::size_t infer_num_classes(const std::vector<FeatureVector>& X, const std::vector<int>& y) {
    if (X.size() != y.size()) {
        throw internal_error("feature matrix and labels disagree: " + std::to_string(X.size()) +
                             " rows vs " + std::to_string(y.size()) + " labels");
    }
    if (y.empty()) throw degenerate_data_error("cannot train on an empty dataset");
    int max_label = 0;
    for (int label : y) {
        if (label < 0) throw internal_error("negative class id " + std::to_string(label));
        if (label > max_label) max_label = label;
    }
    std::vector<bool> seen(static_cast<std::size_t>(max_label) + 1, false);
    for (int label : y) seen[static_cast<std::size_t>(label)] = true;
    for (std::size_t c = 0; c < seen.size(); ++c) {
        if (!seen[c]) {
            throw degenerate_data_error("class " + std::to_string(c) +
                                        " has no training samples");
        }
    }
    return seen.size();
}

} // namespace detail

ModelPtr fit_model(ModelKind kind, const std::vector<FeatureVector>& X, const std::vector<int>& y,
                   std::size_t num_features, const Hyperparameters& hp) {
    const std::size_t num_classes = detail::infer_num_classes(X, y);
    for (const auto& row : X) {
        for (const auto& [index, value] : row.entries) {
            if (index >= num_features) {
                throw internal_error("training feature index " + std::to_string(index) +
                                     " out of range for " + std::to_string(num_features) +
                                     " features");
            }
            if (!std::isfinite(value)) throw internal_error("non-finite training value");
        }
    }
    switch (kind) {
    case ModelKind::NB: return detail::fit_nb(X, y, num_classes, num_features, hp);
    case ModelKind::KNN: return detail::fit_knn(X, y, num_classes, num_features, hp);
    case ModelKind::SVC: return detail::fit_svc(X, y, num_classes, num_features, hp);
    case ModelKind::DT: return detail::fit_dt(X, y, num_classes, num_features, hp);
    case ModelKind::RF: return detail::fit_rf(X, y, num_classes, num_features, hp);
    case ModelKind::LR: return detail::fit_lr(X, y, num_classes, num_features, hp);
    }
    throw internal_error("unknown model kind");
}

} // namespace scrub
