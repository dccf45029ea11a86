#pragma once

#include <cstddef>
#include <vector>

#include "scrub/models.hpp"

namespace scrub::detail {

// Validates |X| == |y|, non-empty labels, and that every class id in
// [0, max(y)] occurs at least once; returns the class count.
std::size_t infer_num_classes(const std::vector<FeatureVector>& X, const std::vector<int>& y);

ModelPtr fit_nb(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                std::size_t num_classes, std::size_t num_features, const Hyperparameters& hp);
ModelPtr fit_knn(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                 std::size_t num_classes, std::size_t num_features, const Hyperparameters& hp);
ModelPtr fit_svc(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                 std::size_t num_classes, std::size_t num_features, const Hyperparameters& hp);
ModelPtr fit_dt(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                std::size_t num_classes, std::size_t num_features, const Hyperparameters& hp);
ModelPtr fit_rf(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                std::size_t num_classes, std::size_t num_features, const Hyperparameters& hp);
ModelPtr fit_lr(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                std::size_t num_classes, std::size_t num_features, const Hyperparameters& hp);

} // namespace scrub::detail
