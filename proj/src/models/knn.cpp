#include <algorithm>
#include <cmath>
#include <vector>

#include "scrub/error.hpp"
#include "detail.hpp"

namespace scrub::detail {
namespace {

FeatureVector unit_normalized(const FeatureVector& v) {
    FeatureVector out = v;
    const double norm = std::sqrt(out.norm_squared());
    if (norm > 0.0) {
        for (auto& [index, value] : out.entries) value /= norm;
    }
    return out;
}

class KnnModel final : public Model {
public:
    KnnModel(std::size_t num_classes, std::size_t num_features, std::size_t k,
             std::vector<FeatureVector> train, std::vector<int> labels)
        : Model(ModelKind::KNN, num_classes, num_features),
          k_(k),
          train_(std::move(train)),
          labels_(std::move(labels)) {}

protected:
    ScoreMatrix scores_impl(const std::vector<FeatureVector>& X) const override {
        const std::size_t C = num_classes();
        ScoreMatrix scores(X.size(), C);
        std::vector<std::pair<double, std::size_t>> ranked(train_.size());
        std::vector<std::size_t> votes(C);
        for (std::size_t r = 0; r < X.size(); ++r) {
            const FeatureVector query = unit_normalized(X[r]);
            for (std::size_t i = 0; i < train_.size(); ++i) {
                ranked[i] = {-query.dot(train_[i]), i};
            }
            std::sort(ranked.begin(), ranked.end());
            std::fill(votes.begin(), votes.end(), std::size_t{0});
            for (std::size_t i = 0; i < k_; ++i) {
                votes[static_cast<std::size_t>(labels_[ranked[i].second])] += 1;
            }
            for (std::size_t c = 0; c < C; ++c) {
                scores.at(r, c) = static_cast<double>(votes[c]) / static_cast<double>(k_);
            }
        }
        return scores;
    }

private:
    std::size_t k_;
    std::vector<FeatureVector> train_; // unit-normalized rows
    std::vector<int> labels_;
};

} // namespace

ModelPtr fit_knn(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                 std::size_t num_classes, std::size_t num_features, const Hyperparameters& hp) {
    if (hp.knn_k < 1) throw config_error("knn_k must be at least 1");
    if (hp.knn_k > X.size()) {
        throw config_error("knn_k is " + std::to_string(hp.knn_k) + " but only " +
                           std::to_string(X.size()) + " training samples exist");
    }
    std::vector<FeatureVector> train;
    train.reserve(X.size());
    for (const auto& row : X) train.push_back(unit_normalized(row));
    return std::make_unique<KnnModel>(num_classes, num_features, hp.knn_k, std::move(train),
                                      std::vector<int>(y));
}

} // namespace scrub::detail
