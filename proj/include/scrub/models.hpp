#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "scrub/metrics.hpp"
#include "scrub/tfidf.hpp"

namespace scrub {

// Ordinal order is the canonical bias-vector index order.
enum class ModelKind { NB = 0, KNN = 1, SVC = 2, DT = 3, RF = 4, LR = 5 };

inline constexpr std::array<ModelKind, 6> kModelKinds = {ModelKind::NB,  ModelKind::KNN,
                                                         ModelKind::SVC, ModelKind::DT,
                                                         ModelKind::RF,  ModelKind::LR};

constexpr int model_ordinal(ModelKind kind) { return static_cast<int>(kind); }

std::string_view model_name(ModelKind kind); // "nb", "knn", "svc", "dt", "rf", "lr"

// Per-model training seed derived from the run's master seed.
constexpr std::uint64_t model_seed(std::uint64_t master_seed, ModelKind kind) {
    return master_seed * 1000 + static_cast<std::uint64_t>(model_ordinal(kind));
}

struct Hyperparameters {
    double nb_alpha = 1.0;
    std::size_t knn_k = 5;
    double svm_lambda = 1e-4;
    std::size_t svm_epochs = 50;
    std::size_t dt_max_depth = 50;
    std::size_t dt_min_split = 2;
    std::size_t rf_trees = 100;
    double rf_feature_fraction = 0.0; // 0 = automatic sqrt(F)/F
    bool rf_bootstrap = true;
    double lr_lambda = 1e-4;
    std::size_t lr_epochs = 200;
    double lr_rate = 0.5;
    std::uint64_t seed = 42;
};

// A fitted classifier. predict is always the row-wise argmax of
// predict_scores with ties resolved to the lowest class id.
class Model {
public:
    virtual ~Model() = default;

    ModelKind kind() const { return kind_; }
    std::size_t num_classes() const { return num_classes_; }
    std::size_t num_features() const { return num_features_; }

    ScoreMatrix predict_scores(const std::vector<FeatureVector>& X) const;
    std::vector<int> predict(const std::vector<FeatureVector>& X) const;

protected:
    Model(ModelKind kind, std::size_t num_classes, std::size_t num_features)
        : kind_(kind), num_classes_(num_classes), num_features_(num_features) {}

    virtual ScoreMatrix scores_impl(const std::vector<FeatureVector>& X) const = 0;

private:
    ModelKind kind_;
    std::size_t num_classes_;
    std::size_t num_features_;
};

using ModelPtr = std::unique_ptr<Model>;

// Trains one classifier. Class count is inferred from y; every class id in
// [0, max(y)] must be present at least once.
ModelPtr fit_model(ModelKind kind, const std::vector<FeatureVector>& X, const std::vector<int>& y,
                   std::size_t num_features, const Hyperparameters& hp);

// Multinomial logistic regression internals, exposed so tests can check the
// analytic gradient and the training-loss trajectory. weights are row-major
// C x F; loss = mean negative log-likelihood + (lambda/2)*||W||^2 with the
// intercept unpenalized.
double lr_loss(const std::vector<double>& weights, const std::vector<double>& bias,
               const std::vector<FeatureVector>& X, const std::vector<int>& y,
               std::size_t num_classes, std::size_t num_features, double lambda);
void lr_gradient(const std::vector<double>& weights, const std::vector<double>& bias,
                 const std::vector<FeatureVector>& X, const std::vector<int>& y,
                 std::size_t num_classes, std::size_t num_features, double lambda,
                 std::vector<double>& grad_weights, std::vector<double>& grad_bias);

// Per-epoch training loss recorded by an LR fit; rejects other kinds.
const std::vector<double>& lr_epoch_losses(const Model& model);

} // namespace scrub
