#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "scrub/error.hpp"
#include "scrub/rng.hpp"
#include "detail.hpp"

namespace scrub::detail {
namespace {

double sparse_dot_dense(const FeatureVector& x, const std::vector<double>& w, std::size_t offset) {
    double acc = 0.0;
    for (const auto& [index, value] : x.entries) acc += value * w[offset + index];
    return acc;
}

class SvcModel final : public Model {
public:
    SvcModel(std::size_t num_classes, std::size_t num_features, std::vector<double> weights,
             std::vector<double> bias)
        : Model(ModelKind::SVC, num_classes, num_features),
          weights_(std::move(weights)),
          bias_(std::move(bias)) {}

protected:
    // One-vs-rest margins squashed through the logistic function, then
    // renormalized; monotone per row, so argmax equals argmax margin.
    ScoreMatrix scores_impl(const std::vector<FeatureVector>& X) const override {
        const std::size_t C = num_classes();
        const std::size_t F = num_features();
        ScoreMatrix scores(X.size(), C);
        for (std::size_t r = 0; r < X.size(); ++r) {
            double total = 0.0;
            for (std::size_t c = 0; c < C; ++c) {
                const double margin = sparse_dot_dense(X[r], weights_, c * F) + bias_[c];
                const double p = 1.0 / (1.0 + std::exp(-margin));
                scores.at(r, c) = p;
                total += p;
            }
            for (std::size_t c = 0; c < C; ++c) scores.at(r, c) /= total;
        }
        return scores;
    }

private:
    std::vector<double> weights_; // C x F, row-major
    std::vector<double> bias_;    // C
};

class LrModel final : public Model {
public:
    LrModel(std::size_t num_classes, std::size_t num_features, std::vector<double> weights,
            std::vector<double> bias, std::vector<double> epoch_losses)
        : Model(ModelKind::LR, num_classes, num_features),
          weights_(std::move(weights)),
          bias_(std::move(bias)),
          epoch_losses_(std::move(epoch_losses)) {}

    const std::vector<double>& epoch_losses() const { return epoch_losses_; }

protected:
    ScoreMatrix scores_impl(const std::vector<FeatureVector>& X) const override {
        const std::size_t C = num_classes();
        const std::size_t F = num_features();
        ScoreMatrix scores(X.size(), C);
        std::vector<double> logits(C);
        for (std::size_t r = 0; r < X.size(); ++r) {
            for (std::size_t c = 0; c < C; ++c) {
                logits[c] = sparse_dot_dense(X[r], weights_, c * F) + bias_[c];
            }
            const double max_logit = *std::max_element(logits.begin(), logits.end());
            double total = 0.0;
            for (std::size_t c = 0; c < C; ++c) {
                logits[c] = std::exp(logits[c] - max_logit);
                total += logits[c];
            }
            for (std::size_t c = 0; c < C; ++c) scores.at(r, c) = logits[c] / total;
        }
        return scores;
    }

private:
    std::vector<double> weights_; // C x F, row-major
    std::vector<double> bias_;    // C
    std::vector<double> epoch_losses_;
};

// Mean NLL + (lambda/2)*||W||^2 and, when grad_* are non-null, its gradient.
double lr_loss_and_gradient(const std::vector<double>& weights, const std::vector<double>& bias,
                            const std::vector<FeatureVector>& X, const std::vector<int>& y,
                            std::size_t C, std::size_t F, double lambda,
                            std::vector<double>* grad_weights, std::vector<double>* grad_bias) {
    const double n = static_cast<double>(X.size());
    if (grad_weights) {
        grad_weights->assign(C * F, 0.0);
        grad_bias->assign(C, 0.0);
    }
    double loss = 0.0;
    std::vector<double> logits(C);
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t c = 0; c < C; ++c) {
            logits[c] = sparse_dot_dense(X[i], weights, c * F) + bias[c];
        }
        const double max_logit = *std::max_element(logits.begin(), logits.end());
        double sum_exp = 0.0;
        for (std::size_t c = 0; c < C; ++c) sum_exp += std::exp(logits[c] - max_logit);
        const double lse = max_logit + std::log(sum_exp);
        loss += lse - logits[static_cast<std::size_t>(y[i])];
        if (grad_weights) {
            for (std::size_t c = 0; c < C; ++c) {
                const double p = std::exp(logits[c] - lse);
                const double coeff = (p - (static_cast<std::size_t>(y[i]) == c ? 1.0 : 0.0)) / n;
                (*grad_bias)[c] += coeff;
                for (const auto& [index, value] : X[i].entries) {
                    (*grad_weights)[c * F + index] += coeff * value;
                }
            }
        }
    }
    loss /= n;
    double penalty = 0.0;
    for (std::size_t j = 0; j < C * F; ++j) penalty += weights[j] * weights[j];
    loss += 0.5 * lambda * penalty;
    if (grad_weights) {
        for (std::size_t j = 0; j < C * F; ++j) (*grad_weights)[j] += lambda * weights[j];
    }
    return loss;
}

} // namespace

ModelPtr fit_svc(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                 std::size_t num_classes, std::size_t num_features, const Hyperparameters& hp) {
    if (hp.svm_lambda < 0.0) throw config_error("svm_lambda must be non-negative");
    if (hp.svm_epochs < 1) throw config_error("svm_epochs must be at least 1");
    const std::size_t n = X.size();
    const std::size_t F = num_features;
    const double lambda = hp.svm_lambda;
    std::vector<double> weights(num_classes * F, 0.0);
    std::vector<double> bias(num_classes, 0.0);
    for (std::size_t cls = 0; cls < num_classes; ++cls) {
        // Pegasos-style hinge subgradient descent on the one-vs-rest problem,
        // with the weight vector kept as scale * direction so each update
        // touches only the nonzero coordinates of one sample.
        Rng rng(Rng::mix(hp.seed, cls));
        std::vector<double> v(F, 0.0);
        double scale = 1.0;
        double b = 0.0;
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::size_t t = 0;
        for (std::size_t epoch = 0; epoch < hp.svm_epochs; ++epoch) {
            rng.shuffle(order);
            for (std::size_t i : order) {
                t += 1;
                const double eta =
                    lambda > 0.0 ? 1.0 / (lambda * static_cast<double>(t))
                                 : 1.0 / std::sqrt(static_cast<double>(t));
                const double z = y[i] == static_cast<int>(cls) ? 1.0 : -1.0;
                const double margin = z * (scale * sparse_dot_dense(X[i], v, 0) + b);
                if (lambda > 0.0) {
                    scale *= 1.0 - eta * lambda;
                    if (std::abs(scale) < 1e-100) {
                        for (double& w : v) w *= scale;
                        scale = 1.0;
                    }
                }
                if (margin < 1.0) {
                    const double step = eta * z / scale;
                    for (const auto& [index, value] : X[i].entries) v[index] += step * value;
                    b += eta * z;
                }
            }
        }
        for (std::size_t f = 0; f < F; ++f) weights[cls * F + f] = scale * v[f];
        bias[cls] = b;
    }
    return std::make_unique<SvcModel>(num_classes, num_features, std::move(weights),
                                      std::move(bias));
}

ModelPtr fit_lr(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                std::size_t num_classes, std::size_t num_features, const Hyperparameters& hp) {
    if (hp.lr_lambda < 0.0) throw config_error("lr_lambda must be non-negative");
    if (hp.lr_epochs < 1) throw config_error("lr_epochs must be at least 1");
    if (!(hp.lr_rate > 0.0)) throw config_error("lr_rate must be positive");
    const std::size_t C = num_classes;
    const std::size_t F = num_features;
    std::vector<double> weights(C * F, 0.0);
    std::vector<double> bias(C, 0.0);
    std::vector<double> epoch_losses;
    epoch_losses.reserve(hp.lr_epochs + 1);
    std::vector<double> grad_weights;
    std::vector<double> grad_bias;
    for (std::size_t epoch = 0; epoch < hp.lr_epochs; ++epoch) {
        const double loss = lr_loss_and_gradient(weights, bias, X, y, C, F, hp.lr_lambda,
                                                 &grad_weights, &grad_bias);
        epoch_losses.push_back(loss);
        for (std::size_t j = 0; j < C * F; ++j) weights[j] -= hp.lr_rate * grad_weights[j];
        for (std::size_t c = 0; c < C; ++c) bias[c] -= hp.lr_rate * grad_bias[c];
    }
    epoch_losses.push_back(
        lr_loss_and_gradient(weights, bias, X, y, C, F, hp.lr_lambda, nullptr, nullptr));
    return std::make_unique<LrModel>(C, F, std::move(weights), std::move(bias),
                                     std::move(epoch_losses));
}

} // namespace scrub::detail

namespace scrub {

double lr_loss(const std::vector<double>& weights, const std::vector<double>& bias,
               const std::vector<FeatureVector>& X, const std::vector<int>& y,
               std::size_t num_classes, std::size_t num_features, double lambda) {
    return detail::lr_loss_and_gradient(weights, bias, X, y, num_classes, num_features, lambda,
                                        nullptr, nullptr);
}

void lr_gradient(const std::vector<double>& weights, const std::vector<double>& bias,
                 const std::vector<FeatureVector>& X, const std::vector<int>& y,
                 std::size_t num_classes, std::size_t num_features, double lambda,
                 std::vector<double>& grad_weights, std::vector<double>& grad_bias) {
    detail::lr_loss_and_gradient(weights, bias, X, y, num_classes, num_features, lambda,
                                 &grad_weights, &grad_bias);
}

const std::vector<double>& lr_epoch_losses(const Model& model) {
    const auto* lr = dynamic_cast<const detail::LrModel*>(&model);
    if (lr == nullptr) throw internal_error("epoch losses are only recorded for lr models");
    return lr->epoch_losses();
}

} // namespace scrub
