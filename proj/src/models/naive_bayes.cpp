#include <cmath>
#include <vector>

#include "scrub/error.hpp"
#include "detail.hpp"

namespace scrub::detail {
namespace {

class NaiveBayesModel final : public Model {
public:
    NaiveBayesModel(std::size_t num_classes, std::size_t num_features,
                    std::vector<double> log_prior, std::vector<double> log_cond)
        : Model(ModelKind::NB, num_classes, num_features),
          log_prior_(std::move(log_prior)),
          log_cond_(std::move(log_cond)) {}

protected:
    ScoreMatrix scores_impl(const std::vector<FeatureVector>& X) const override {
        const std::size_t C = num_classes();
        const std::size_t F = num_features();
        ScoreMatrix scores(X.size(), C);
        std::vector<double> logp(C);
        for (std::size_t r = 0; r < X.size(); ++r) {
            for (std::size_t c = 0; c < C; ++c) {
                double acc = log_prior_[c];
                for (const auto& [index, value] : X[r].entries) {
                    acc += value * log_cond_[c * F + index];
                }
                logp[c] = acc;
            }
            double max_logp = logp[0];
            for (std::size_t c = 1; c < C; ++c) max_logp = std::max(max_logp, logp[c]);
            double total = 0.0;
            for (std::size_t c = 0; c < C; ++c) {
                logp[c] = std::exp(logp[c] - max_logp);
                total += logp[c];
            }
            for (std::size_t c = 0; c < C; ++c) scores.at(r, c) = logp[c] / total;
        }
        return scores;
    }

private:
    std::vector<double> log_prior_; // C
    std::vector<double> log_cond_;  // C x F, row-major
};

} // namespace

ModelPtr fit_nb(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                std::size_t num_classes, std::size_t num_features, const Hyperparameters& hp) {
    const double alpha = hp.nb_alpha;
    if (!(alpha > 0.0)) {
        throw config_error("nb_alpha must be positive, got " + std::to_string(alpha));
    }
    std::vector<double> counts(num_classes * num_features, 0.0);
    std::vector<double> class_total(num_classes, 0.0);
    std::vector<double> class_docs(num_classes, 0.0);
    for (std::size_t i = 0; i < X.size(); ++i) {
        const auto c = static_cast<std::size_t>(y[i]);
        class_docs[c] += 1.0;
        for (const auto& [index, value] : X[i].entries) {
            if (value < 0.0) throw internal_error("negative feature value in multinomial fit");
            counts[c * num_features + index] += value;
            class_total[c] += value;
        }
    }
    std::vector<double> log_prior(num_classes);
    std::vector<double> log_cond(num_classes * num_features);
    const double n = static_cast<double>(X.size());
    for (std::size_t c = 0; c < num_classes; ++c) {
        log_prior[c] = std::log(class_docs[c] / n);
        const double denom = class_total[c] + alpha * static_cast<double>(num_features);
        for (std::size_t f = 0; f < num_features; ++f) {
            log_cond[c * num_features + f] = std::log((counts[c * num_features + f] + alpha) / denom);
        }
    }
    return std::make_unique<NaiveBayesModel>(num_classes, num_features, std::move(log_prior),
                                             std::move(log_cond));
}

} // namespace scrub::detail
