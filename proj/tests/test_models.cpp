#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "scrub/error.hpp"
#include "scrub/models.hpp"
#include "scrub/rng.hpp"

#include "helpers.hpp"

using scrub::FeatureVector;
using scrub::Hyperparameters;
using scrub::ModelKind;
using scrub::ScoreMatrix;

namespace {

FeatureVector fv(std::initializer_list<std::pair<std::size_t, double>> entries) {
    FeatureVector v;
    for (const auto& e : entries) v.entries.push_back(e);
    return v;
}

// Ten docs of a class-0 marker token and ten of a class-1 marker token.
void make_separable(std::vector<FeatureVector>& X, std::vector<int>& y) {
    X.clear();
    y.clear();
    for (int i = 0; i < 10; ++i) {
        X.push_back(fv({{0, 1.0}}));
        y.push_back(0);
    }
    for (int i = 0; i < 10; ++i) {
        X.push_back(fv({{1, 1.0}}));
        y.push_back(1);
    }
}

void make_random(scrub::Rng& rng, std::size_t n, std::size_t F, std::size_t C,
                 std::vector<FeatureVector>& X, std::vector<int>& y) {
    X.assign(n, {});
    y.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t f = 0; f < F; ++f) {
            if (rng.uniform_real() < 0.4) {
                X[i].entries.push_back({f, 0.25 + rng.uniform_real()});
            }
        }
        y[i] = static_cast<int>(i % C);
    }
}

} // namespace

TEST_CASE("model names and seed derivation follow the canonical order") {
    CHECK(scrub::model_name(ModelKind::NB) == "nb");
    CHECK(scrub::model_name(ModelKind::KNN) == "knn");
    CHECK(scrub::model_name(ModelKind::SVC) == "svc");
    CHECK(scrub::model_name(ModelKind::DT) == "dt");
    CHECK(scrub::model_name(ModelKind::RF) == "rf");
    CHECK(scrub::model_name(ModelKind::LR) == "lr");
    CHECK(scrub::model_seed(42, ModelKind::NB) == 42000);
    CHECK(scrub::model_seed(42, ModelKind::SVC) == 42002);
    CHECK(scrub::model_seed(42, ModelKind::LR) == 42005);
    CHECK(scrub::kModelKinds.size() == 6);
    for (std::size_t i = 0; i < scrub::kModelKinds.size(); ++i) {
        CHECK(scrub::model_ordinal(scrub::kModelKinds[i]) == static_cast<int>(i));
    }
}

TEST_CASE("naive bayes posterior matches the hand-computed value") {
    // Class 0 holds "a a" and "a b", class 1 holds "c c", raw counts,
    // alpha = 1, vocabulary {a, b, c}. For the one-token doc "a":
    // P(0 | doc) = (2/3 * 4/7) / (2/3 * 4/7 + 1/3 * 1/5) = 40/47.
    const std::vector<FeatureVector> X = {
        fv({{0, 2.0}}),
        fv({{0, 1.0}, {1, 1.0}}),
        fv({{2, 2.0}}),
    };
    const std::vector<int> y = {0, 0, 1};
    Hyperparameters hp;
    const auto model = scrub::fit_model(ModelKind::NB, X, y, 3, hp);
    const ScoreMatrix scores = model->predict_scores({fv({{0, 1.0}})});
    CHECK(std::abs(scores.at(0, 0) - 40.0 / 47.0) <= 1e-12);
    CHECK(std::abs(scores.at(0, 1) - 7.0 / 47.0) <= 1e-12);
    CHECK(model->predict({fv({{0, 1.0}})}) == std::vector<int>{0});
}

TEST_CASE("naive bayes matches a dense reimplementation on random data") {
    scrub::Rng rng(99);
    std::vector<FeatureVector> X;
    std::vector<int> y;
    const std::size_t n = 30, F = 7, C = 3;
    make_random(rng, n, F, C, X, y);
    Hyperparameters hp;
    hp.nb_alpha = 0.5;
    const auto model = scrub::fit_model(ModelKind::NB, X, y, F, hp);

    std::vector<std::vector<double>> dense(n, std::vector<double>(F, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [f, v] : X[i].entries) dense[i][f] = v;
    }
    std::vector<FeatureVector> probes = {X[0], X[5], fv({{0, 3.0}, {6, 1.0}}), fv({})};
    const ScoreMatrix scores = model->predict_scores(probes);
    for (std::size_t p = 0; p < probes.size(); ++p) {
        std::vector<double> dense_probe(F, 0.0);
        for (const auto& [f, v] : probes[p].entries) dense_probe[f] = v;
        std::vector<double> logp(C, 0.0);
        for (std::size_t c = 0; c < C; ++c) {
            double class_docs = 0.0, class_total = 0.0;
            std::vector<double> counts(F, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                if (static_cast<std::size_t>(y[i]) != c) continue;
                class_docs += 1.0;
                for (std::size_t f = 0; f < F; ++f) {
                    counts[f] += dense[i][f];
                    class_total += dense[i][f];
                }
            }
            logp[c] = std::log(class_docs / static_cast<double>(n));
            for (std::size_t f = 0; f < F; ++f) {
                logp[c] += dense_probe[f] * std::log((counts[f] + hp.nb_alpha) /
                                                     (class_total + hp.nb_alpha * F));
            }
        }
        double max_logp = logp[0];
        for (double v : logp) max_logp = std::max(max_logp, v);
        double total = 0.0;
        for (std::size_t c = 0; c < C; ++c) total += std::exp(logp[c] - max_logp);
        for (std::size_t c = 0; c < C; ++c) {
            CHECK(std::abs(scores.at(p, c) - std::exp(logp[c] - max_logp) / total) <= 1e-12);
        }
    }
}

TEST_CASE("knn votes are neighbor fractions") {
    // Five training points and k = 5, so every point votes: 3 class-0 vs 2
    // class-1 gives scores (0.6, 0.4).
    const std::vector<FeatureVector> X = {
        fv({{0, 1.0}}), fv({{0, 1.0}}), fv({{0, 1.0}}), fv({{1, 1.0}}), fv({{1, 1.0}}),
    };
    const std::vector<int> y = {0, 0, 0, 1, 1};
    Hyperparameters hp;
    hp.knn_k = 5;
    const auto model = scrub::fit_model(ModelKind::KNN, X, y, 2, hp);
    const ScoreMatrix scores = model->predict_scores({fv({{0, 1.0}})});
    CHECK(scores.at(0, 0) == 0.6);
    CHECK(scores.at(0, 1) == 0.4);
}

TEST_CASE("knn with k=1 recovers the label of an exact match") {
    const std::vector<FeatureVector> X = {
        fv({{0, 1.0}}),
        fv({{0, 0.8}, {1, 0.6}}),
        fv({{0, 0.6}, {1, 0.8}}),
        fv({{1, 1.0}}),
    };
    const std::vector<int> y = {0, 0, 1, 1};
    Hyperparameters hp;
    hp.knn_k = 1;
    const auto model = scrub::fit_model(ModelKind::KNN, X, y, 2, hp);
    const ScoreMatrix scores = model->predict_scores({fv({{0, 0.8}, {1, 0.6}})});
    CHECK(scores.at(0, 0) == 1.0);
    CHECK(scores.at(0, 1) == 0.0);
    // Cosine ignores scale: a doubled copy of a training vector still matches.
    CHECK(model->predict({fv({{0, 1.6}, {1, 1.2}})}) == std::vector<int>{0});
}

TEST_CASE("knn vote ties resolve to the lowest class id") {
    const std::vector<FeatureVector> X = {fv({{0, 1.0}}), fv({{0, 1.0}})};
    const std::vector<int> y = {1, 0};
    Hyperparameters hp;
    hp.knn_k = 2;
    const auto model = scrub::fit_model(ModelKind::KNN, X, y, 2, hp);
    const ScoreMatrix scores = model->predict_scores({fv({{0, 2.0}})});
    CHECK(scores.at(0, 0) == 0.5);
    CHECK(scores.at(0, 1) == 0.5);
    CHECK(model->predict({fv({{0, 2.0}})}) == std::vector<int>{0});
}

TEST_CASE("every kind separates the two-token toy problem") {
    std::vector<FeatureVector> X;
    std::vector<int> y;
    make_separable(X, y);
    Hyperparameters hp;
    for (ModelKind kind : scrub::kModelKinds) {
        CAPTURE(scrub::model_name(kind));
        hp.seed = scrub::model_seed(42, kind);
        const auto model = scrub::fit_model(kind, X, y, 2, hp);
        const std::vector<int> predicted = model->predict(X);
        std::size_t correct = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (predicted[i] == y[i]) ++correct;
        }
        CHECK(correct == y.size());
        CHECK(model->predict({fv({{1, 1.0}})}) == std::vector<int>{1});
        CHECK(model->predict({fv({{0, 1.0}})}) == std::vector<int>{0});
    }
}

TEST_CASE("score rows are non-negative and sum to one for every kind") {
    scrub::Rng rng(7);
    std::vector<FeatureVector> X;
    std::vector<int> y;
    make_random(rng, 24, 6, 3, X, y);
    std::vector<FeatureVector> probes;
    std::vector<int> ignored;
    make_random(rng, 8, 6, 3, probes, ignored);
    probes.push_back(fv({})); // all-zero doc must still score cleanly
    Hyperparameters hp;
    for (ModelKind kind : scrub::kModelKinds) {
        CAPTURE(scrub::model_name(kind));
        hp.seed = scrub::model_seed(3, kind);
        const auto model = scrub::fit_model(kind, X, y, 6, hp);
        const ScoreMatrix scores = model->predict_scores(probes);
        REQUIRE(scores.rows == probes.size());
        REQUIRE(scores.cols == 3);
        for (std::size_t r = 0; r < scores.rows; ++r) {
            double total = 0.0;
            for (std::size_t c = 0; c < scores.cols; ++c) {
                CHECK(scores.at(r, c) >= 0.0);
                total += scores.at(r, c);
            }
            CHECK(std::abs(total - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("predict is exactly the argmax of predict_scores") {
    scrub::Rng rng(11);
    std::vector<FeatureVector> X;
    std::vector<int> y;
    make_random(rng, 30, 5, 4, X, y);
    std::vector<FeatureVector> probes;
    std::vector<int> ignored;
    make_random(rng, 12, 5, 4, probes, ignored);
    Hyperparameters hp;
    for (ModelKind kind : scrub::kModelKinds) {
        CAPTURE(scrub::model_name(kind));
        hp.seed = scrub::model_seed(5, kind);
        const auto model = scrub::fit_model(kind, X, y, 5, hp);
        const ScoreMatrix scores = model->predict_scores(probes);
        const std::vector<int> predicted = model->predict(probes);
        for (std::size_t r = 0; r < scores.rows; ++r) {
            std::size_t best = 0;
            for (std::size_t c = 1; c < scores.cols; ++c) {
                if (scores.at(r, c) > scores.at(r, best)) best = c;
            }
            CHECK(predicted[r] == static_cast<int>(best));
        }
    }
}

TEST_CASE("fits are deterministic for a fixed seed") {
    scrub::Rng rng(23);
    std::vector<FeatureVector> X;
    std::vector<int> y;
    make_random(rng, 26, 6, 3, X, y);
    std::vector<FeatureVector> probes;
    std::vector<int> ignored;
    make_random(rng, 9, 6, 3, probes, ignored);
    Hyperparameters hp;
    for (ModelKind kind : scrub::kModelKinds) {
        CAPTURE(scrub::model_name(kind));
        hp.seed = 1234;
        const auto a = scrub::fit_model(kind, X, y, 6, hp);
        const auto b = scrub::fit_model(kind, X, y, 6, hp);
        const ScoreMatrix sa = a->predict_scores(probes);
        const ScoreMatrix sb = b->predict_scores(probes);
        REQUIRE(sa.rows == sb.rows);
        REQUIRE(sa.cols == sb.cols);
        for (std::size_t r = 0; r < sa.rows; ++r) {
            for (std::size_t c = 0; c < sa.cols; ++c) {
                CHECK(sa.at(r, c) == sb.at(r, c));
            }
        }
    }
}

TEST_CASE("a single-tree forest without bootstrap equals the decision tree") {
    scrub::Rng rng(31);
    std::vector<FeatureVector> X;
    std::vector<int> y;
    make_random(rng, 40, 8, 3, X, y);
    std::vector<FeatureVector> probes;
    std::vector<int> ignored;
    make_random(rng, 15, 8, 3, probes, ignored);
    probes.push_back(fv({}));
    Hyperparameters hp;
    hp.rf_trees = 1;
    hp.rf_bootstrap = false;
    hp.rf_feature_fraction = 1.0;
    const auto dt = scrub::fit_model(ModelKind::DT, X, y, 8, hp);
    const auto rf = scrub::fit_model(ModelKind::RF, X, y, 8, hp);
    const ScoreMatrix sd = dt->predict_scores(probes);
    const ScoreMatrix sr = rf->predict_scores(probes);
    for (std::size_t r = 0; r < sd.rows; ++r) {
        for (std::size_t c = 0; c < sd.cols; ++c) {
            CHECK(sd.at(r, c) == sr.at(r, c));
        }
    }
    CHECK(dt->predict(X) == rf->predict(X));
}

TEST_CASE("decision tree splits a one-feature dataset at the midpoint") {
    std::vector<FeatureVector> X;
    std::vector<int> y;
    for (int i = 0; i < 3; ++i) {
        X.push_back(fv({{0, 1.0}}));
        y.push_back(0);
        X.push_back(fv({{0, 3.0}}));
        y.push_back(1);
    }
    Hyperparameters hp;
    const auto model = scrub::fit_model(ModelKind::DT, X, y, 1, hp);
    CHECK(model->predict({fv({{0, 1.5}})}) == std::vector<int>{0});
    CHECK(model->predict({fv({{0, 2.5}})}) == std::vector<int>{1});
    // Pure leaves give one-hot scores.
    const ScoreMatrix scores = model->predict_scores({fv({{0, 0.5}}), fv({{0, 9.0}})});
    CHECK(scores.at(0, 0) == 1.0);
    CHECK(scores.at(0, 1) == 0.0);
    CHECK(scores.at(1, 0) == 0.0);
    CHECK(scores.at(1, 1) == 1.0);
}

TEST_CASE("decision tree treats absent entries as zeros when splitting") {
    std::vector<FeatureVector> X;
    std::vector<int> y;
    for (int i = 0; i < 4; ++i) {
        X.push_back(fv({})); // feature 0 absent, value 0
        y.push_back(0);
        X.push_back(fv({{0, 1.0}}));
        y.push_back(1);
    }
    Hyperparameters hp;
    const auto model = scrub::fit_model(ModelKind::DT, X, y, 1, hp);
    CHECK(model->predict({fv({})}) == std::vector<int>{0});
    CHECK(model->predict({fv({{0, 0.9}})}) == std::vector<int>{1});
}

TEST_CASE("decision tree stopping rules produce proportion leaves") {
    std::vector<FeatureVector> X = {fv({{0, 1.0}}), fv({{0, 2.0}})};
    std::vector<int> y = {0, 1};
    Hyperparameters hp;
    hp.dt_min_split = 3; // too few samples to split, root stays a leaf
    auto model = scrub::fit_model(ModelKind::DT, X, y, 1, hp);
    ScoreMatrix scores = model->predict_scores({fv({{0, 5.0}})});
    CHECK(scores.at(0, 0) == 0.5);
    CHECK(scores.at(0, 1) == 0.5);
    CHECK(model->predict({fv({{0, 5.0}})}) == std::vector<int>{0});

    hp = Hyperparameters{};
    hp.dt_max_depth = 0; // depth cap makes the root a leaf
    std::vector<FeatureVector> X2 = {fv({{0, 1.0}}), fv({{0, 2.0}}), fv({{0, 3.0}})};
    std::vector<int> y2 = {1, 1, 0};
    model = scrub::fit_model(ModelKind::DT, X2, y2, 1, hp);
    CHECK(model->predict({fv({{0, 1.0}})}) == std::vector<int>{1});
    scores = model->predict_scores({fv({{0, 1.0}})});
    CHECK(std::abs(scores.at(0, 1) - 2.0 / 3.0) <= 1e-15);
}

TEST_CASE("random forest stays accurate with sampled features and bootstrap") {
    std::vector<FeatureVector> X;
    std::vector<int> y;
    make_separable(X, y);
    Hyperparameters hp;
    hp.rf_trees = 25;
    hp.rf_feature_fraction = 0.5; // one candidate feature per split
    hp.seed = 99;
    const auto model = scrub::fit_model(ModelKind::RF, X, y, 2, hp);
    const std::vector<int> predicted = model->predict(X);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (predicted[i] == y[i]) ++correct;
    }
    CHECK(correct == y.size());
}

TEST_CASE("lr training loss is non-increasing on a separable problem") {
    std::vector<FeatureVector> X;
    std::vector<int> y;
    make_separable(X, y);
    Hyperparameters hp;
    hp.lr_epochs = 120;
    const auto model = scrub::fit_model(ModelKind::LR, X, y, 2, hp);
    const std::vector<double>& losses = scrub::lr_epoch_losses(*model);
    REQUIRE(losses.size() == hp.lr_epochs + 1);
    for (std::size_t e = 1; e < losses.size(); ++e) {
        CHECK(losses[e] <= losses[e - 1] + 1e-12);
    }
    CHECK(losses.front() == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(losses.back() < losses.front());
}

TEST_CASE("lr analytic gradient matches central finite differences") {
    scrub::Rng rng(17);
    std::vector<FeatureVector> X;
    std::vector<int> y;
    const std::size_t n = 12, F = 5, C = 3;
    make_random(rng, n, F, C, X, y);
    const double lambda = 0.1;
    std::vector<double> weights(C * F);
    std::vector<double> bias(C);
    for (double& w : weights) w = rng.uniform_real() - 0.5;
    for (double& b : bias) b = rng.uniform_real() - 0.5;
    std::vector<double> grad_w, grad_b;
    scrub::lr_gradient(weights, bias, X, y, C, F, lambda, grad_w, grad_b);
    const double h = 1e-6;
    auto check_close = [](double analytic, double numeric) {
        CHECK(std::abs(analytic - numeric) <= 1e-5 * (1.0 + std::abs(analytic)));
    };
    for (std::size_t j = 0; j < weights.size(); ++j) {
        std::vector<double> w_plus = weights, w_minus = weights;
        w_plus[j] += h;
        w_minus[j] -= h;
        const double numeric = (scrub::lr_loss(w_plus, bias, X, y, C, F, lambda) -
                                scrub::lr_loss(w_minus, bias, X, y, C, F, lambda)) /
                               (2.0 * h);
        check_close(grad_w[j], numeric);
    }
    for (std::size_t c = 0; c < C; ++c) {
        std::vector<double> b_plus = bias, b_minus = bias;
        b_plus[c] += h;
        b_minus[c] -= h;
        const double numeric = (scrub::lr_loss(weights, b_plus, X, y, C, F, lambda) -
                                scrub::lr_loss(weights, b_minus, X, y, C, F, lambda)) /
                               (2.0 * h);
        check_close(grad_b[c], numeric);
    }
}

TEST_CASE("lr intercept is not penalized") {
    // With zero weights the penalty term must vanish regardless of bias.
    const std::vector<FeatureVector> X = {fv({{0, 1.0}}), fv({{0, 2.0}})};
    const std::vector<int> y = {0, 1};
    const std::vector<double> weights(2, 0.0);
    const std::vector<double> bias = {5.0, -3.0};
    const double with_reg = scrub::lr_loss(weights, bias, X, y, 2, 1, 10.0);
    const double without_reg = scrub::lr_loss(weights, bias, X, y, 2, 1, 0.0);
    CHECK(with_reg == without_reg);
}

TEST_CASE("epoch losses are only available for lr models") {
    std::vector<FeatureVector> X;
    std::vector<int> y;
    make_separable(X, y);
    Hyperparameters hp;
    const auto nb = scrub::fit_model(ModelKind::NB, X, y, 2, hp);
    CHECK(testutil::error_kind([&] { (void)scrub::lr_epoch_losses(*nb); }) ==
          scrub::ErrorKind::Internal);
}

TEST_CASE("training rejects bad inputs with the right error kinds") {
    std::vector<FeatureVector> X;
    std::vector<int> y;
    make_separable(X, y);
    Hyperparameters hp;

    SUBCASE("a class id with no samples is degenerate data") {
        std::vector<int> gappy = y;
        for (int& label : gappy) {
            if (label == 1) label = 2; // class 1 becomes empty
        }
        CHECK(testutil::error_kind([&] { scrub::fit_model(ModelKind::NB, X, gappy, 2, hp); }) ==
              scrub::ErrorKind::DegenerateData);
    }
    SUBCASE("empty training set is degenerate data") {
        CHECK(testutil::error_kind([&] { scrub::fit_model(ModelKind::NB, {}, {}, 2, hp); }) ==
              scrub::ErrorKind::DegenerateData);
    }
    SUBCASE("row and label counts must agree") {
        std::vector<int> short_y(y.begin(), y.end() - 1);
        CHECK(testutil::error_kind([&] { scrub::fit_model(ModelKind::NB, X, short_y, 2, hp); }) ==
              scrub::ErrorKind::Internal);
    }
    SUBCASE("knn_k larger than the training set is a config error") {
        hp.knn_k = X.size() + 1;
        CHECK(testutil::error_kind([&] { scrub::fit_model(ModelKind::KNN, X, y, 2, hp); }) ==
              scrub::ErrorKind::Config);
    }
    SUBCASE("non-positive smoothing is a config error") {
        hp.nb_alpha = 0.0;
        CHECK(testutil::error_kind([&] { scrub::fit_model(ModelKind::NB, X, y, 2, hp); }) ==
              scrub::ErrorKind::Config);
    }
    SUBCASE("rf_feature_fraction above one is a config error") {
        hp.rf_feature_fraction = 1.5;
        CHECK(testutil::error_kind([&] { scrub::fit_model(ModelKind::RF, X, y, 2, hp); }) ==
              scrub::ErrorKind::Config);
    }
    SUBCASE("dt_min_split below two is a config error") {
        hp.dt_min_split = 1;
        CHECK(testutil::error_kind([&] { scrub::fit_model(ModelKind::DT, X, y, 2, hp); }) ==
              scrub::ErrorKind::Config);
    }
    SUBCASE("zero learning rate is a config error") {
        hp.lr_rate = 0.0;
        CHECK(testutil::error_kind([&] { scrub::fit_model(ModelKind::LR, X, y, 2, hp); }) ==
              scrub::ErrorKind::Config);
    }
    SUBCASE("training feature index beyond num_features is a contract error") {
        CHECK(testutil::error_kind([&] { scrub::fit_model(ModelKind::NB, X, y, 1, hp); }) ==
              scrub::ErrorKind::Internal);
    }
    SUBCASE("prediction feature index beyond num_features is a contract error") {
        const auto model = scrub::fit_model(ModelKind::NB, X, y, 2, hp);
        CHECK(testutil::error_kind([&] { model->predict({fv({{2, 1.0}})}); }) ==
              scrub::ErrorKind::Internal);
    }
}
