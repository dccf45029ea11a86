#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "helpers.hpp"
#include "scrub/error.hpp"
#include "scrub/smote.hpp"

using scrub::ErrorKind;
using scrub::FeatureVector;
using scrub::SmoteConfig;

namespace {

FeatureVector vec(std::vector<std::pair<std::size_t, double>> entries) {
    FeatureVector v;
    v.entries = std::move(entries);
    return v;
}

bool same_vector(const FeatureVector& a, const FeatureVector& b, double tol) {
    if (a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].first != b.entries[i].first) return false;
        if (std::abs(a.entries[i].second - b.entries[i].second) > tol) return false;
    }
    return true;
}

// true if candidate lies on the segment between a and b (coordinate-wise
// consistent interpolation factor)
bool on_segment(const FeatureVector& a, const FeatureVector& b, const FeatureVector& candidate,
                double tol) {
    std::map<std::size_t, double> da;
    std::map<std::size_t, double> db;
    std::map<std::size_t, double> dc;
    for (const auto& [i, w] : a.entries) da[i] = w;
    for (const auto& [i, w] : b.entries) db[i] = w;
    for (const auto& [i, w] : candidate.entries) dc[i] = w;

    std::map<std::size_t, char> keys;
    for (const auto& [i, w] : da) keys[i] = 1;
    for (const auto& [i, w] : db) keys[i] = 1;
    for (const auto& [i, w] : dc) keys[i] = 1;

    double u = -1.0;
    for (const auto& [i, unused] : keys) {
        const double va = da.count(i) ? da[i] : 0.0;
        const double vb = db.count(i) ? db[i] : 0.0;
        const double vc = dc.count(i) ? dc[i] : 0.0;
        if (std::abs(vb - va) < 1e-12) {
            if (std::abs(vc - va) > tol) return false;
            continue;
        }
        const double this_u = (vc - va) / (vb - va);
        if (this_u < -tol || this_u > 1.0 + tol) return false;
        if (u < 0.0) {
            u = this_u;
        } else if (std::abs(this_u - u) > 1e-6) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("interpolate: midpoint example") {
    const auto mid = scrub::interpolate(vec({{0, 1.0}}), vec({{1, 1.0}}), 0.5);
    REQUIRE(mid.entries.size() == 2);
    CHECK(mid.entries[0].first == 0);
    CHECK(mid.entries[0].second == 0.5);
    CHECK(mid.entries[1].first == 1);
    CHECK(mid.entries[1].second == 0.5);
}

TEST_CASE("interpolate: exact zeros are not stored") {
    const auto v = scrub::interpolate(vec({{0, 1.0}, {2, 3.0}}), vec({{2, 3.0}}), 1.0);
    REQUIRE(v.entries.size() == 1);
    CHECK(v.entries[0].first == 2);
    CHECK(v.entries[0].second == 3.0);
}

TEST_CASE("oversample: balanced input passes through") {
    const std::vector<FeatureVector> X = {vec({{0, 1.0}}), vec({{1, 1.0}}), vec({{0, 0.5}}),
                                          vec({{1, 0.5}})};
    const std::vector<int> y = {0, 1, 0, 1};
    const auto out = scrub::oversample(X, y, {5, 42});
    CHECK(out.warnings.empty());
    REQUIRE(out.X.size() == 4);
    CHECK(out.y == y);
    for (std::size_t i = 0; i < X.size(); ++i) CHECK(same_vector(out.X[i], X[i], 0.0));
}

TEST_CASE("oversample: counts reach the maximum and originals come first") {
    std::vector<FeatureVector> X;
    std::vector<int> y;
    for (int i = 0; i < 10; ++i) {
        X.push_back(vec({{0, 1.0 + i * 0.1}}));
        y.push_back(0);
    }
    for (int i = 0; i < 7; ++i) {
        X.push_back(vec({{1, 2.0 + i * 0.1}}));
        y.push_back(1);
    }

    const auto out = scrub::oversample(X, y, {3, 7});
    REQUIRE(out.X.size() == 20);
    CHECK(out.warnings.empty());

    std::map<int, int> counts;
    for (const int cls : out.y) ++counts[cls];
    CHECK(counts[0] == 10);
    CHECK(counts[1] == 10);

    for (std::size_t i = 0; i < X.size(); ++i) {
        CHECK(out.y[i] == y[i]);
        CHECK(same_vector(out.X[i], X[i], 0.0));
    }
    for (std::size_t i = X.size(); i < out.X.size(); ++i) CHECK(out.y[i] == 1);
}

TEST_CASE("oversample: synthetic samples sit on segments between same-class parents") {
    std::vector<FeatureVector> X;
    std::vector<int> y;
    // class 0: 6 samples over 3 features; class 1: 3 samples
    X.push_back(vec({{0, 1.0}}));
    X.push_back(vec({{0, 0.8}, {1, 0.2}}));
    X.push_back(vec({{1, 1.0}}));
    X.push_back(vec({{1, 0.5}, {2, 0.5}}));
    X.push_back(vec({{2, 1.0}}));
    X.push_back(vec({{0, 0.3}, {2, 0.7}}));
    for (int i = 0; i < 6; ++i) y.push_back(0);
    X.push_back(vec({{0, 0.9}, {1, 0.1}}));
    X.push_back(vec({{1, 0.9}, {2, 0.1}}));
    X.push_back(vec({{0, 0.2}, {1, 0.3}, {2, 0.5}}));
    for (int i = 0; i < 3; ++i) y.push_back(1);

    const auto out = scrub::oversample(X, y, {2, 99});
    REQUIRE(out.X.size() == 12);

    for (std::size_t s = X.size(); s < out.X.size(); ++s) {
        const int cls = out.y[s];
        CHECK(cls == 1);
        bool found = false;
        for (std::size_t a = 0; a < X.size() && !found; ++a) {
            if (y[a] != cls) continue;
            for (std::size_t b = 0; b < X.size() && !found; ++b) {
                if (b == a || y[b] != cls) continue;
                if (on_segment(X[a], X[b], out.X[s], 1e-9)) found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("oversample: synthetic vectors are not re-normalized") {
    // two orthogonal unit parents: every strict interpolation has norm < 1
    std::vector<FeatureVector> X = {vec({{0, 1.0}}), vec({{1, 1.0}}),
                                    vec({{2, 1.0}}), vec({{3, 1.0}}), vec({{4, 1.0}})};
    std::vector<int> y = {0, 0, 1, 1, 1};
    const auto out = scrub::oversample(X, y, {1, 5});
    REQUIRE(out.X.size() == 6);
    CHECK(out.y[5] == 0);
    CHECK(out.X[5].norm_squared() < 1.0);
    CHECK(out.X[5].norm_squared() > 0.0);
}

TEST_CASE("oversample: singleton class duplicates with a warning") {
    std::vector<FeatureVector> X = {vec({{0, 1.0}}), vec({{0, 0.9}}), vec({{0, 0.8}}),
                                    vec({{1, 1.0}})};
    std::vector<int> y = {0, 0, 0, 1};
    const auto out = scrub::oversample(X, y, {5, 11});
    REQUIRE(out.X.size() == 6);
    REQUIRE(out.warnings.size() == 1);
    CHECK(out.warnings[0].find("class 1") != std::string::npos);
    CHECK(same_vector(out.X[4], X[3], 0.0));
    CHECK(same_vector(out.X[5], X[3], 0.0));
    CHECK(out.y[4] == 1);
    CHECK(out.y[5] == 1);
}

TEST_CASE("oversample: deterministic in the seed") {
    std::vector<FeatureVector> X;
    std::vector<int> y;
    for (int i = 0; i < 8; ++i) {
        X.push_back(vec({{0, 0.1 * i}, {1, 1.0 - 0.1 * i}}));
        y.push_back(0);
    }
    for (int i = 0; i < 3; ++i) {
        X.push_back(vec({{2, 0.2 * i + 0.1}}));
        y.push_back(1);
    }
    const auto a = scrub::oversample(X, y, {2, 1234});
    const auto b = scrub::oversample(X, y, {2, 1234});
    REQUIRE(a.X.size() == b.X.size());
    CHECK(a.y == b.y);
    for (std::size_t i = 0; i < a.X.size(); ++i) CHECK(same_vector(a.X[i], b.X[i], 0.0));
}

TEST_CASE("oversample: configuration and contract errors") {
    std::vector<FeatureVector> X = {vec({{0, 1.0}}), vec({{1, 1.0}})};
    CHECK(testutil::error_kind([&] { scrub::oversample(X, {0, 1}, {0, 42}); }) ==
          ErrorKind::Config);
    CHECK(testutil::error_kind([&] { scrub::oversample(X, {0}, {5, 42}); }) ==
          ErrorKind::Internal);
    CHECK(testutil::error_kind([] { scrub::oversample({}, {}, {5, 42}); }) ==
          ErrorKind::DegenerateData);
}
