#include "scrub/smote.hpp"

#include <algorithm>
#include <map>

#include "scrub/error.hpp"
#include "scrub/rng.hpp"

namespace scrub {

FeatureVector interpolate(const FeatureVector& a, const FeatureVector& b, double u) {
    FeatureVector out;
    out.entries.reserve(a.entries.size() + b.entries.size());
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    while (ia != a.entries.end() || ib != b.entries.end()) {
        std::size_t idx;
        double va = 0.0;
        double vb = 0.0;
        if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
            idx = ia->first;
            va = ia->second;
            ++ia;
        } else if (ia == a.entries.end() || ib->first < ia->first) {
            idx = ib->first;
            vb = ib->second;
            ++ib;
        } else {
            idx = ia->first;
            va = ia->second;
            vb = ib->second;
            ++ia;
            ++ib;
        }
        const double v = va + u * (vb - va);
        if (v != 0.0) out.entries.emplace_back(idx, v);
    }
    return out;
}

namespace {

double distance_squared(const FeatureVector& a, const FeatureVector& b) {
    return a.norm_squared() + b.norm_squared() - 2.0 * a.dot(b);
}

} // namespace

SmoteResult oversample(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                       const SmoteConfig& config) {
    if (X.size() != y.size()) {
        throw internal_error("oversample: X and y lengths differ");
    }
    if (X.empty()) {
        throw degenerate_data_error("oversample on an empty training set");
    }
    if (config.k_neighbors < 1) {
        throw config_error("k_neighbors must be >= 1");
    }

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] < 0) throw internal_error("oversample: negative class id");
        by_class[y[i]].push_back(i);
    }

    std::size_t max_count = 0;
    for (const auto& [cls, members] : by_class) max_count = std::max(max_count, members.size());

    SmoteResult result;
    result.X = X;
    result.y = y;

    Rng rng(config.seed);
    for (const auto& [cls, members] : by_class) {
        const std::size_t m = members.size();
        if (m >= max_count) continue;

        if (m == 1) {
            result.warnings.push_back("class " + std::to_string(cls) +
                                      " has a single sample; SMOTE fell back to duplication");
            for (std::size_t s = m; s < max_count; ++s) {
                result.X.push_back(X[members[0]]);
                result.y.push_back(cls);
            }
            continue;
        }

        const std::size_t k = std::min(config.k_neighbors, m - 1);

        // k nearest same-class neighbors per member, ties broken by index
        std::vector<std::vector<std::size_t>> neighbors(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<std::pair<double, std::size_t>> dist;
            dist.reserve(m - 1);
            for (std::size_t j = 0; j < m; ++j) {
                if (j == i) continue;
                dist.emplace_back(distance_squared(X[members[i]], X[members[j]]), j);
            }
            std::sort(dist.begin(), dist.end());
            neighbors[i].reserve(k);
            for (std::size_t t = 0; t < k; ++t) neighbors[i].push_back(dist[t].second);
        }

        for (std::size_t s = m; s < max_count; ++s) {
            const std::size_t i = rng.uniform_index(m);
            const std::size_t nn = neighbors[i][rng.uniform_index(k)];
            const double u = rng.uniform_open01();
            result.X.push_back(interpolate(X[members[i]], X[members[nn]], u));
            result.y.push_back(cls);
        }
    }
    return result;
}

} // namespace scrub
