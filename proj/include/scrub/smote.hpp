#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scrub/tfidf.hpp"

namespace scrub {

struct SmoteConfig {
    std::size_t k_neighbors = 5;
    std::uint64_t seed = 0;
};

struct SmoteResult {
    std::vector<FeatureVector> X;
    std::vector<int> y;
    // one entry per class that had to fall back to duplication
    std::vector<std::string> warnings;
};

// SMOTE interpolation: a + u * (b - a), sparse, exact zeros dropped.
// The result is deliberately not re-normalized.
FeatureVector interpolate(const FeatureVector& a, const FeatureVector& b, double u);

// Oversamples every class up to the maximum class count. Originals are
// passed through unchanged and come first; synthetic samples follow, grouped
// by ascending class id. Each synthetic sample interpolates a seeded-random
// class member toward one of its k nearest same-class neighbors (Euclidean);
// k is clamped to class size - 1, and a singleton class falls back to
// duplication with a warning.
SmoteResult oversample(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                       const SmoteConfig& config);

} // namespace scrub
