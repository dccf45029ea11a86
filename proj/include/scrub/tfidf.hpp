#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "scrub/csv.hpp"
#include "scrub/textprep.hpp"

namespace scrub {

// Sparse feature vector: (feature index, weight) pairs sorted by index,
// zero weights never stored. Either all-zero or unit Euclidean norm.
struct FeatureVector {
    std::vector<std::pair<std::size_t, double>> entries;

    bool empty() const { return entries.empty(); }

    double dot(const FeatureVector& other) const {
        double sum = 0.0;
        auto a = entries.begin();
        auto b = other.entries.begin();
        while (a != entries.end() && b != other.entries.end()) {
            if (a->first < b->first) {
                ++a;
            } else if (b->first < a->first) {
                ++b;
            } else {
                sum += a->second * b->second;
                ++a;
                ++b;
            }
        }
        return sum;
    }

    double norm_squared() const {
        double sum = 0.0;
        for (const auto& [idx, w] : entries) sum += w * w;
        return sum;
    }
};

struct Vocabulary {
    std::map<std::string, std::size_t> term_to_index;
    std::vector<std::size_t> doc_freq; // indexed by feature index
    std::size_t num_docs = 0;
};

// Fitted TF-IDF model: idf(t) = ln((1+N) / (1+df(t))) + 1, weights are
// raw term counts times idf, rows L2-normalized unless all-zero.
struct TfidfModel {
    Vocabulary vocab;
    std::vector<double> idf; // indexed by feature index
    std::size_t min_df = 2;
    std::size_t max_features = 20000;

    std::size_t num_features() const { return idf.size(); }
};

// Builds the vocabulary from terms with df >= min_df, keeping the
// max_features highest-df terms (ties broken lexicographically); feature
// indices are assigned in lexicographic term order.
TfidfModel fit_tfidf(const std::vector<CleanDocument>& corpus, std::size_t min_df = 2,
                     std::size_t max_features = 20000);

FeatureVector transform(const TfidfModel& model, const CleanDocument& doc);

std::vector<FeatureVector> transform_all(const TfidfModel& model,
                                         const std::vector<CleanDocument>& corpus);

// Debug dump: one row per retained term (term, df, idf), in index order.
CsvTable tfidf_to_table(const TfidfModel& model);

} // namespace scrub
