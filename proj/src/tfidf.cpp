#include "scrub/tfidf.hpp"

#include <algorithm>
#include <cmath>

#include "scrub/error.hpp"
#include "scrub/numfmt.hpp"

namespace scrub {

TfidfModel fit_tfidf(const std::vector<CleanDocument>& corpus, std::size_t min_df,
                     std::size_t max_features) {
    if (corpus.empty()) {
        throw degenerate_data_error("TF-IDF fit on an empty corpus");
    }
    if (min_df < 1) {
        throw config_error("min_df must be >= 1");
    }
    if (max_features < 1) {
        throw config_error("max_features must be >= 1");
    }

    std::map<std::string, std::size_t> df;
    for (const auto& doc : corpus) {
        std::map<std::string, char> seen;
        for (const auto& tok : doc.tokens) seen.emplace(tok, 1);
        for (const auto& [term, unused] : seen) ++df[term];
    }

    std::vector<std::pair<std::string, std::size_t>> retained;
    for (const auto& [term, count] : df) {
        if (count >= min_df) retained.emplace_back(term, count);
    }
    if (retained.size() > max_features) {
        // highest df first, lexicographic within a df tie
        std::stable_sort(retained.begin(), retained.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        retained.resize(max_features);
        std::sort(retained.begin(), retained.end());
    }
    if (retained.empty()) {
        throw degenerate_data_error("TF-IDF vocabulary is empty after pruning (min_df=" +
                                    std::to_string(min_df) + ")");
    }

    TfidfModel model;
    model.min_df = min_df;
    model.max_features = max_features;
    model.vocab.num_docs = corpus.size();
    model.vocab.doc_freq.reserve(retained.size());
    model.idf.reserve(retained.size());
    const double n = static_cast<double>(corpus.size());
    for (const auto& [term, count] : retained) {
        model.vocab.term_to_index.emplace(term, model.vocab.doc_freq.size());
        model.vocab.doc_freq.push_back(count);
        model.idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
    }
    return model;
}

FeatureVector transform(const TfidfModel& model, const CleanDocument& doc) {
    std::map<std::size_t, double> counts;
    for (const auto& tok : doc.tokens) {
        const auto it = model.vocab.term_to_index.find(tok);
        if (it != model.vocab.term_to_index.end()) counts[it->second] += 1.0;
    }

    FeatureVector vec;
    vec.entries.reserve(counts.size());
    double norm_sq = 0.0;
    for (const auto& [idx, count] : counts) {
        const double w = count * model.idf[idx];
        vec.entries.emplace_back(idx, w);
        norm_sq += w * w;
    }
    if (norm_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& [idx, w] : vec.entries) w *= inv;
    }
    return vec;
}

std::vector<FeatureVector> transform_all(const TfidfModel& model,
                                         const std::vector<CleanDocument>& corpus) {
    std::vector<FeatureVector> out;
    out.reserve(corpus.size());
    for (const auto& doc : corpus) out.push_back(transform(model, doc));
    return out;
}

CsvTable tfidf_to_table(const TfidfModel& model) {
    CsvTable table;
    table.header = {"term", "df", "idf"};
    table.rows.reserve(model.vocab.term_to_index.size());
    for (const auto& [term, idx] : model.vocab.term_to_index) {
        table.rows.push_back({term, std::to_string(model.vocab.doc_freq[idx]),
                              format_double(model.idf[idx])});
    }
    return table;
}

} // namespace scrub
