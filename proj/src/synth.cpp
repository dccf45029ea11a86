#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "scrub/error.hpp"
#include "scrub/pipeline.hpp"
#include "scrub/rng.hpp"

namespace scrub {
namespace {

// Nineteen consonants: no vowels so the stemmer cannot fire, no 's' so
// plural stripping cannot fire, no 'y' so nothing is treated as a vowel.
// Three-letter codes therefore pass the cleaning pipeline unchanged.
constexpr std::array<char, 19> kTokenAlphabet = {'b', 'c', 'd', 'f', 'g', 'h', 'j', 'k', 'l', 'm',
                                                 'n', 'p', 'q', 'r', 't', 'v', 'w', 'x', 'z'};

std::string token_for(std::size_t index) {
    std::string token(3, kTokenAlphabet[0]);
    for (int pos = 2; pos >= 0; --pos) {
        token[static_cast<std::size_t>(pos)] = kTokenAlphabet[index % kTokenAlphabet.size()];
        index /= kTokenAlphabet.size();
    }
    return token;
}

std::string class_name_for(std::size_t cls, std::size_t classes) {
    std::string suffix = std::to_string(cls);
    const std::size_t width = std::to_string(classes - 1).size();
    return "class_" + std::string(width - suffix.size(), '0') + suffix;
}

} // namespace

LabeledDataset generate_synthetic_corpus(const SynthConfig& config) {
    if (config.classes < 1 || config.docs_per_class < 1 || config.class_vocab < 1 ||
        config.shared_vocab < 1 || config.doc_len < 1) {
        throw config_error("synthetic corpus counts must all be at least 1");
    }
    if (config.noise_word_fraction < 0.0 || config.noise_word_fraction >= 1.0) {
        throw config_error("noise_word_fraction must lie in [0, 1)");
    }
    const std::size_t vocab_total = config.classes * config.class_vocab + config.shared_vocab;
    const std::size_t vocab_limit =
        kTokenAlphabet.size() * kTokenAlphabet.size() * kTokenAlphabet.size();
    if (vocab_total > vocab_limit) {
        throw config_error("vocabulary of " + std::to_string(vocab_total) +
                           " exceeds the three-letter token space");
    }
    const std::size_t shared_base = config.classes * config.class_vocab;
    const auto shared_per_doc = static_cast<std::size_t>(
        std::llround(config.noise_word_fraction * static_cast<double>(config.doc_len)));
    const std::size_t class_per_doc = config.doc_len - shared_per_doc;

    LabeledDataset dataset;
    for (std::size_t cls = 0; cls < config.classes; ++cls) {
        dataset.class_names.push_back(class_name_for(cls, config.classes));
    }
    Rng rng(config.seed);
    std::int64_t next_id = 0;
    for (std::size_t cls = 0; cls < config.classes; ++cls) {
        for (std::size_t d = 0; d < config.docs_per_class; ++d) {
            std::string text;
            for (std::size_t t = 0; t < class_per_doc; ++t) {
                if (!text.empty()) text += ' ';
                text += token_for(cls * config.class_vocab + rng.uniform_index(config.class_vocab));
            }
            for (std::size_t t = 0; t < shared_per_doc; ++t) {
                if (!text.empty()) text += ' ';
                text += token_for(shared_base + rng.uniform_index(config.shared_vocab));
            }
            dataset.records.push_back({next_id++, std::move(text), static_cast<int>(cls)});
        }
    }
    return dataset;
}

std::pair<LabeledDataset, NoiseMask> inject_noise(const LabeledDataset& dataset, double rate,
                                                  std::uint64_t seed) {
    if (rate < 0.0 || rate >= 1.0) {
        throw config_error("noise rate must lie in [0, 1), got " + std::to_string(rate));
    }
    const std::size_t C = dataset.class_names.size();
    if (C < 2) throw degenerate_data_error("noise injection needs at least two classes");
    const std::size_t n = dataset.records.size();
    const auto flips = static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));

    NoiseMask mask;
    mask.rate = rate;
    mask.flipped.assign(n, false);
    mask.original_labels.reserve(n);
    for (const auto& record : dataset.records) mask.original_labels.push_back(record.class_id);

    LabeledDataset noisy = dataset;
    Rng rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    for (std::size_t i = 0; i < flips; ++i) {
        const std::size_t idx = order[i];
        const int old_label = noisy.records[idx].class_id;
        auto pick = static_cast<int>(rng.uniform_index(C - 1));
        if (pick >= old_label) ++pick;
        noisy.records[idx].class_id = pick;
        mask.flipped[idx] = true;
    }
    return {std::move(noisy), std::move(mask)};
}

} // namespace scrub
