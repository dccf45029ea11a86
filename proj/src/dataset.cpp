#include "scrub/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "scrub/error.hpp"
#include "scrub/rng.hpp"

namespace scrub {

std::vector<RawRecord> records_from_table(const CsvTable& table, const std::string& text_col,
                                          const std::string& label_col) {
    const std::size_t ti = table.column(text_col);
    const std::size_t li = table.column(label_col);

    std::vector<RawRecord> records;
    records.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        if (row[ti].empty() || row[li].empty()) continue;
        RawRecord rec;
        rec.record_id = static_cast<std::int64_t>(records.size());
        rec.text = row[ti];
        rec.label = row[li];
        records.push_back(std::move(rec));
    }
    if (records.empty()) {
        throw degenerate_data_error("no records survive null-dropping");
    }
    return records;
}

std::vector<RawRecord> load_csv(const std::filesystem::path& path, const std::string& text_col,
                                const std::string& label_col) {
    return records_from_table(read_csv(path), text_col, label_col);
}

std::vector<RawRecord> filter_and_balance(const std::vector<RawRecord>& records,
                                          const BalanceConfig& config) {
    if (records.empty()) {
        throw degenerate_data_error("filter_and_balance on empty record list");
    }
    if (config.min_class_count < 1) {
        throw config_error("min_class_count must be >= 1");
    }

    // std::map keeps class iteration order deterministic (lexicographic).
    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < records.size(); ++i) {
        by_class[records[i].label].push_back(i);
    }

    std::size_t min_count = 0;
    std::size_t surviving = 0;
    for (const auto& [label, idx] : by_class) {
        if (idx.size() < config.min_class_count) continue;
        ++surviving;
        if (min_count == 0 || idx.size() < min_count) min_count = idx.size();
    }
    if (surviving < 2) {
        throw degenerate_data_error("fewer than 2 classes have at least " +
                                    std::to_string(config.min_class_count) + " records");
    }

    Rng rng(config.seed);
    std::vector<char> keep(records.size(), 0);
    for (auto& [label, idx] : by_class) {
        if (idx.size() < config.min_class_count) continue;
        // Partial Fisher-Yates: the first min_count slots are a uniform
        // sample without replacement.
        for (std::size_t i = 0; i < min_count; ++i) {
            const std::size_t j = i + rng.uniform_index(idx.size() - i);
            std::swap(idx[i], idx[j]);
        }
        for (std::size_t i = 0; i < min_count; ++i) keep[idx[i]] = 1;
    }

    std::vector<RawRecord> out;
    out.reserve(surviving * min_count);
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (keep[i]) out.push_back(records[i]);
    }
    return out;
}

LabeledDataset encode_labels(const std::vector<RawRecord>& records) {
    std::map<std::string, std::size_t> counts;
    for (const auto& rec : records) ++counts[rec.label];
    if (counts.size() < 2) {
        throw degenerate_data_error("label encoding needs at least 2 distinct classes, got " +
                                    std::to_string(counts.size()));
    }

    std::vector<std::pair<std::string, std::size_t>> order(counts.begin(), counts.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    LabeledDataset ds;
    std::map<std::string, int> class_id;
    for (const auto& [name, count] : order) {
        class_id[name] = static_cast<int>(ds.class_names.size());
        ds.class_names.push_back(name);
    }

    ds.records.reserve(records.size());
    for (const auto& rec : records) {
        ds.records.push_back({rec.record_id, rec.text, class_id[rec.label]});
    }
    return ds;
}

namespace {

LabeledDataset subset_by_flags(const LabeledDataset& parent, const std::vector<char>& in_test,
                               bool want_test) {
    LabeledDataset out;
    out.class_names = parent.class_names;
    for (std::size_t i = 0; i < parent.records.size(); ++i) {
        if ((in_test[i] != 0) == want_test) out.records.push_back(parent.records[i]);
    }
    return out;
}

} // namespace

SplitPair split(const LabeledDataset& dataset, double test_fraction, std::uint64_t seed,
                bool stratified) {
    const std::size_t n = dataset.records.size();
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw config_error("test_fraction must be in (0,1)");
    }
    if (n < 2) {
        throw degenerate_data_error("cannot split a dataset of " + std::to_string(n) + " records");
    }

    Rng rng(seed);
    std::vector<char> in_test(n, 0);

    if (!stratified) {
        const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
        if (n_test == 0 || n_test >= n) {
            throw config_error("test_fraction " + std::to_string(test_fraction) + " yields an empty side for " +
                               std::to_string(n) + " records");
        }
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        rng.shuffle(idx);
        for (std::size_t i = 0; i < n_test; ++i) in_test[idx[i]] = 1;
    } else {
        std::map<int, std::vector<std::size_t>> by_class;
        for (std::size_t i = 0; i < n; ++i) by_class[dataset.records[i].class_id].push_back(i);
        for (auto& [cls, idx] : by_class) {
            const auto n_test =
                static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(idx.size())));
            rng.shuffle(idx);
            for (std::size_t i = 0; i < n_test && i < idx.size(); ++i) in_test[idx[i]] = 1;
        }
        const auto total_test = static_cast<std::size_t>(std::count(in_test.begin(), in_test.end(), 1));
        if (total_test == 0 || total_test >= n) {
            throw config_error("stratified split left one side empty");
        }
    }

    SplitPair pair;
    pair.test_fraction = test_fraction;
    pair.train = subset_by_flags(dataset, in_test, false);
    pair.test = subset_by_flags(dataset, in_test, true);
    return pair;
}

CsvTable dataset_to_table(const LabeledDataset& dataset, const std::string& text_col,
                          const std::string& label_col) {
    CsvTable table;
    table.header = {text_col, label_col, "source_record_id"};
    table.rows.reserve(dataset.records.size());
    for (const auto& rec : dataset.records) {
        table.rows.push_back(
            {rec.text, dataset.class_names.at(rec.class_id), std::to_string(rec.record_id)});
    }
    return table;
}

} // namespace scrub
