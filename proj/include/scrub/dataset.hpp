#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "scrub/csv.hpp"

namespace scrub {

// One ingested row: the document text and its class name.
// record_id is the 0-based position after null-dropping and stays stable
// through balancing, splitting, and cleaning.
struct RawRecord {
    std::int64_t record_id = 0;
    std::string text;
    std::string label;
};

// Records with labels encoded to dense class ids 0..C-1.
struct LabeledDataset {
    struct Record {
        std::int64_t record_id = 0;
        std::string text;
        int class_id = 0;
    };

    std::vector<Record> records;
    std::vector<std::string> class_names;

    int num_classes() const { return static_cast<int>(class_names.size()); }
    std::size_t size() const { return records.size(); }
};

struct BalanceConfig {
    std::size_t min_class_count = 355;
    std::uint64_t seed = 42;
};

struct SplitPair {
    LabeledDataset train;
    LabeledDataset test;
    double test_fraction = 0.2;
};

// Extracts (text, label) pairs from a CSV table. Rows with an empty text or
// label field are dropped; record ids are assigned by post-drop order.
std::vector<RawRecord> records_from_table(const CsvTable& table, const std::string& text_col,
                                          const std::string& label_col);
std::vector<RawRecord> load_csv(const std::filesystem::path& path, const std::string& text_col,
                                const std::string& label_col);

// Drops classes with fewer than min_class_count records, then downsamples
// every surviving class (uniform, without replacement, seeded) to the
// minimum surviving count. Input order is preserved.
std::vector<RawRecord> filter_and_balance(const std::vector<RawRecord>& records,
                                          const BalanceConfig& config);

// Assigns class ids 0..C-1 by descending class frequency, ties broken
// lexicographically by class name.
LabeledDataset encode_labels(const std::vector<RawRecord>& records);

// Seeded uniform shuffle then partition; |test| = round(test_fraction * N).
// Record order within each side follows the parent dataset. The stratified
// variant applies the same rule per class.
SplitPair split(const LabeledDataset& dataset, double test_fraction, std::uint64_t seed,
                bool stratified = false);

// Writes the dataset in the ingestion schema (text_col, label_col) plus a
// source_record_id column.
CsvTable dataset_to_table(const LabeledDataset& dataset, const std::string& text_col,
                          const std::string& label_col);

} // namespace scrub
