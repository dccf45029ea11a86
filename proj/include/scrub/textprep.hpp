#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace scrub {

struct TokenPipelineConfig {
    std::string stopword_list_id = "en-v1";
    bool stemming_enabled = true;
    bool strip_markup = true;
};

// Tokens after the full cleaning pipeline: lowercase ASCII letters only,
// length >= 2, none on the stop-word list.
struct CleanDocument {
    std::vector<std::string> tokens;
};

// Embedded stop-word list for the given id, in sorted order.
// Unknown ids are a configuration error.
const std::vector<std::string>& stopword_list(const std::string& id);
const std::unordered_set<std::string>& stopword_set(const std::string& id);

// Porter suffix-stripping stemmer. Expects a lowercase alphabetic token;
// tokens of length <= 2 are returned unchanged.
std::string stem(std::string_view token);

// Fixed cleaning pipeline:
//   1. strip <...> markup spans (when enabled)
//   2. lowercase
//   3. replace every non-letter with a space
//   4. split on whitespace runs
//   5. drop stop words
//   6. drop length-1 tokens
//   7. stem (when enabled); stems that land on the stop-word list or
//      shrink below 2 characters are dropped to keep the output contract
//
// Only ASCII letters count as letters; all other bytes act as separators.
CleanDocument normalize(std::string_view text, const TokenPipelineConfig& config);

} // namespace scrub
