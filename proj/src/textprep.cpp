#include "scrub/textprep.hpp"

#include <array>
#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "scrub/error.hpp"

namespace scrub {

namespace {

// "en-v1" stop-word list. Entries are lowercase, alphabetic, sorted, and
// chosen so that re-stemming a stemmed entry is a no-op; the idempotence
// test in test_textprep.cpp guards that property.
constexpr std::array kStopwordsEnV1 = {
    "about",      "above",    "after",   "again",     "against",  "ain",
    "all",        "also",     "although", "am",       "among",    "an",
    "and",        "any",      "are",     "aren",      "as",       "at",
    "be",         "been",     "before",  "being",     "below",    "between",
    "both",       "but",      "by",      "can",       "cannot",   "could",
    "couldn",     "did",      "didn",    "do",        "does",     "doesn",
    "doing",      "don",      "down",    "during",    "each",     "either",
    "ever",       "every",    "few",     "for",       "from",     "further",
    "had",        "hadn",     "has",     "hasn",      "have",     "haven",
    "having",     "he",       "her",     "here",      "hers",     "herself",
    "him",        "himself",  "his",     "how",       "however",  "if",
    "in",         "into",     "is",      "isn",       "it",       "its",
    "itself",     "just",     "least",   "less",      "ll",       "ma",
    "may",        "me",       "might",   "mightn",    "more",     "most",
    "much",       "must",     "mustn",   "my",        "myself",   "needn",
    "never",      "no",       "nor",     "not",       "now",      "of",
    "off",        "often",    "on",      "once",      "only",     "or",
    "other",      "our",      "ours",    "ourselves", "out",      "over",
    "own",        "per",      "rather",  "re",        "same",     "shall",
    "shan",       "she",      "should",  "shouldn",   "since",    "so",
    "some",       "still",    "such",    "than",      "that",     "the",
    "their",      "theirs",   "them",    "themselves", "then",    "there",
    "these",      "they",     "this",    "those",     "though",   "through",
    "thus",       "to",       "too",     "under",     "unless",   "until",
    "up",         "upon",     "us",      "ve",        "very",     "via",
    "was",        "wasn",     "we",      "were",      "weren",    "what",
    "when",       "where",    "which",   "while",     "who",      "whom",
    "why",        "will",     "with",    "within",    "won",      "would",
    "wouldn",     "yet",      "you",     "your",      "yours",    "yourself",
    "yourselves",
};

struct StopwordTables {
    std::vector<std::string> list;
    std::unordered_set<std::string> set;
};

const StopwordTables& stopword_tables(const std::string& id) {
    static const std::map<std::string, StopwordTables> tables = [] {
        std::map<std::string, StopwordTables> t;
        StopwordTables en;
        en.list.reserve(kStopwordsEnV1.size());
        for (const char* w : kStopwordsEnV1) {
            en.list.emplace_back(w);
            en.set.emplace(w);
        }
        t.emplace("en-v1", std::move(en));
        return t;
    }();
    const auto it = tables.find(id);
    if (it == tables.end()) {
        throw config_error("unknown stop-word list id: " + id);
    }
    return it->second;
}

} // namespace

const std::vector<std::string>& stopword_list(const std::string& id) {
    return stopword_tables(id).list;
}

const std::unordered_set<std::string>& stopword_set(const std::string& id) {
    return stopword_tables(id).set;
}

CleanDocument normalize(std::string_view text, const TokenPipelineConfig& config) {
    const auto& stops = stopword_set(config.stopword_list_id);

    std::string flat;
    flat.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (config.strip_markup && c == '<') {
            const std::size_t close = text.find('>', i + 1);
            if (close != std::string_view::npos) {
                flat.push_back(' ');
                i = close + 1;
                continue;
            }
            // unmatched '<' is ordinary text
        }
        if (c >= 'A' && c <= 'Z') {
            flat.push_back(static_cast<char>(c - 'A' + 'a'));
        } else if (c >= 'a' && c <= 'z') {
            flat.push_back(c);
        } else {
            flat.push_back(' ');
        }
        ++i;
    }

    CleanDocument doc;
    std::size_t pos = 0;
    while (pos < flat.size()) {
        while (pos < flat.size() && flat[pos] == ' ') ++pos;
        std::size_t end = pos;
        while (end < flat.size() && flat[end] != ' ') ++end;
        if (end > pos) {
            std::string token = flat.substr(pos, end - pos);
            if (token.size() >= 2 && stops.count(token) == 0) {
                if (config.stemming_enabled) token = stem(token);
                if (token.size() >= 2 && stops.count(token) == 0) {
                    doc.tokens.push_back(std::move(token));
                }
            }
        }
        pos = end;
    }
    return doc;
}

} // namespace scrub
