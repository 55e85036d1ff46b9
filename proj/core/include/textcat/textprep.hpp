#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace textcat {

struct TokenSequence {
    std::string doc_id;
    std::vector<std::string> tokens;  // nonempty, lowercase, no whitespace

    friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

using StopwordSet = std::unordered_set<std::string>;

/// Parses a stopword list: one word per line, `#` lines and blank lines ignored.
StopwordSet parse_stopwords(std::string_view text);
StopwordSet load_stopwords(const std::filesystem::path& path);
/// The English list compiled in from core/data/stopwords_en.txt.
const StopwordSet& default_stopwords();

/// Lowercases ASCII letters, collapses whitespace runs to one space, removes
/// other control characters and trims both ends. Non-ASCII bytes pass through.
std::string normalize(std::string_view text);

/// Splits normalized text into maximal runs of letters and digits. Bytes at or
/// above 0x80 count as letters so UTF-8 words stay whole. Stopwords and tokens
/// shorter than `min_length` bytes are dropped.
TokenSequence tokenize(std::string_view text, const StopwordSet& stopwords, std::size_t min_length = 2,
                       std::string doc_id = {});

/// Term to group-representative mapping produced by digram conflation.
///
/// Only non-identity pairs are stored; `apply` returns the term unchanged
/// when it has no entry, so representatives always map to themselves.
class ConflationMap {
public:
    ConflationMap() = default;
    explicit ConflationMap(std::map<std::string, std::string> mapping);

    const std::string& apply(const std::string& term) const;
    void apply_in_place(TokenSequence& tokens) const;

    /// Non-identity entries, ordered by term.
    const std::map<std::string, std::string>& entries() const noexcept { return mapping_; }

    friend bool operator==(const ConflationMap&, const ConflationMap&) = default;

private:
    std::map<std::string, std::string> mapping_;
};

/// Groups terms by single-link closure over pairs with dice(a, b) >= tau.
///
/// `term_counts` holds the corpus frequency of each vocabulary term; a
/// group's representative is its most frequent member, ties going to the
/// shorter and then the lexicographically smaller term.
ConflationMap conflate_terms(const std::map<std::string, std::size_t>& term_counts, double tau);

}  // namespace textcat
