#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace textcat {

enum class Split { Train, Test, Unused };

const char* to_string(Split split) noexcept;
Split parse_split(std::string_view text);

struct Document {
    std::string id;
    std::string text;
    std::vector<std::string> labels;  // no duplicates, no empty strings
    Split split = Split::Train;

    bool has_label(std::string_view label) const;
    friend bool operator==(const Document&, const Document&) = default;
};

/// An ordered collection of documents with unique ids.
///
/// Document order is the ingestion order and is preserved by every
/// operation in this module. Construction validates the id and label
/// invariants and throws `Error` on violation.
class Corpus {
public:
    Corpus() = default;
    explicit Corpus(std::vector<Document> documents);

    const std::vector<Document>& documents() const noexcept { return documents_; }
    std::size_t size() const noexcept { return documents_.size(); }
    bool empty() const noexcept { return documents_.empty(); }

    /// Union of all document label sets.
    std::set<std::string> categories() const;

    /// Linear lookup by id; nullptr when absent.
    const Document* find(std::string_view id) const;

    friend bool operator==(const Corpus&, const Corpus&) = default;

private:
    std::vector<Document> documents_;
};

enum class CorpusFormat { JsonLines };

struct LoadOptions {
    /// When false, `labels` and `split` may be omitted (prediction inputs).
    bool require_labels_and_split = true;
};

/// Reads a JSON-Lines corpus: one {"id","text","labels","split"} record per line.
/// Blank lines are skipped. Errors: MalformedRecord (with 1-based line number),
/// DuplicateId, IoFailure.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format = CorpusFormat::JsonLines,
                   const LoadOptions& options = {});
Corpus read_corpus(std::istream& in, const LoadOptions& options = {});

/// Writes the canonical JSON-Lines form accepted by `load_corpus`.
void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

struct SplitResult {
    Corpus train;
    Corpus test;
    std::size_t unused_count = 0;
};

SplitResult apply_split(const Corpus& corpus);

struct FilterResult {
    Corpus train;
    Corpus test;
    std::set<std::string> removed;
};

/// Keeps only categories with support in both splits. Labels of removed
/// categories are stripped and documents left unlabeled are dropped.
/// Throws EmptyResult when no category survives.
FilterResult filter_categories(const Corpus& train, const Corpus& test);

}  // namespace textcat
