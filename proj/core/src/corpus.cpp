#include "textcat/corpus.hpp"

#include "textcat/error.hpp"
#include "textcat/fileio.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace textcat {

using json = nlohmann::json;

const char* to_string(Split split) noexcept {
    switch (split) {
        case Split::Train: return "train";
        case Split::Test: return "test";
        case Split::Unused: return "unused";
    }
    return "unused";
}

Split parse_split(std::string_view text) {
    if (text == "train") return Split::Train;
    if (text == "test") return Split::Test;
    if (text == "unused") return Split::Unused;
    throw Error(ErrorKind::MalformedRecord, "unknown split tag '" + std::string(text) + "'");
}

bool Document::has_label(std::string_view label) const {
    return std::find(labels.begin(), labels.end(), label) != labels.end();
}

namespace {

void validate_labels(const Document& doc) {
    std::unordered_set<std::string_view> seen;
    for (const auto& label : doc.labels) {
        if (label.empty()) {
            throw Error(ErrorKind::MalformedRecord, "document '" + doc.id + "' has an empty label");
        }
        if (!seen.insert(label).second) {
            throw Error(ErrorKind::MalformedRecord,
                        "document '" + doc.id + "' repeats label '" + label + "'");
        }
    }
}

}  // namespace

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
    std::unordered_set<std::string_view> ids;
    ids.reserve(documents_.size());
    for (const auto& doc : documents_) {
        if (!ids.insert(doc.id).second) {
            throw Error(ErrorKind::DuplicateId, "duplicate document id '" + doc.id + "'");
        }
        validate_labels(doc);
    }
}

std::set<std::string> Corpus::categories() const {
    std::set<std::string> out;
    for (const auto& doc : documents_) {
        out.insert(doc.labels.begin(), doc.labels.end());
    }
    return out;
}

const Document* Corpus::find(std::string_view id) const {
    for (const auto& doc : documents_) {
        if (doc.id == id) return &doc;
    }
    return nullptr;
}

namespace {

Document parse_record(const std::string& line, std::size_t line_no, const LoadOptions& options) {
    auto fail = [line_no](const std::string& why) {
        return Error(ErrorKind::MalformedRecord,
                     "line " + std::to_string(line_no) + ": " + why);
    };
    json record;
    try {
        record = json::parse(line);
    } catch (const json::parse_error& e) {
        throw fail(std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) throw fail("record is not a JSON object");

    Document doc;
    auto id = record.find("id");
    if (id == record.end() || !id->is_string()) throw fail("missing string field 'id'");
    doc.id = id->get<std::string>();
    if (doc.id.empty()) throw fail("empty 'id'");

    auto text = record.find("text");
    if (text == record.end() || !text->is_string()) throw fail("missing string field 'text'");
    doc.text = text->get<std::string>();

    auto labels = record.find("labels");
    if (labels != record.end()) {
        if (!labels->is_array()) throw fail("'labels' must be an array of strings");
        for (const auto& label : *labels) {
            if (!label.is_string()) throw fail("'labels' must be an array of strings");
            doc.labels.push_back(label.get<std::string>());
        }
    } else if (options.require_labels_and_split) {
        throw fail("missing field 'labels'");
    }

    auto split = record.find("split");
    if (split != record.end()) {
        if (!split->is_string()) throw fail("'split' must be a string");
        try {
            doc.split = parse_split(split->get<std::string>());
        } catch (const Error& e) {
            throw fail(e.what());
        }
    } else if (options.require_labels_and_split) {
        throw fail("missing field 'split'");
    } else {
        doc.split = Split::Test;
    }

    try {
        validate_labels(doc);
    } catch (const Error& e) {
        throw fail(e.what());
    }
    return doc;
}

}  // namespace

Corpus read_corpus(std::istream& in, const LoadOptions& options) {
    std::vector<Document> docs;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        Document doc = parse_record(line, line_no, options);
        if (!ids.insert(doc.id).second) {
            throw Error(ErrorKind::DuplicateId, "duplicate document id '" + doc.id + "' at line " +
                                                    std::to_string(line_no));
        }
        docs.push_back(std::move(doc));
    }
    if (in.bad()) throw Error(ErrorKind::IoFailure, "read error while loading corpus");
    return Corpus(std::move(docs));
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format, const LoadOptions& options) {
    if (format != CorpusFormat::JsonLines) {
        throw Error(ErrorKind::InvalidArgument, "unsupported corpus format");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoFailure, "cannot open corpus '" + path.string() + "'");
    return read_corpus(in, options);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
    for (const auto& doc : corpus.documents()) {
        json record = json::object();
        record["id"] = doc.id;
        record["text"] = doc.text;
        record["labels"] = doc.labels;
        record["split"] = to_string(doc.split);
        // Fixed key order keeps the cache diff-friendly.
        out << "{\"id\":" << record["id"].dump() << ",\"text\":" << record["text"].dump()
            << ",\"labels\":" << record["labels"].dump() << ",\"split\":" << record["split"].dump()
            << "}\n";
    }
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
    std::ostringstream out;
    write_corpus(out, corpus);
    write_file_atomic(path, out.str());
}

SplitResult apply_split(const Corpus& corpus) {
    std::vector<Document> train;
    std::vector<Document> test;
    std::size_t unused = 0;
    for (const auto& doc : corpus.documents()) {
        switch (doc.split) {
            case Split::Train: train.push_back(doc); break;
            case Split::Test: test.push_back(doc); break;
            case Split::Unused: ++unused; break;
        }
    }
    return {Corpus(std::move(train)), Corpus(std::move(test)), unused};
}

namespace {

Corpus keep_categories(const Corpus& corpus, const std::set<std::string>& keep) {
    std::vector<Document> out;
    for (const auto& doc : corpus.documents()) {
        Document copy = doc;
        std::erase_if(copy.labels, [&](const std::string& label) { return !keep.contains(label); });
        if (!copy.labels.empty()) out.push_back(std::move(copy));
    }
    return Corpus(std::move(out));
}

}  // namespace

FilterResult filter_categories(const Corpus& train, const Corpus& test) {
    const auto in_train = train.categories();
    const auto in_test = test.categories();

    std::set<std::string> keep;
    std::set<std::string> removed;
    for (const auto& c : in_train) (in_test.contains(c) ? keep : removed).insert(c);
    for (const auto& c : in_test) {
        if (!in_train.contains(c)) removed.insert(c);
    }
    if (keep.empty()) {
        throw Error(ErrorKind::EmptyResult, "no category has documents in both train and test splits");
    }
    return {keep_categories(train, keep), keep_categories(test, keep), std::move(removed)};
}

}  // namespace textcat
