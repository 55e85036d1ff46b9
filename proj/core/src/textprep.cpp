#include "textcat/textprep.hpp"

#include "textcat/error.hpp"
#include "textcat/fileio.hpp"
#include "textcat/simmetrics.hpp"

#include "default_stopwords.hpp"

#include <algorithm>
#include <numeric>

namespace textcat {

namespace {

bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

bool is_control(unsigned char c) { return c < 0x20 || c == 0x7f; }

bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

StopwordSet parse_stopwords(std::string_view text) {
    StopwordSet out;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        out.emplace(line);
    }
    return out;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
    return parse_stopwords(read_file(path));
}

const StopwordSet& default_stopwords() {
    static const StopwordSet words = parse_stopwords(detail::kDefaultStopwords);
    return words;
}

std::string normalize(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (const char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (is_control(c)) continue;
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch);
    }
    return out;
}

TokenSequence tokenize(std::string_view text, const StopwordSet& stopwords, std::size_t min_length,
                       std::string doc_id) {
    TokenSequence seq{std::move(doc_id), {}};
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
        const std::size_t start = i;
        while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) continue;
        std::string token(text.substr(start, i - start));
        // Tolerate un-normalized input: tokens are always lowercase.
        for (auto& c : token) {
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        }
        if (token.size() < min_length || stopwords.contains(token)) continue;
        seq.tokens.push_back(std::move(token));
    }
    return seq;
}

ConflationMap::ConflationMap(std::map<std::string, std::string> mapping) : mapping_(std::move(mapping)) {
    std::erase_if(mapping_, [](const auto& kv) { return kv.first == kv.second; });
    for (const auto& [term, rep] : mapping_) {
        if (mapping_.contains(rep)) {
            throw Error(ErrorKind::InvalidArgument,
                        "conflation map is not idempotent: '" + term + "' -> '" + rep + "' -> '" +
                            mapping_.at(rep) + "'");
        }
    }
}

const std::string& ConflationMap::apply(const std::string& term) const {
    auto it = mapping_.find(term);
    return it == mapping_.end() ? term : it->second;
}

void ConflationMap::apply_in_place(TokenSequence& tokens) const {
    if (mapping_.empty()) return;
    for (auto& t : tokens.tokens) {
        auto it = mapping_.find(t);
        if (it != mapping_.end()) t = it->second;
    }
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

ConflationMap conflate_terms(const std::map<std::string, std::size_t>& term_counts, double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "conflation threshold must lie in [0, 1]");
    }
    std::vector<const std::string*> terms;
    std::vector<std::size_t> counts;
    terms.reserve(term_counts.size());
    for (const auto& [term, count] : term_counts) {
        terms.push_back(&term);
        counts.push_back(count);
    }
    const std::size_t n = terms.size();
    DisjointSets groups(n);

    if (tau <= 0.0) {
        for (std::size_t i = 1; i < n; ++i) groups.unite(0, i);
    } else {
        // Pairs sharing no digram have dice 0 < tau, so candidates come from
        // an inverted digram index. Only the lower triangle (j > i) is visited.
        std::vector<DigramSet> sets(n);
        std::map<std::uint16_t, std::vector<std::uint32_t>> postings;
        for (std::size_t i = 0; i < n; ++i) {
            sets[i] = digrams(*terms[i]);
            for (auto g : sets[i]) postings[g].push_back(static_cast<std::uint32_t>(i));
        }
        std::vector<std::uint32_t> shared(n, 0);
        std::vector<std::uint32_t> touched;
        for (std::size_t i = 0; i < n; ++i) {
            touched.clear();
            for (auto g : sets[i]) {
                const auto& list = postings[g];
                auto it = std::upper_bound(list.begin(), list.end(), static_cast<std::uint32_t>(i));
                for (; it != list.end(); ++it) {
                    if (shared[*it]++ == 0) touched.push_back(*it);
                }
            }
            for (auto j : touched) {
                const double s = 2.0 * shared[j] / static_cast<double>(sets[i].size() + sets[j].size());
                if (s >= tau) groups.unite(i, j);
                shared[j] = 0;
            }
        }
    }

    std::vector<std::size_t> best(n);
    std::iota(best.begin(), best.end(), 0);
    auto better = [&](std::size_t a, std::size_t b) {
        if (counts[a] != counts[b]) return counts[a] > counts[b];
        if (terms[a]->size() != terms[b]->size()) return terms[a]->size() < terms[b]->size();
        return *terms[a] < *terms[b];
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = groups.find(i);
        if (better(i, best[root])) best[root] = i;
    }
    std::map<std::string, std::string> mapping;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t rep = best[groups.find(i)];
        if (rep != i) mapping.emplace(*terms[i], *terms[rep]);
    }
    return ConflationMap(std::move(mapping));
}

}  // namespace textcat
