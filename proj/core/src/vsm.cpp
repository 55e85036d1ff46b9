#include "textcat/vsm.hpp"

#include "textcat/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace textcat {

const char* to_string(IdfBase base) noexcept { return base == IdfBase::Ten ? "10" : "e"; }

const char* to_string(WeightingScheme scheme) noexcept {
    return scheme == WeightingScheme::Tf ? "tf" : "tfidf";
}

IdfBase parse_idf_base(std::string_view text) {
    if (text == "10") return IdfBase::Ten;
    if (text == "e") return IdfBase::E;
    throw Error(ErrorKind::InvalidArgument, "idf base must be '10' or 'e'");
}

WeightingScheme parse_weighting(std::string_view text) {
    if (text == "tf") return WeightingScheme::Tf;
    if (text == "tfidf") return WeightingScheme::TfIdf;
    throw Error(ErrorKind::InvalidArgument, "weighting must be 'tf' or 'tfidf'");
}

Vocabulary::Vocabulary(std::vector<TermStats> stats, std::size_t n_documents, IdfBase base,
                       std::vector<TermId> selected)
    : stats_(std::move(stats)), n_documents_(n_documents), base_(base) {
    index_.reserve(stats_.size());
    for (std::size_t i = 0; i < stats_.size(); ++i) {
        if (stats_[i].term_id != i) {
            throw Error(ErrorKind::InvalidArgument, "vocabulary term ids must be dense and ordered");
        }
        if (!index_.emplace(stats_[i].term, static_cast<TermId>(i)).second) {
            throw Error(ErrorKind::InvalidArgument, "duplicate vocabulary term '" + stats_[i].term + "'");
        }
    }
    set_selected(std::move(selected));
}

std::optional<TermId> Vocabulary::lookup(const std::string& term) const {
    auto it = index_.find(term);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void Vocabulary::set_selected(std::vector<TermId> selected) {
    selected_mask_.assign(stats_.size(), false);
    for (auto id : selected) {
        if (id >= stats_.size() || selected_mask_[id]) {
            throw Error(ErrorKind::InvalidArgument, "invalid or repeated selected term id " + std::to_string(id));
        }
        selected_mask_[id] = true;
    }
    selected_ = std::move(selected);
}

double tfidf_weight(std::size_t tf, std::size_t df, std::size_t n_documents, IdfBase base) {
    if (df == 0 || df > n_documents) {
        throw Error(ErrorKind::DomainError, "document frequency " + std::to_string(df) + " outside [1, " +
                                                std::to_string(n_documents) + "]");
    }
    if (tf == 0) return 0.0;
    const double ratio = static_cast<double>(n_documents) / static_cast<double>(df);
    const double idf = base == IdfBase::Ten ? std::log10(ratio) : std::log(ratio);
    return static_cast<double>(tf) * idf;
}

Vocabulary build_vocabulary(std::span<const TokenSequence> train_tokens, const ConflationMap& conflation,
                            IdfBase base) {
    if (train_tokens.empty()) throw Error(ErrorKind::EmptyVocabulary, "no training documents");

    struct Acc {
        std::size_t df = 0;
        std::size_t cf = 0;
        std::size_t max_tf = 0;
    };
    std::map<std::string, Acc> acc;
    std::map<std::string, std::size_t> tf;
    for (const auto& doc : train_tokens) {
        tf.clear();
        for (const auto& token : doc.tokens) ++tf[conflation.apply(token)];
        for (const auto& [term, count] : tf) {
            auto& a = acc[term];
            ++a.df;
            a.cf += count;
            a.max_tf = std::max(a.max_tf, count);
        }
    }
    if (acc.empty()) throw Error(ErrorKind::EmptyVocabulary, "no tokens survived preprocessing");

    const std::size_t n = train_tokens.size();
    std::vector<TermStats> stats;
    stats.reserve(acc.size());
    for (auto& [term, a] : acc) {
        TermStats s;
        s.term = term;
        s.term_id = static_cast<TermId>(stats.size());
        s.df = a.df;
        s.cf = a.cf;
        s.idf = tfidf_weight(1, a.df, n, base);
        // tf·idf is monotone in tf for fixed idf >= 0, so the max sits at max_tf.
        s.selection_weight = tfidf_weight(a.max_tf, a.df, n, base);
        stats.push_back(std::move(s));
    }
    return Vocabulary(std::move(stats), n, base);
}

Vocabulary select_features(const Vocabulary& vocab, std::size_t n_features) {
    if (n_features < 1) throw Error(ErrorKind::InvalidArgument, "n_features must be >= 1");
    std::vector<TermId> order(vocab.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<TermId>(i);
    auto stats = vocab.stats();
    std::sort(order.begin(), order.end(), [&](TermId a, TermId b) {
        const auto& x = stats[a];
        const auto& y = stats[b];
        if (x.selection_weight != y.selection_weight) return x.selection_weight > y.selection_weight;
        if (x.df != y.df) return x.df > y.df;
        return x.term < y.term;
    });
    order.resize(std::min(n_features, order.size()));
    Vocabulary out = vocab;
    out.set_selected(std::move(order));
    return out;
}

SparseVector vectorize(const TokenSequence& tokens, const Vocabulary& vocab, WeightingScheme scheme) {
    std::map<TermId, std::size_t> tf;
    for (const auto& token : tokens.tokens) {
        if (auto id = vocab.lookup(token); id && vocab.is_selected(*id)) ++tf[*id];
    }
    std::vector<SparseVector::Entry> entries;
    entries.reserve(tf.size());
    for (const auto& [id, count] : tf) {
        const auto& s = vocab.at(id);
        const double w = scheme == WeightingScheme::Tf
                             ? static_cast<double>(count)
                             : tfidf_weight(count, s.df, vocab.n_documents(), vocab.idf_base());
        if (w > 0.0) entries.emplace_back(id, w);
    }
    return SparseVector(std::move(entries), tokens.doc_id);
}

std::vector<TermId> to_term_ids(const TokenSequence& tokens, const Vocabulary& vocab) {
    std::vector<TermId> ids;
    ids.reserve(tokens.tokens.size());
    for (const auto& token : tokens.tokens) {
        if (auto id = vocab.lookup(token)) ids.push_back(*id);
    }
    return ids;
}

}  // namespace textcat
