#pragma once

#include "textcat/sparse_vector.hpp"
#include "textcat/textprep.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace textcat {

enum class IdfBase { Ten, E };
enum class WeightingScheme { Tf, TfIdf };

const char* to_string(IdfBase base) noexcept;
const char* to_string(WeightingScheme scheme) noexcept;
IdfBase parse_idf_base(std::string_view text);
WeightingScheme parse_weighting(std::string_view text);

struct TermStats {
    std::string term;
    TermId term_id = 0;
    std::size_t df = 0;  // documents containing the term
    std::size_t cf = 0;  // total occurrences
    double idf = 0.0;
    double selection_weight = 0.0;  // max over documents of tf·idf

    friend bool operator==(const TermStats&, const TermStats&) = default;
};

/// Training-split term statistics plus the selected feature subset.
///
/// Term ids are dense and assigned in lexicographic term order, so they
/// are stable for a given training set.
class Vocabulary {
public:
    Vocabulary() = default;
    /// Rebuilds the term index. `stats[i].term_id` must equal `i`.
    Vocabulary(std::vector<TermStats> stats, std::size_t n_documents, IdfBase base,
               std::vector<TermId> selected = {});

    std::span<const TermStats> stats() const noexcept { return stats_; }
    const TermStats& at(TermId id) const { return stats_.at(id); }
    std::optional<TermId> lookup(const std::string& term) const;
    std::size_t size() const noexcept { return stats_.size(); }
    std::size_t n_documents() const noexcept { return n_documents_; }
    IdfBase idf_base() const noexcept { return base_; }

    /// Selected ids in selection order (best first).
    std::span<const TermId> selected() const noexcept { return selected_; }
    bool is_selected(TermId id) const noexcept { return id < selected_mask_.size() && selected_mask_[id]; }
    void set_selected(std::vector<TermId> selected);

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
        return a.stats_ == b.stats_ && a.n_documents_ == b.n_documents_ && a.base_ == b.base_ &&
               a.selected_ == b.selected_;
    }

private:
    std::vector<TermStats> stats_;
    std::unordered_map<std::string, TermId> index_;
    std::size_t n_documents_ = 0;
    IdfBase base_ = IdfBase::Ten;
    std::vector<TermId> selected_;
    std::vector<bool> selected_mask_;
};

/// tf · log(N/df). Throws DomainError unless 1 <= df <= N.
double tfidf_weight(std::size_t tf, std::size_t df, std::size_t n_documents, IdfBase base = IdfBase::Ten);

/// Counts df/cf over training token sequences after mapping every token
/// through `conflation`. Throws EmptyVocabulary when no token survives.
Vocabulary build_vocabulary(std::span<const TokenSequence> train_tokens, const ConflationMap& conflation,
                            IdfBase base = IdfBase::Ten);

/// Top `n_features` terms by selection weight; ties go to higher df, then the
/// lexicographically smaller term.
Vocabulary select_features(const Vocabulary& vocab, std::size_t n_features);

/// Entries for selected terms only: raw tf, or tf·idf with zeros dropped.
/// Tokens are expected to be conflated already.
SparseVector vectorize(const TokenSequence& tokens, const Vocabulary& vocab,
                       WeightingScheme scheme = WeightingScheme::TfIdf);

/// Maps tokens to term ids over the whole vocabulary; unknown tokens are skipped.
std::vector<TermId> to_term_ids(const TokenSequence& tokens, const Vocabulary& vocab);

}  // namespace textcat
