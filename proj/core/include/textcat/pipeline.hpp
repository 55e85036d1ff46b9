#pragma once

#include "textcat/aknn.hpp"
#include "textcat/config.hpp"
#include "textcat/corpus.hpp"
#include "textcat/error.hpp"
#include "textcat/evalrep.hpp"
#include "textcat/medoids.hpp"
#include "textcat/textprep.hpp"
#include "textcat/vsm.hpp"

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace textcat {

/// Runs `fn`, tagging any untagged `Error` with the stage name.
template <typename Fn>
decltype(auto) run_stage(const char* stage, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        if (!e.stage().empty()) throw;
        throw e.with_stage(stage);
    }
}

/// normalize + tokenize + conflate.
TokenSequence preprocess(const Document& doc, const StopwordSet& stopwords, std::size_t min_token_len,
                         const ConflationMap& conflation);

/// Everything the first niche produces from a raw corpus.
struct TrainingData {
    Corpus train;  // filtered, single-label
    Corpus test;   // filtered, labels as given
    std::set<std::string> removed_categories;
    std::size_t unused_count = 0;
    std::size_t dropped_multilabel = 0;
    StopwordSet stopwords;
    ConflationMap conflation;
    Vocabulary vocabulary;             // features selected
    std::vector<TokenSequence> tokens;  // aligned with train, conflated
    std::vector<SparseVector> vectors;  // aligned with train

    PreparedTraining prepared() const { return {train, tokens, vectors}; }
};

/// split -> filter_categories -> drop_multilabel -> textprep -> conflation ->
/// vocabulary -> feature selection -> vectorization.
TrainingData prepare_training(const Corpus& corpus, const PipelineConfig& config);

/// Condensed model with stopwords and conflation attached.
ConstrictedModel condense(const TrainingData& data, const PipelineConfig& config);

/// Uncondensed model over every training vector (traditional kNN).
ConstrictedModel full_model(const TrainingData& data, const PipelineConfig& config);

struct TrainOutput {
    ConstrictedModel model;
    TrainingData data;
    double seconds = 0.0;
};

TrainOutput train(const Corpus& corpus, const PipelineConfig& config);

/// Reuses a trained model's preprocessing state and vocabulary to vectorize
/// the corpus training split without condensation.
ConstrictedModel full_model_from(const ConstrictedModel& model, const Corpus& corpus);

/// Test split of `corpus` restricted to the categories a model can predict.
Corpus evaluation_split(const Corpus& corpus, const ConstrictedModel& model);

SparseVector vectorize_document(const Document& doc, const ConstrictedModel& model);

/// Classifies every document; output order matches `documents`.
std::vector<Prediction> predict_all(const ConstrictedModel& model, std::span<const Document> documents,
                                    std::size_t k, WeightMode mode, unsigned threads = 1);

}  // namespace textcat
