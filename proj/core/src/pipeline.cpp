#include "textcat/pipeline.hpp"

#include "textcat/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace textcat {

TokenSequence preprocess(const Document& doc, const StopwordSet& stopwords, std::size_t min_token_len,
                         const ConflationMap& conflation) {
    TokenSequence tokens = tokenize(normalize(doc.text), stopwords, min_token_len, doc.id);
    conflation.apply_in_place(tokens);
    return tokens;
}

namespace {

StopwordSet stopwords_for(const PipelineConfig& config) {
    return config.stopwords.empty() ? default_stopwords() : load_stopwords(config.stopwords);
}

StopwordSet stopwords_from(const ConstrictedModel& model) {
    return StopwordSet(model.stopwords.begin(), model.stopwords.end());
}

std::vector<std::string> sorted(const StopwordSet& words) {
    std::vector<std::string> out(words.begin(), words.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SparseVector> vectorize_all(std::span<const TokenSequence> tokens, const Vocabulary& vocab,
                                        WeightingScheme scheme, unsigned threads) {
    std::vector<SparseVector> out(tokens.size());
    parallel_for(tokens.size(), threads, [&](std::size_t i) { out[i] = vectorize(tokens[i], vocab, scheme); });
    return out;
}

}  // namespace

TrainingData prepare_training(const Corpus& corpus, const PipelineConfig& config) {
    run_stage("config", [&] { validate(config); });
    TrainingData data;
    auto split = run_stage("apply_split", [&] { return apply_split(corpus); });
    data.unused_count = split.unused_count;

    auto filtered = run_stage("filter_categories", [&] { return filter_categories(split.train, split.test); });
    data.removed_categories = std::move(filtered.removed);
    data.test = std::move(filtered.test);
    data.train = run_stage("drop_multilabel", [&] { return drop_multilabel(filtered.train); });
    data.dropped_multilabel = filtered.train.size() - data.train.size();
    if (data.train.empty()) {
        throw Error(ErrorKind::EmptyResult, "no single-label training documents left").with_stage("drop_multilabel");
    }

    run_stage("textprep", [&] {
        data.stopwords = stopwords_for(config);
        const auto& docs = data.train.documents();
        data.tokens.resize(docs.size());
        parallel_for(docs.size(), config.threads, [&](std::size_t i) {
            data.tokens[i] = tokenize(normalize(docs[i].text), data.stopwords, config.min_token_len, docs[i].id);
        });
        std::map<std::string, std::size_t> counts;
        for (const auto& seq : data.tokens) {
            for (const auto& t : seq.tokens) ++counts[t];
        }
        data.conflation = conflate_terms(counts, config.conflate_tau);
        for (auto& seq : data.tokens) data.conflation.apply_in_place(seq);
    });

    run_stage("vsm", [&] {
        const Vocabulary full = build_vocabulary(data.tokens, ConflationMap{}, config.idf_base);
        data.vocabulary = select_features(full, config.n_features);
        data.vectors = vectorize_all(data.tokens, data.vocabulary, config.weighting, config.threads);
    });
    return data;
}

ConstrictedModel condense(const TrainingData& data, const PipelineConfig& config) {
    ConstrictedModel model = run_stage("build_constricted_model", [&] {
        return build_constricted_model(data.prepared(), data.vocabulary, config);
    });
    model.stopwords = sorted(data.stopwords);
    model.conflation = data.conflation;
    return model;
}

ConstrictedModel full_model(const TrainingData& data, const PipelineConfig& config) {
    ConstrictedModel model =
        run_stage("build_full_model", [&] { return build_full_model(data.prepared(), data.vocabulary, config); });
    model.stopwords = sorted(data.stopwords);
    model.conflation = data.conflation;
    return model;
}

TrainOutput train(const Corpus& corpus, const PipelineConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    TrainOutput out;
    out.data = prepare_training(corpus, config);
    out.model = condense(out.data, config);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

ConstrictedModel full_model_from(const ConstrictedModel& model, const Corpus& corpus) {
    const auto split = run_stage("apply_split", [&] { return apply_split(corpus); });
    const auto filtered = run_stage("filter_categories", [&] { return filter_categories(split.train, split.test); });
    const Corpus train = run_stage("drop_multilabel", [&] { return drop_multilabel(filtered.train); });

    const StopwordSet stopwords = stopwords_from(model);
    const auto& docs = train.documents();
    std::vector<TokenSequence> tokens(docs.size());
    parallel_for(docs.size(), model.config.threads, [&](std::size_t i) {
        tokens[i] = preprocess(docs[i], stopwords, model.config.min_token_len, model.conflation);
    });
    const auto vectors = vectorize_all(tokens, model.vocabulary, model.config.weighting, model.config.threads);

    ConstrictedModel out = run_stage("build_full_model", [&] {
        return build_full_model({train, tokens, vectors}, model.vocabulary, model.config);
    });
    out.stopwords = model.stopwords;
    out.conflation = model.conflation;
    return out;
}

Corpus evaluation_split(const Corpus& corpus, const ConstrictedModel& model) {
    std::set<std::string> known;
    for (const auto& r : model.representatives) known.insert(r.category);
    std::vector<Document> test;
    for (const auto& doc : corpus.documents()) {
        if (doc.split != Split::Test) continue;
        Document copy = doc;
        std::erase_if(copy.labels, [&](const std::string& l) { return !known.contains(l); });
        if (!copy.labels.empty()) test.push_back(std::move(copy));
    }
    if (test.empty()) {
        throw Error(ErrorKind::EmptyResult, "no test document carries a category known to the model")
            .with_stage("evaluation_split");
    }
    return Corpus(std::move(test));
}

SparseVector vectorize_document(const Document& doc, const ConstrictedModel& model) {
    const StopwordSet stopwords = stopwords_from(model);
    return vectorize(preprocess(doc, stopwords, model.config.min_token_len, model.conflation), model.vocabulary,
                     model.config.weighting);
}

std::vector<Prediction> predict_all(const ConstrictedModel& model, std::span<const Document> documents,
                                    std::size_t k, WeightMode mode, unsigned threads) {
    const StopwordSet stopwords = stopwords_from(model);
    std::vector<Prediction> out(documents.size());
    run_stage("classify", [&] {
        parallel_for(documents.size(), threads, [&](std::size_t i) {
            const auto tokens = preprocess(documents[i], stopwords, model.config.min_token_len, model.conflation);
            out[i] = classify(vectorize(tokens, model.vocabulary, model.config.weighting), model, k, mode);
        });
    });
    return out;
}

}  // namespace textcat
