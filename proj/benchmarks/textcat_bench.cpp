#include "textcat/aknn.hpp"
#include "textcat/medoids.hpp"
#include "textcat/pipeline.hpp"
#include "textcat/simmetrics.hpp"

#include "synthetic.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace textcat;

std::vector<TermId> random_ids(std::mt19937_64& rng, std::size_t n) {
    std::vector<TermId> s(n);
    for (auto& x : s) x = static_cast<TermId>(rng() % 500);
    return s;
}

SparseVector random_vector(std::mt19937_64& rng, std::size_t nnz) {
    std::vector<SparseVector::Entry> e;
    std::uniform_real_distribution<double> w(0.0, 3.0);
    for (std::size_t i = 0; i < nnz; ++i) e.emplace_back(static_cast<TermId>(rng() % 2000), w(rng));
    return SparseVector(std::move(e));
}

void BM_Levenshtein(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_ids(rng, n), b = random_ids(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(levenshtein(a, b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Levenshtein)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_Cosine(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const auto a = random_vector(rng, static_cast<std::size_t>(state.range(0)));
    const auto b = random_vector(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cosine(a, b));
}
BENCHMARK(BM_Cosine)->Arg(32)->Arg(128)->Arg(512);

void BM_KMedoids(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<std::vector<TermId>> seqs;
    for (std::size_t i = 0; i < n; ++i) seqs.push_back(random_ids(rng, 60));
    const auto dm = edit_distance_matrix(seqs, 256);
    for (auto _ : state) benchmark::DoNotOptimize(kmedoids(dm, std::max<std::size_t>(1, n / 10), 42).total_cost);
}
BENCHMARK(BM_KMedoids)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
    testing::TopicCorpusSpec spec;
    spec.train_per_category = static_cast<std::size_t>(state.range(0));
    spec.test_per_category = 10;
    const auto corpus = testing::make_topic_corpus(spec);
    const auto model = train(corpus, PipelineConfig{}).model;
    const auto test = evaluation_split(corpus, model);
    std::vector<SparseVector> queries;
    for (const auto& d : test.documents()) queries.push_back(vectorize_document(d, model));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(queries[i++ % queries.size()], model, 5, WeightMode::Rank));
    }
    state.counters["representatives"] = static_cast<double>(model.representatives.size());
}
BENCHMARK(BM_Classify)->Arg(40)->Arg(160);

}  // namespace

BENCHMARK_MAIN();
