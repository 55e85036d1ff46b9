#pragma once

#include "textcat/config.hpp"
#include "textcat/corpus.hpp"
#include "textcat/parallel.hpp"
#include "textcat/sparse_vector.hpp"
#include "textcat/textprep.hpp"
#include "textcat/vsm.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace textcat {

/// Symmetric pairwise distances with a zero diagonal, stored as the strict
/// upper triangle.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * (n > 0 ? n - 1 : 0) / 2, 0.0) {}

    std::size_t size() const noexcept { return n_; }

    double operator()(std::size_t i, std::size_t j) const noexcept {
        if (i == j) return 0.0;
        return data_[offset(i, j)];
    }
    void set(std::size_t i, std::size_t j, double d) noexcept {
        if (i != j) data_[offset(i, j)] = d;
    }

    /// Distances among `indices`, renumbered 0..indices.size()-1.
    DistanceMatrix subset(std::span<const std::size_t> indices) const;

    /// Fills every pair (i < j) with distance(items[i], items[j]).
    template <typename Item, typename Fn>
    static DistanceMatrix build(std::span<const Item> items, Fn&& distance, unsigned threads = 1) {
        DistanceMatrix m(items.size());
        parallel_for(items.size(), threads, [&](std::size_t i) {
            for (std::size_t j = i + 1; j < items.size(); ++j) {
                m.set(i, j, static_cast<double>(distance(items[i], items[j])));
            }
        });
        return m;
    }

private:
    std::size_t offset(std::size_t i, std::size_t j) const noexcept {
        if (i > j) std::swap(i, j);
        return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
    }

    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Token-level Levenshtein distances over sequences truncated to `cap` symbols.
DistanceMatrix edit_distance_matrix(std::span<const std::vector<TermId>> sequences, std::size_t cap,
                                    unsigned threads = 1);

enum class DistanceKind { EditDistanceTokens, CosineDistance };

struct Cluster {
    std::size_t medoid = 0;
    std::vector<std::size_t> members;  // ascending, includes the medoid
    double cost = 0.0;                 // sum of member distances to the medoid
};

struct ClusterModel {
    std::vector<Cluster> clusters;  // ordered by medoid index
    DistanceKind distance_kind = DistanceKind::EditDistanceTokens;
    double total_cost = 0.0;
    /// Cost after initialization and after every adopted swap.
    std::vector<double> cost_history;
    std::size_t swaps = 0;
    /// True when the search stopped because no swap improved the cost.
    bool converged = false;
};

/// PAM: seeded initialization of k distinct medoids, nearest-medoid
/// assignment (ties to the lower medoid index), then repeated adoption of the
/// single medoid/non-medoid swap with the largest cost reduction until no swap
/// improves or `max_iter` swaps have been made. Throws InvalidK.
ClusterModel kmedoids(const DistanceMatrix& distances, std::size_t k, std::uint64_t seed,
                      std::size_t max_iter = 100);

/// Best-cost result over `restarts` independently seeded runs (earliest wins ties).
ClusterModel kmedoids_best_of(const DistanceMatrix& distances, std::size_t k, std::uint64_t seed,
                              std::size_t max_iter, std::size_t restarts);

template <typename Item, typename Fn>
ClusterModel kmedoids(std::span<const Item> items, std::size_t k, Fn&& distance, std::uint64_t seed,
                      std::size_t max_iter = 100) {
    return kmedoids(DistanceMatrix::build(items, std::forward<Fn>(distance)), k, seed, max_iter);
}

/// Sum over every cluster member of its distance to the cluster medoid.
double recompute_cost(const ClusterModel& model, const DistanceMatrix& distances);

/// Drops clusters with fewer than `min_size` members. Their members are not
/// reassigned.
ClusterModel prune_small_clusters(const ClusterModel& model, std::size_t min_size);

struct PurgeResult {
    std::vector<std::size_t> kept;
    std::vector<std::size_t> flagged;
    std::vector<double> mean_distance;  // per item, to all other items
};

/// Flags items whose mean distance to the rest of their group exceeds
/// mean + sigma·stddev of those means. Groups of two or fewer flag nothing.
PurgeResult purge_high_fliers(const DistanceMatrix& distances, double sigma = 2.0);
PurgeResult purge_high_fliers(std::span<const std::vector<TermId>> sequences, std::size_t cap,
                              double sigma = 2.0, unsigned threads = 1);

/// Removes training documents that carry more than one label.
Corpus drop_multilabel(const Corpus& train);

struct Representative {
    SparseVector vector;
    std::string category;
    std::string source_id;

    friend bool operator==(const Representative&, const Representative&) = default;
};

struct CategorySummary {
    std::string name;
    std::size_t documents = 0;
    std::size_t flagged = 0;
    std::size_t clusters = 0;
    std::size_t pruned_clusters = 0;
    std::size_t representatives = 0;
    bool fallback = false;

    friend bool operator==(const CategorySummary&, const CategorySummary&) = default;
};

/// The condensed training set: vocabulary, preprocessing state and the
/// labeled representative vectors a classifier searches.
struct ConstrictedModel {
    PipelineConfig config;
    std::vector<std::string> stopwords;  // sorted
    ConflationMap conflation;
    Vocabulary vocabulary;
    std::vector<Representative> representatives;
    std::vector<CategorySummary> categories;  // by category name

    friend bool operator==(const ConstrictedModel&, const ConstrictedModel&) = default;
};

/// Prepared training data. The three sequences are aligned with
/// `train.documents()`; tokens are already conflated and vectors already
/// weighted with the model's scheme.
struct PreparedTraining {
    const Corpus& train;
    std::span<const TokenSequence> tokens;
    std::span<const SparseVector> vectors;
};

/// Per category: purge high-fliers, cluster the remaining token sequences
/// with k_c = max(1, ceil(k_fraction · n_c)) medoids, prune small clusters and
/// keep each surviving medoid's vector. A category left without
/// representatives falls back to its full purged document set when
/// `config.fallback_full_category` is set, otherwise EmptyCategory is thrown.
/// Only `config`, `vocabulary` and representative fields are filled; callers
/// attach stopwords and conflation.
ConstrictedModel build_constricted_model(const PreparedTraining& data, const Vocabulary& vocab,
                                         const PipelineConfig& config);

/// Every nonzero training vector as a representative (traditional kNN).
ConstrictedModel build_full_model(const PreparedTraining& data, const Vocabulary& vocab,
                                  const PipelineConfig& config);

/// Number of medoids for a category of `n` documents.
std::size_t medoid_count(std::size_t n, double fraction);

}  // namespace textcat
