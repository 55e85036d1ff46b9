#pragma once

#include "textcat/medoids.hpp"
#include "textcat/sparse_vector.hpp"
#include "textcat/weighting.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace textcat {

struct Neighbor {
    std::size_t representative_index = 0;
    double distance = 0.0;  // 1 - cosine, in [0, 1]
    std::size_t rank = 0;   // 1-based
    double weight = 1.0;
    std::string category;
};

struct Prediction {
    std::string doc_id;
    std::map<std::string, double> scores;  // accumulated vote weight per category
    std::string predicted;
    std::size_t k_used = 0;
    WeightMode weight_mode = WeightMode::Rank;
};

/// The min(k, |representatives|) nearest representatives by ascending
/// 1 - cosine, ties to the lower representative index. Throws EmptyModel.
std::vector<Neighbor> find_neighbors(const SparseVector& query, std::span<const Representative> representatives,
                                     std::size_t k);
std::vector<Neighbor> find_neighbors(const SparseVector& query, const ConstrictedModel& model, std::size_t k);

/// Linear distance weights: 1 when d_k == d_1, else (d_k - d_i) / (d_k - d_1).
/// Throws UnsortedInput if `distances` is not ascending.
std::vector<double> dudani_weights(std::span<const double> distances);

/// k - i + 1 for ranks i = 1..k.
std::vector<double> rank_weights(std::size_t k);

/// Per-neighbor vote weights for `mode`: all 1 (None), dudani_weights
/// (Linear), rank_weights (Rank) or their product (LinearTimesRank).
std::vector<double> vote_weights(std::span<const Neighbor> neighbors, WeightMode mode);

/// Weights `neighbors` (ascending by distance) per `mode` and tallies votes by
/// category. The winner has the highest score; ties go to the smaller summed
/// neighbor distance, then to the lexicographically smaller category.
Prediction vote(std::span<const Neighbor> neighbors, WeightMode mode, std::string doc_id = {});

/// find_neighbors followed by vote.
Prediction classify(const SparseVector& query, const ConstrictedModel& model, std::size_t k, WeightMode mode);
Prediction classify(const SparseVector& query, std::span<const Representative> representatives, std::size_t k,
                    WeightMode mode);

}  // namespace textcat
