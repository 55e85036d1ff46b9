#include "textcat/aknn.hpp"

#include "textcat/error.hpp"
#include "textcat/simmetrics.hpp"

#include <algorithm>

namespace textcat {

std::vector<Neighbor> find_neighbors(const SparseVector& query, std::span<const Representative> reps,
                                     std::size_t k) {
    if (k < 1) throw Error(ErrorKind::InvalidK, "k must be >= 1");
    if (reps.empty()) throw Error(ErrorKind::EmptyModel, "model has no representatives");

    std::vector<std::pair<double, std::size_t>> scored(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        scored[i] = {1.0 - cosine(query, reps[i].vector), i};
    }
    const std::size_t take = std::min(k, reps.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end());

    std::vector<Neighbor> out;
    out.reserve(take);
    for (std::size_t r = 0; r < take; ++r) {
        const auto [d, idx] = scored[r];
        out.push_back({idx, d, r + 1, 1.0, reps[idx].category});
    }
    return out;
}

std::vector<Neighbor> find_neighbors(const SparseVector& query, const ConstrictedModel& model, std::size_t k) {
    return find_neighbors(query, std::span<const Representative>(model.representatives), k);
}

std::vector<double> dudani_weights(std::span<const double> distances) {
    if (distances.empty()) throw Error(ErrorKind::InvalidArgument, "dudani_weights needs at least one distance");
    if (!std::is_sorted(distances.begin(), distances.end())) {
        throw Error(ErrorKind::UnsortedInput, "neighbor distances must be ascending");
    }
    const double d1 = distances.front();
    const double dk = distances.back();
    std::vector<double> w(distances.size(), 1.0);
    if (dk != d1) {
        for (std::size_t i = 0; i < distances.size(); ++i) w[i] = (dk - distances[i]) / (dk - d1);
    }
    return w;
}

std::vector<double> rank_weights(std::size_t k) {
    if (k < 1) throw Error(ErrorKind::InvalidK, "k must be >= 1");
    std::vector<double> w(k);
    for (std::size_t i = 0; i < k; ++i) w[i] = static_cast<double>(k - i);
    return w;
}

std::vector<double> vote_weights(std::span<const Neighbor> neighbors, WeightMode mode) {
    const std::size_t used = neighbors.size();
    std::vector<double> weights(used, 1.0);
    if (used == 0) return weights;
    if (mode == WeightMode::Linear || mode == WeightMode::LinearTimesRank) {
        std::vector<double> d(used);
        for (std::size_t i = 0; i < used; ++i) d[i] = neighbors[i].distance;
        weights = dudani_weights(d);
    }
    if (mode == WeightMode::Rank || mode == WeightMode::LinearTimesRank) {
        const auto r = rank_weights(used);
        for (std::size_t i = 0; i < used; ++i) weights[i] *= r[i];
    }
    return weights;
}

Prediction vote(std::span<const Neighbor> neighbors, WeightMode mode, std::string doc_id) {
    const std::size_t used = neighbors.size();
    if (used == 0) throw Error(ErrorKind::EmptyModel, "no neighbors to vote");
    const std::vector<double> weights = vote_weights(neighbors, mode);

    Prediction p;
    p.doc_id = std::move(doc_id);
    p.k_used = used;
    p.weight_mode = mode;
    std::map<std::string, double> distance_sum;
    for (std::size_t i = 0; i < used; ++i) {
        p.scores[neighbors[i].category] += weights[i];
        distance_sum[neighbors[i].category] += neighbors[i].distance;
    }
    // std::map iterates categories lexicographically, so strict comparisons
    // leave the smaller name in place on a full tie.
    const std::string* best = nullptr;
    for (const auto& [category, score] : p.scores) {
        if (best == nullptr) {
            best = &category;
            continue;
        }
        const double best_score = p.scores.at(*best);
        if (score > best_score ||
            (score == best_score && distance_sum.at(category) < distance_sum.at(*best))) {
            best = &category;
        }
    }
    p.predicted = *best;
    return p;
}

Prediction classify(const SparseVector& query, std::span<const Representative> reps, std::size_t k,
                    WeightMode mode) {
    return vote(find_neighbors(query, reps, k), mode, query.doc_id());
}

Prediction classify(const SparseVector& query, const ConstrictedModel& model, std::size_t k, WeightMode mode) {
    return classify(query, std::span<const Representative>(model.representatives), k, mode);
}

}  // namespace textcat
