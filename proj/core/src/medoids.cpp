#include "textcat/medoids.hpp"

#include "textcat/error.hpp"
#include "textcat/simmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace textcat {

DistanceMatrix DistanceMatrix::subset(std::span<const std::size_t> indices) const {
    DistanceMatrix out(indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a) {
        for (std::size_t b = a + 1; b < indices.size(); ++b) {
            out.set(a, b, (*this)(indices[a], indices[b]));
        }
    }
    return out;
}

DistanceMatrix edit_distance_matrix(std::span<const std::vector<TermId>> sequences, std::size_t cap,
                                    unsigned threads) {
    std::vector<std::span<const TermId>> truncated;
    truncated.reserve(sequences.size());
    for (const auto& s : sequences) {
        truncated.emplace_back(s.data(), std::min(cap, s.size()));
    }
    return DistanceMatrix::build(std::span<const std::span<const TermId>>(truncated),
                                 [](std::span<const TermId> a, std::span<const TermId> b) {
                                     return levenshtein(a, b);
                                 },
                                 threads);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform draw in [0, bound) by rejection; identical on every platform,
// unlike std::uniform_int_distribution.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t bound) {
    const std::uint64_t range = bound;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % range);
}

struct Assignment {
    std::vector<std::size_t> nearest;  // medoid slot
    std::vector<double> d_nearest;
    std::vector<double> d_second;  // +inf when k == 1
    double cost = 0.0;
};

Assignment assign(const DistanceMatrix& dm, const std::vector<std::size_t>& medoids) {
    const std::size_t n = dm.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    Assignment a;
    a.nearest.assign(n, 0);
    a.d_nearest.assign(n, inf);
    a.d_second.assign(n, inf);

    std::vector<std::size_t> slot_of(n, medoids.size());
    for (std::size_t s = 0; s < medoids.size(); ++s) slot_of[medoids[s]] = s;

    for (std::size_t j = 0; j < n; ++j) {
        std::size_t best = medoids.size();
        double best_d = inf;
        double second_d = inf;
        for (std::size_t s = 0; s < medoids.size(); ++s) {
            const double d = dm(j, medoids[s]);
            const bool better = best == medoids.size() || d < best_d ||
                                (d == best_d && medoids[s] < medoids[best]);
            if (better) {
                if (best != medoids.size()) second_d = std::min(second_d, best_d);
                best = s;
                best_d = d;
            } else {
                second_d = std::min(second_d, d);
            }
        }
        // A medoid always belongs to its own cluster, even next to a duplicate.
        if (slot_of[j] != medoids.size() && slot_of[j] != best) {
            second_d = std::min(second_d, best_d);
            best = slot_of[j];
            best_d = 0.0;
        }
        a.nearest[j] = best;
        a.d_nearest[j] = best_d;
        a.d_second[j] = second_d;
        a.cost += best_d;
    }
    return a;
}

ClusterModel to_model(const DistanceMatrix& dm, const std::vector<std::size_t>& medoids, const Assignment& a) {
    std::vector<std::size_t> slots(medoids.size());
    std::iota(slots.begin(), slots.end(), 0);
    std::sort(slots.begin(), slots.end(), [&](auto x, auto y) { return medoids[x] < medoids[y]; });

    std::vector<std::size_t> position(medoids.size());
    ClusterModel model;
    model.clusters.resize(medoids.size());
    for (std::size_t p = 0; p < slots.size(); ++p) {
        position[slots[p]] = p;
        model.clusters[p].medoid = medoids[slots[p]];
    }
    for (std::size_t j = 0; j < dm.size(); ++j) {
        auto& c = model.clusters[position[a.nearest[j]]];
        c.members.push_back(j);
        c.cost += a.d_nearest[j];
    }
    for (const auto& c : model.clusters) model.total_cost += c.cost;
    return model;
}

}  // namespace

ClusterModel kmedoids(const DistanceMatrix& dm, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
    const std::size_t n = dm.size();
    if (k < 1 || k > n) {
        throw Error(ErrorKind::InvalidK,
                    "k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
    }
    if (max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be >= 1");

    // Partial Fisher-Yates: k distinct indices, uniformly without replacement.
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        std::swap(pool[i], pool[i + uniform_index(rng, n - i)]);
    }
    std::vector<std::size_t> medoids(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));

    std::vector<bool> is_medoid(n, false);
    for (auto m : medoids) is_medoid[m] = true;

    Assignment a = assign(dm, medoids);
    std::vector<double> history{a.cost};
    std::size_t swaps = 0;
    bool converged = false;

    std::vector<double> delta(k);
    while (swaps < max_iter) {
        // Swap deltas for all medoid slots of one candidate in a single pass:
        // delta[s] = sum_j (new_dist_j - old_dist_j) when slot s is replaced by h.
        double best_delta = 0.0;
        std::size_t best_slot = k;
        std::size_t best_candidate = n;
        for (std::size_t h = 0; h < n; ++h) {
            if (is_medoid[h]) continue;
            std::fill(delta.begin(), delta.end(), 0.0);
            double shared = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double dj = dm(j, h);
                const double keep = std::min(dj - a.d_nearest[j], 0.0);
                const double removed = std::min(dj, a.d_second[j]) - a.d_nearest[j];
                shared += keep;
                delta[a.nearest[j]] += removed - keep;
            }
            for (std::size_t s = 0; s < k; ++s) {
                const double total = delta[s] + shared;
                if (best_slot == k || total < best_delta) {
                    best_delta = total;
                    best_slot = s;
                    best_candidate = h;
                }
            }
        }
        const double tolerance = 1e-12 * std::max(1.0, a.cost);
        if (best_slot == k || best_delta >= -tolerance) {
            converged = true;
            break;
        }
        is_medoid[medoids[best_slot]] = false;
        is_medoid[best_candidate] = true;
        medoids[best_slot] = best_candidate;
        a = assign(dm, medoids);
        history.push_back(a.cost);
        ++swaps;
    }

    ClusterModel model = to_model(dm, medoids, a);
    model.cost_history = std::move(history);
    model.swaps = swaps;
    model.converged = converged;
    return model;
}

ClusterModel kmedoids_best_of(const DistanceMatrix& dm, std::size_t k, std::uint64_t seed,
                              std::size_t max_iter, std::size_t restarts) {
    if (restarts < 1) throw Error(ErrorKind::InvalidArgument, "restarts must be >= 1");
    ClusterModel best;
    for (std::size_t r = 0; r < restarts; ++r) {
        ClusterModel run = kmedoids(dm, k, splitmix64(seed + r), max_iter);
        if (r == 0 || run.total_cost < best.total_cost) best = std::move(run);
    }
    return best;
}

double recompute_cost(const ClusterModel& model, const DistanceMatrix& dm) {
    double total = 0.0;
    for (const auto& c : model.clusters) {
        for (auto j : c.members) total += dm(j, c.medoid);
    }
    return total;
}

ClusterModel prune_small_clusters(const ClusterModel& model, std::size_t min_size) {
    if (min_size < 1) throw Error(ErrorKind::InvalidArgument, "min_size must be >= 1");
    ClusterModel out = model;
    std::erase_if(out.clusters, [&](const Cluster& c) { return c.members.size() < min_size; });
    out.total_cost = 0.0;
    for (const auto& c : out.clusters) out.total_cost += c.cost;
    return out;
}

PurgeResult purge_high_fliers(const DistanceMatrix& dm, double sigma) {
    const std::size_t n = dm.size();
    PurgeResult result;
    result.mean_distance.assign(n, 0.0);
    if (n <= 2) {
        result.kept.resize(n);
        std::iota(result.kept.begin(), result.kept.end(), 0);
        for (std::size_t i = 0; i < n && n == 2; ++i) result.mean_distance[i] = dm(0, 1);
        return result;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += dm(i, j);
        result.mean_distance[i] = sum / static_cast<double>(n - 1);
    }
    const double mu = std::accumulate(result.mean_distance.begin(), result.mean_distance.end(), 0.0) /
                      static_cast<double>(n);
    double var = 0.0;
    for (double m : result.mean_distance) var += (m - mu) * (m - mu);
    const double sd = std::sqrt(var / static_cast<double>(n));
    // Absorbs rounding in mu so that equal means are never flagged.
    const double slack = 1e-9 * std::max(1.0, std::abs(mu));
    for (std::size_t i = 0; i < n; ++i) {
        (result.mean_distance[i] - mu > sigma * sd + slack ? result.flagged : result.kept).push_back(i);
    }
    return result;
}

PurgeResult purge_high_fliers(std::span<const std::vector<TermId>> sequences, std::size_t cap, double sigma,
                              unsigned threads) {
    return purge_high_fliers(edit_distance_matrix(sequences, cap, threads), sigma);
}

Corpus drop_multilabel(const Corpus& train) {
    std::vector<Document> kept;
    for (const auto& doc : train.documents()) {
        if (doc.labels.size() <= 1) kept.push_back(doc);
    }
    return Corpus(std::move(kept));
}

std::size_t medoid_count(std::size_t n, double fraction) {
    if (n == 0) return 0;
    // The epsilon keeps products like 0.1 * 40 from rounding up to 5.
    const double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
    const auto k = static_cast<std::size_t>(std::max(1.0, raw));
    return std::min(k, n);
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void check_aligned(const PreparedTraining& data) {
    if (data.tokens.size() != data.train.size() || data.vectors.size() != data.train.size()) {
        throw Error(ErrorKind::InvalidArgument, "prepared training data is not aligned with the corpus");
    }
}

std::map<std::string, std::vector<std::size_t>> documents_by_category(const Corpus& train) {
    std::map<std::string, std::vector<std::size_t>> out;
    const auto& docs = train.documents();
    for (std::size_t i = 0; i < docs.size(); ++i) {
        for (const auto& label : docs[i].labels) out[label].push_back(i);
    }
    return out;
}

}  // namespace

ConstrictedModel build_constricted_model(const PreparedTraining& data, const Vocabulary& vocab,
                                         const PipelineConfig& config) {
    check_aligned(data);
    validate(config);
    const auto& docs = data.train.documents();

    ConstrictedModel model;
    model.config = config;
    model.vocabulary = vocab;

    for (const auto& [category, members] : documents_by_category(data.train)) {
        CategorySummary summary;
        summary.name = category;
        summary.documents = members.size();

        std::vector<std::vector<TermId>> sequences;
        sequences.reserve(members.size());
        for (auto idx : members) sequences.push_back(to_term_ids(data.tokens[idx], vocab));
        const DistanceMatrix all = edit_distance_matrix(sequences, config.edit_cap, config.threads);

        const PurgeResult purge = purge_high_fliers(all, config.outlier_sigma);
        summary.flagged = purge.flagged.size();

        const DistanceMatrix kept = all.subset(purge.kept);
        const std::size_t k = medoid_count(purge.kept.size(), config.k_fraction);
        const ClusterModel clusters =
            kmedoids_best_of(kept, k, config.seed ^ fnv1a(category), config.max_iter, config.restarts);
        const ClusterModel pruned = prune_small_clusters(clusters, config.min_cluster_size);
        summary.clusters = clusters.clusters.size();
        summary.pruned_clusters = clusters.clusters.size() - pruned.clusters.size();

        std::vector<Representative> reps;
        for (const auto& c : pruned.clusters) {
            const std::size_t idx = members[purge.kept[c.medoid]];
            if (data.vectors[idx].empty()) continue;
            reps.push_back({data.vectors[idx], category, docs[idx].id});
        }
        if (reps.empty()) {
            if (!config.fallback_full_category) {
                throw Error(ErrorKind::EmptyCategory, "category '" + category + "' has no representatives left");
            }
            summary.fallback = true;
            for (auto local : purge.kept) {
                const std::size_t idx = members[local];
                if (!data.vectors[idx].empty()) reps.push_back({data.vectors[idx], category, docs[idx].id});
            }
            if (reps.empty()) {
                throw Error(ErrorKind::EmptyCategory,
                            "category '" + category + "' has no document with a nonzero feature vector");
            }
        }
        summary.representatives = reps.size();
        model.categories.push_back(std::move(summary));
        std::move(reps.begin(), reps.end(), std::back_inserter(model.representatives));
    }
    if (model.representatives.empty()) {
        throw Error(ErrorKind::EmptyResult, "training produced no representatives");
    }
    return model;
}

ConstrictedModel build_full_model(const PreparedTraining& data, const Vocabulary& vocab,
                                  const PipelineConfig& config) {
    check_aligned(data);
    const auto& docs = data.train.documents();
    ConstrictedModel model;
    model.config = config;
    model.vocabulary = vocab;
    for (const auto& [category, members] : documents_by_category(data.train)) {
        CategorySummary summary;
        summary.name = category;
        summary.documents = members.size();
        for (auto idx : members) {
            if (data.vectors[idx].empty()) continue;
            model.representatives.push_back({data.vectors[idx], category, docs[idx].id});
            ++summary.representatives;
        }
        model.categories.push_back(std::move(summary));
    }
    if (model.representatives.empty()) {
        throw Error(ErrorKind::EmptyResult, "no training document has a nonzero feature vector");
    }
    return model;
}

}  // namespace textcat
