#pragma once

// Independent reference implementations used only by tests. None of these
// share code paths with the library routines they check.

#include "textcat/sparse_vector.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace textcat::testing {

/// The edit-distance recurrence evaluated by plain recursion. Exponential;
/// keep inputs short.
template <typename Seq>
std::size_t lev_naive(const Seq& a, const Seq& b, std::size_t i, std::size_t j) {
    if (std::min(i, j) == 0) return std::max(i, j);
    return std::min({lev_naive(a, b, i - 1, j) + 1, lev_naive(a, b, i, j - 1) + 1,
                     lev_naive(a, b, i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1)});
}

template <typename Seq>
std::size_t lev_naive(const Seq& a, const Seq& b) {
    return lev_naive(a, b, a.size(), b.size());
}

/// Same recurrence, top-down with a full memo table so longer inputs stay
/// tractable.
template <typename Seq>
class LevMemo {
public:
    LevMemo(const Seq& a, const Seq& b)
        : a_(a), b_(b), memo_((a.size() + 1) * (b.size() + 1), std::numeric_limits<std::size_t>::max()) {}

    std::size_t operator()() { return at(a_.size(), b_.size()); }

private:
    std::size_t at(std::size_t i, std::size_t j) {
        if (std::min(i, j) == 0) return std::max(i, j);
        auto& slot = memo_[i * (b_.size() + 1) + j];
        if (slot != std::numeric_limits<std::size_t>::max()) return slot;
        slot = std::min({at(i - 1, j) + 1, at(i, j - 1) + 1, at(i - 1, j - 1) + (a_[i - 1] == b_[j - 1] ? 0 : 1)});
        return slot;
    }

    const Seq& a_;
    const Seq& b_;
    std::vector<std::size_t> memo_;
};

template <typename Seq>
std::size_t lev_memo(const Seq& a, const Seq& b) {
    return LevMemo<Seq>(a, b)();
}

template <typename Seq>
std::size_t hamming(const Seq& a, const Seq& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] == b[i] ? 0 : 1;
    return d;
}

/// Cosine by densifying both vectors over the union of their ids.
inline double cosine_dense(const SparseVector& a, const SparseVector& b) {
    std::map<TermId, std::pair<double, double>> dense;
    for (const auto& [id, w] : a.entries()) dense[id].first = w;
    for (const auto& [id, w] : b.entries()) dense[id].second = w;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [id, ab] : dense) {
        dot += ab.first * ab.second;
        na += ab.first * ab.first;
        nb += ab.second * ab.second;
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

/// Minimum total cost over every k-subset of medoids, by enumeration.
template <typename Dist>
double kmedoids_exhaustive(std::size_t n, std::size_t k, const Dist& dist) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    double best = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < n; ++m) {
                if (pick[m]) nearest = std::min(nearest, dist(j, m));
            }
            cost += nearest;
        }
        best = std::min(best, cost);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best;
}

}  // namespace textcat::testing
