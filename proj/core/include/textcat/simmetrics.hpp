#pragma once

#include "textcat/sparse_vector.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

namespace textcat {

/// Levenshtein distance with unit-cost insertion, deletion and substitution.
///
/// Works on any equality-comparable symbol type; the clustering stage runs it
/// over term-id sequences. Single-row dynamic program: O(|a|·|b|) time,
/// O(min(|a|,|b|)) space.
template <typename Symbol>
std::size_t levenshtein(std::span<const Symbol> a, std::span<const Symbol> b) {
    if (a.size() < b.size()) std::swap(a, b);
    const std::size_t m = b.size();
    if (m == 0) return a.size();

    std::vector<std::size_t> row(m + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        const Symbol& ai = a[i - 1];
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t up = row[j];
            const std::size_t subst = diag + (ai == b[j - 1] ? 0 : 1);
            row[j] = std::min({up + 1, row[j - 1] + 1, subst});
            diag = up;
        }
    }
    return row[m];
}

template <typename Symbol>
std::size_t levenshtein(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
    return levenshtein(std::span<const Symbol>(a), std::span<const Symbol>(b));
}

inline std::size_t levenshtein(std::string_view a, std::string_view b) {
    return levenshtein(std::span<const char>(a.data(), a.size()), std::span<const char>(b.data(), b.size()));
}

/// Distinct adjacent byte pairs of a term, sorted. Each pair is packed as
/// (first << 8) | second.
using DigramSet = std::vector<std::uint16_t>;

DigramSet digrams(std::string_view term);

/// Number of digrams shared by two sorted digram sets.
std::size_t shared_digrams(const DigramSet& a, const DigramSet& b);

/// Dice coefficient 2C/(A+B) over distinct digrams. Terms with no digrams
/// on either side compare by equality (1 or 0).
double dice(std::string_view a, std::string_view b);
double dice(const DigramSet& a, const DigramSet& b);

/// dot(A,B) / (|A|·|B|), or 0 when either norm is zero. Throws NegativeWeight
/// if any stored weight is negative.
double cosine(const SparseVector& a, const SparseVector& b);

/// Dot product over two sorted sparse vectors; no sign checks.
double dot(const SparseVector& a, const SparseVector& b) noexcept;

}  // namespace textcat
