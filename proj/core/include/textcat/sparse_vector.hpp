#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace textcat {

using TermId = std::uint32_t;

/// Term-id to weight mapping for one document.
///
/// Entries are kept sorted by term id with no duplicates and no stored
/// zeros. Weights are expected to be nonnegative; `cosine` rejects
/// vectors that violate this.
class SparseVector {
public:
    using Entry = std::pair<TermId, double>;

    SparseVector() = default;
    /// Sorts, merges duplicate ids by summing, and drops zero weights.
    explicit SparseVector(std::vector<Entry> entries, std::string doc_id = {});

    std::span<const Entry> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::string& doc_id() const noexcept { return doc_id_; }

    /// Weight for `id`, 0 when absent.
    double weight(TermId id) const noexcept;
    double squared_norm() const noexcept;

    friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
    std::vector<Entry> entries_;
    std::string doc_id_;
};

}  // namespace textcat
