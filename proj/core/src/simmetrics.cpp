#include "textcat/simmetrics.hpp"

#include "textcat/error.hpp"

#include <cmath>

namespace textcat {

SparseVector::SparseVector(std::vector<Entry> entries, std::string doc_id) : doc_id_(std::move(doc_id)) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& x, const Entry& y) { return x.first < y.first; });
    entries_.reserve(entries.size());
    for (const auto& e : entries) {
        if (!entries_.empty() && entries_.back().first == e.first) {
            entries_.back().second += e.second;
        } else {
            entries_.push_back(e);
        }
    }
    std::erase_if(entries_, [](const Entry& e) { return e.second == 0.0; });
}

double SparseVector::weight(TermId id) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                               [](const Entry& e, TermId key) { return e.first < key; });
    return (it != entries_.end() && it->first == id) ? it->second : 0.0;
}

double SparseVector::squared_norm() const noexcept {
    double sum = 0.0;
    for (const auto& [id, w] : entries_) sum += w * w;
    return sum;
}

DigramSet digrams(std::string_view term) {
    DigramSet out;
    if (term.size() < 2) return out;
    out.reserve(term.size() - 1);
    for (std::size_t i = 0; i + 1 < term.size(); ++i) {
        const auto hi = static_cast<unsigned char>(term[i]);
        const auto lo = static_cast<unsigned char>(term[i + 1]);
        out.push_back(static_cast<std::uint16_t>((hi << 8) | lo));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t shared_digrams(const DigramSet& a, const DigramSet& b) {
    std::size_t shared = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++shared;
            ++i;
            ++j;
        }
    }
    return shared;
}

double dice(const DigramSet& a, const DigramSet& b) {
    const std::size_t total = a.size() + b.size();
    if (total == 0) return 1.0;  // both digram-less; equality decided by caller
    return 2.0 * static_cast<double>(shared_digrams(a, b)) / static_cast<double>(total);
}

double dice(std::string_view a, std::string_view b) {
    const DigramSet da = digrams(a);
    const DigramSet db = digrams(b);
    if (da.empty() && db.empty()) return a == b ? 1.0 : 0.0;
    return dice(da, db);
}

double dot(const SparseVector& a, const SparseVector& b) noexcept {
    auto x = a.entries();
    auto y = b.entries();
    double sum = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].first < y[j].first) {
            ++i;
        } else if (y[j].first < x[i].first) {
            ++j;
        } else {
            sum += x[i].second * y[j].second;
            ++i;
            ++j;
        }
    }
    return sum;
}

namespace {

void check_nonnegative(const SparseVector& v) {
    for (const auto& [id, w] : v.entries()) {
        if (w < 0.0) {
            throw Error(ErrorKind::NegativeWeight,
                        "negative weight " + std::to_string(w) + " for term " + std::to_string(id) +
                            (v.doc_id().empty() ? std::string() : " in '" + v.doc_id() + "'"));
        }
    }
}

}  // namespace

double cosine(const SparseVector& a, const SparseVector& b) {
    check_nonnegative(a);
    check_nonnegative(b);
    const double na = a.squared_norm();
    const double nb = b.squared_norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    const double c = dot(a, b) / (std::sqrt(na) * std::sqrt(nb));
    return std::clamp(c, 0.0, 1.0);
}

}  // namespace textcat
