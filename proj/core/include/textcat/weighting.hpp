#pragma once

#include <string_view>

namespace textcat {

/// Vote weighting for the kNN classifier.
enum class WeightMode {
    None,             // every neighbor votes 1
    Linear,           // Dudani linear distance weights
    Rank,             // k - i + 1
    LinearTimesRank,  // elementwise product of the two
};

const char* to_string(WeightMode mode) noexcept;
/// Accepts none | linear | rank | linear-rank.
WeightMode parse_weight_mode(std::string_view text);

}  // namespace textcat
