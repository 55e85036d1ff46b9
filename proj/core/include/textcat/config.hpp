#pragma once

#include "textcat/vsm.hpp"
#include "textcat/weighting.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace textcat {

/// Version of the model file and config schema.
inline constexpr int kSchemaVersion = 1;

/// Every tunable of the train/predict pipeline. Field names double as CLI
/// flag names (underscores become dashes) and config-file keys.
struct PipelineConfig {
    // corpus / textprep
    std::string corpus;
    std::string stopwords;  // empty: built-in English list
    std::size_t min_token_len = 2;
    double conflate_tau = 0.6;

    // vsm
    std::size_t n_features = 2000;
    WeightingScheme weighting = WeightingScheme::TfIdf;
    IdfBase idf_base = IdfBase::Ten;

    // medoids
    double k_fraction = 0.1;
    std::size_t min_cluster_size = 5;
    double outlier_sigma = 2.0;
    std::size_t edit_cap = 256;
    std::size_t restarts = 5;
    std::size_t max_iter = 100;
    bool fallback_full_category = true;

    // aknn
    std::size_t k = 5;
    WeightMode weight_mode = WeightMode::Rank;

    std::uint64_t seed = 42;
    unsigned threads = 1;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Throws InvalidArgument naming the first out-of-range field.
void validate(const PipelineConfig& config);

/// Flat (key, value) pairs in declaration order, values rendered as text.
std::vector<std::pair<std::string, std::string>> to_key_values(const PipelineConfig& config);

/// Flat JSON object with the same keys as `to_key_values`.
std::string config_to_json(const PipelineConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
PipelineConfig config_from_json(const std::string& text);

}  // namespace textcat
