#include "textcat/config.hpp"

#include "config_json.hpp"
#include "textcat/error.hpp"

#include <set>

namespace textcat {

const char* to_string(WeightMode mode) noexcept {
    switch (mode) {
        case WeightMode::None: return "none";
        case WeightMode::Linear: return "linear";
        case WeightMode::Rank: return "rank";
        case WeightMode::LinearTimesRank: return "linear-rank";
    }
    return "none";
}

WeightMode parse_weight_mode(std::string_view text) {
    if (text == "none") return WeightMode::None;
    if (text == "linear") return WeightMode::Linear;
    if (text == "rank") return WeightMode::Rank;
    if (text == "linear-rank") return WeightMode::LinearTimesRank;
    throw Error(ErrorKind::InvalidArgument, "weight mode must be none|linear|rank|linear-rank");
}

void validate(const PipelineConfig& c) {
    auto bad = [](const std::string& what) { return Error(ErrorKind::InvalidArgument, what); };
    if (c.min_token_len < 1) throw bad("min_token_len must be >= 1");
    if (!(c.conflate_tau >= 0.0 && c.conflate_tau <= 1.0)) throw bad("conflate_tau must lie in [0, 1]");
    if (c.n_features < 1) throw bad("n_features must be >= 1");
    if (!(c.k_fraction > 0.0 && c.k_fraction <= 1.0)) throw bad("k_fraction must lie in (0, 1]");
    if (c.min_cluster_size < 1) throw bad("min_cluster_size must be >= 1");
    if (!(c.outlier_sigma >= 0.0)) throw bad("outlier_sigma must be >= 0");
    if (c.edit_cap < 1) throw bad("edit_cap must be >= 1");
    if (c.restarts < 1) throw bad("restarts must be >= 1");
    if (c.max_iter < 1) throw bad("max_iter must be >= 1");
    if (c.k < 1) throw bad("k must be >= 1");
    if (c.threads < 1) throw bad("threads must be >= 1");
}

namespace detail {

nlohmann::ordered_json config_to_json_value(const PipelineConfig& c) {
    nlohmann::ordered_json j;
    j["corpus"] = c.corpus;
    j["stopwords"] = c.stopwords;
    j["min_token_len"] = c.min_token_len;
    j["conflate_tau"] = c.conflate_tau;
    j["n_features"] = c.n_features;
    j["weighting"] = to_string(c.weighting);
    j["idf_base"] = to_string(c.idf_base);
    j["k_fraction"] = c.k_fraction;
    j["min_cluster_size"] = c.min_cluster_size;
    j["outlier_sigma"] = c.outlier_sigma;
    j["edit_cap"] = c.edit_cap;
    j["restarts"] = c.restarts;
    j["max_iter"] = c.max_iter;
    j["fallback_full_category"] = c.fallback_full_category;
    j["k"] = c.k;
    j["weight_mode"] = to_string(c.weight_mode);
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    return j;
}

PipelineConfig config_from_json_value(const nlohmann::ordered_json& j) {
    if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "config must be a JSON object");
    static const std::set<std::string> known = {
        "corpus",     "stopwords", "min_token_len",  "conflate_tau",     "n_features",
        "weighting",  "idf_base",  "k_fraction",     "min_cluster_size", "outlier_sigma",
        "edit_cap",   "restarts",  "max_iter",       "fallback_full_category",
        "k",          "weight_mode", "seed",         "threads"};
    for (const auto& item : j.items()) {
        if (!known.contains(item.key())) {
            throw Error(ErrorKind::InvalidArgument, "unknown config key '" + item.key() + "'");
        }
    }
    PipelineConfig c;
    try {
        auto get = [&](const char* key, auto& field) {
            if (auto it = j.find(key); it != j.end()) it->get_to(field);
        };
        get("corpus", c.corpus);
        get("stopwords", c.stopwords);
        get("min_token_len", c.min_token_len);
        get("conflate_tau", c.conflate_tau);
        get("n_features", c.n_features);
        if (auto it = j.find("weighting"); it != j.end()) c.weighting = parse_weighting(it->get<std::string>());
        if (auto it = j.find("idf_base"); it != j.end()) c.idf_base = parse_idf_base(it->get<std::string>());
        get("k_fraction", c.k_fraction);
        get("min_cluster_size", c.min_cluster_size);
        get("outlier_sigma", c.outlier_sigma);
        get("edit_cap", c.edit_cap);
        get("restarts", c.restarts);
        get("max_iter", c.max_iter);
        get("fallback_full_category", c.fallback_full_category);
        get("k", c.k);
        if (auto it = j.find("weight_mode"); it != j.end()) {
            c.weight_mode = parse_weight_mode(it->get<std::string>());
        }
        get("seed", c.seed);
        get("threads", c.threads);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("bad config value: ") + e.what());
    }
    validate(c);
    return c;
}

}  // namespace detail

std::vector<std::pair<std::string, std::string>> to_key_values(const PipelineConfig& config) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& item : detail::config_to_json_value(config).items()) {
        const auto& v = item.value();
        out.emplace_back(item.key(), v.is_string() ? v.get<std::string>() : v.dump());
    }
    return out;
}

std::string config_to_json(const PipelineConfig& config) {
    return detail::config_to_json_value(config).dump(2);
}

PipelineConfig config_from_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
    }
    return detail::config_from_json_value(j);
}

}  // namespace textcat
