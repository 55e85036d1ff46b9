#pragma once

#include "textcat/aknn.hpp"
#include "textcat/medoids.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace textcat {

/// Model file layout (JSON, keys in this order):
///
///   format          "textcat-model"
///   schema_version  integer, must equal kSchemaVersion
///   config          flat PipelineConfig object
///   stopwords       sorted array of strings
///   conflation      object term -> representative (non-identity entries)
///   vocabulary      {n_documents, idf_base, terms: [{term, df, cf, idf,
///                   selection_weight}] indexed by term id, selected: [ids]}
///   categories      [{name, documents, flagged, clusters, pruned_clusters,
///                   representatives, fallback}]
///   representatives [{category, source_id, entries: ["id:weight", ...]}]
///
/// Representative weights are written with 17 significant digits and other
/// reals in shortest round-trip form, so loading reproduces every value bit
/// for bit.
std::string serialize_model(const ConstrictedModel& model);
ConstrictedModel deserialize_model(const std::string& text);

void save_model(const std::filesystem::path& path, const ConstrictedModel& model);
/// Throws ModelVersion on a foreign format or schema version, IoFailure on
/// unreadable files and MalformedRecord on structural errors.
ConstrictedModel load_model(const std::filesystem::path& path);

/// One {"id", "predicted", "scores": {category: weight}} object per line.
void write_predictions(std::ostream& out, std::span<const Prediction> predictions);
std::vector<Prediction> read_predictions(std::istream& in);

}  // namespace textcat
