#include "textcat/model_io.hpp"

#include "config_json.hpp"
#include "textcat/error.hpp"
#include "textcat/fileio.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

namespace textcat {

using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kFormatTag = "textcat-model";

std::string format_entry(TermId id, double weight) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%u:%.17g", static_cast<unsigned>(id), weight);
    return buf;
}

SparseVector::Entry parse_entry(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorKind::MalformedRecord, "sparse entry '" + text + "' lacks ':'");
    }
    TermId id = 0;
    double w = 0.0;
    const char* begin = text.data();
    const char* mid = begin + colon;
    const char* end = begin + text.size();
    auto r1 = std::from_chars(begin, mid, id);
    auto r2 = std::from_chars(mid + 1, end, w);
    if (r1.ec != std::errc{} || r1.ptr != mid || r2.ec != std::errc{} || r2.ptr != end) {
        throw Error(ErrorKind::MalformedRecord, "malformed sparse entry '" + text + "'");
    }
    return {id, w};
}

}  // namespace

std::string serialize_model(const ConstrictedModel& model) {
    ojson j;
    j["format"] = kFormatTag;
    j["schema_version"] = kSchemaVersion;
    j["config"] = detail::config_to_json_value(model.config);
    j["stopwords"] = model.stopwords;

    ojson conflation = ojson::object();
    for (const auto& [term, rep] : model.conflation.entries()) conflation[term] = rep;
    j["conflation"] = std::move(conflation);

    ojson vocab;
    vocab["n_documents"] = model.vocabulary.n_documents();
    vocab["idf_base"] = to_string(model.vocabulary.idf_base());
    ojson terms = ojson::array();
    for (const auto& s : model.vocabulary.stats()) {
        terms.push_back({{"term", s.term},
                         {"df", s.df},
                         {"cf", s.cf},
                         {"idf", s.idf},
                         {"selection_weight", s.selection_weight}});
    }
    vocab["terms"] = std::move(terms);
    vocab["selected"] = std::vector<TermId>(model.vocabulary.selected().begin(), model.vocabulary.selected().end());
    j["vocabulary"] = std::move(vocab);

    ojson categories = ojson::array();
    for (const auto& c : model.categories) {
        categories.push_back({{"name", c.name},
                              {"documents", c.documents},
                              {"flagged", c.flagged},
                              {"clusters", c.clusters},
                              {"pruned_clusters", c.pruned_clusters},
                              {"representatives", c.representatives},
                              {"fallback", c.fallback}});
    }
    j["categories"] = std::move(categories);

    ojson reps = ojson::array();
    for (const auto& r : model.representatives) {
        std::vector<std::string> entries;
        entries.reserve(r.vector.size());
        for (const auto& [id, w] : r.vector.entries()) entries.push_back(format_entry(id, w));
        reps.push_back({{"category", r.category}, {"source_id", r.source_id}, {"entries", std::move(entries)}});
    }
    j["representatives"] = std::move(reps);
    return j.dump(1) + "\n";
}

ConstrictedModel deserialize_model(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::MalformedRecord, std::string("model is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("format", std::string()) != kFormatTag) {
        throw Error(ErrorKind::ModelVersion, "not a textcat model file");
    }
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != kSchemaVersion) {
        throw Error(ErrorKind::ModelVersion, "unsupported model schema version (expected " +
                                                 std::to_string(kSchemaVersion) + ")");
    }

    ConstrictedModel model;
    try {
        model.config = detail::config_from_json_value(j.at("config"));
        model.stopwords = j.at("stopwords").get<std::vector<std::string>>();

        std::map<std::string, std::string> conflation;
        for (const auto& item : j.at("conflation").items()) {
            conflation.emplace(item.key(), item.value().get<std::string>());
        }
        model.conflation = ConflationMap(std::move(conflation));

        const auto& vocab = j.at("vocabulary");
        std::vector<TermStats> stats;
        for (const auto& t : vocab.at("terms")) {
            TermStats s;
            s.term = t.at("term").get<std::string>();
            s.term_id = static_cast<TermId>(stats.size());
            s.df = t.at("df").get<std::size_t>();
            s.cf = t.at("cf").get<std::size_t>();
            s.idf = t.at("idf").get<double>();
            s.selection_weight = t.at("selection_weight").get<double>();
            stats.push_back(std::move(s));
        }
        model.vocabulary = Vocabulary(std::move(stats), vocab.at("n_documents").get<std::size_t>(),
                                      parse_idf_base(vocab.at("idf_base").get<std::string>()),
                                      vocab.at("selected").get<std::vector<TermId>>());

        for (const auto& c : j.at("categories")) {
            CategorySummary s;
            s.name = c.at("name").get<std::string>();
            s.documents = c.at("documents").get<std::size_t>();
            s.flagged = c.at("flagged").get<std::size_t>();
            s.clusters = c.at("clusters").get<std::size_t>();
            s.pruned_clusters = c.at("pruned_clusters").get<std::size_t>();
            s.representatives = c.at("representatives").get<std::size_t>();
            s.fallback = c.at("fallback").get<bool>();
            model.categories.push_back(std::move(s));
        }

        for (const auto& r : j.at("representatives")) {
            std::vector<SparseVector::Entry> entries;
            for (const auto& e : r.at("entries")) entries.push_back(parse_entry(e.get<std::string>()));
            for (const auto& [id, w] : entries) {
                if (id >= model.vocabulary.size()) {
                    throw Error(ErrorKind::MalformedRecord, "representative references unknown term id " +
                                                                std::to_string(id));
                }
                if (!(w > 0.0)) throw Error(ErrorKind::MalformedRecord, "representative weights must be positive");
            }
            const auto source = r.at("source_id").get<std::string>();
            model.representatives.push_back(
                {SparseVector(std::move(entries), source), r.at("category").get<std::string>(), source});
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::MalformedRecord, std::string("malformed model file: ") + e.what());
    }
    return model;
}

void save_model(const std::filesystem::path& path, const ConstrictedModel& model) {
    write_file_atomic(path, serialize_model(model));
}

ConstrictedModel load_model(const std::filesystem::path& path) {
    return deserialize_model(read_file(path));
}

void write_predictions(std::ostream& out, std::span<const Prediction> predictions) {
    for (const auto& p : predictions) {
        ojson j;
        j["id"] = p.doc_id;
        j["predicted"] = p.predicted;
        ojson scores = ojson::object();
        for (const auto& [category, w] : p.scores) scores[category] = w;
        j["scores"] = std::move(scores);
        out << j.dump() << '\n';
    }
}

std::vector<Prediction> read_predictions(std::istream& in) {
    std::vector<Prediction> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = ojson::parse(line);
            Prediction p;
            p.doc_id = j.at("id").get<std::string>();
            p.predicted = j.at("predicted").get<std::string>();
            for (const auto& item : j.at("scores").items()) p.scores[item.key()] = item.value().get<double>();
            out.push_back(std::move(p));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::MalformedRecord, "predictions line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace textcat
