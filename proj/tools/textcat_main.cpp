// textcat: train, apply and evaluate the medoid-condensed kNN text classifier.
//
// Exit codes: 0 success, 2 input error, 3 empty result, 4 I/O failure.

#include "textcat/config.hpp"
#include "textcat/corpus.hpp"
#include "textcat/error.hpp"
#include "textcat/evalrep.hpp"
#include "textcat/fileio.hpp"
#include "textcat/model_io.hpp"
#include "textcat/pipeline.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace textcat;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Pipeline flags bound to a PipelineConfig. A `--config` file supplies values
/// for every flag not given on the command line.
class ConfigFlags {
public:
    ConfigFlags(CLI::App& app, bool with_training_flags) {
        app.add_option("--config", config_file_, "Flat JSON config file; command-line flags override it");
        bind(app, "--threads", config_.threads, "Worker threads", &PipelineConfig::threads);
        bind(app, "--k", config_.k, "Neighbors consulted by the classifier", &PipelineConfig::k);
        bind_text(app, "--weight-mode", weight_mode_, "Vote weighting: none|linear|rank|linear-rank",
                  [](PipelineConfig& c, const std::string& v) { c.weight_mode = parse_weight_mode(v); },
                  [](const PipelineConfig& c) { return std::string(to_string(c.weight_mode)); });
        if (!with_training_flags) return;

        bind(app, "--corpus", config_.corpus, "JSONL corpus path", &PipelineConfig::corpus);
        bind(app, "--stopwords", config_.stopwords, "Stopword file (empty: built-in English list)",
             &PipelineConfig::stopwords);
        bind(app, "--min-token-len", config_.min_token_len, "Minimum token length in bytes",
             &PipelineConfig::min_token_len);
        bind(app, "--conflate-tau", config_.conflate_tau, "Dice threshold for digram conflation",
             &PipelineConfig::conflate_tau);
        bind(app, "--n-features", config_.n_features, "Number of TF-IDF features kept",
             &PipelineConfig::n_features);
        bind_text(app, "--weighting", weighting_, "Vector weighting: tf|tfidf",
                  [](PipelineConfig& c, const std::string& v) { c.weighting = parse_weighting(v); },
                  [](const PipelineConfig& c) { return std::string(to_string(c.weighting)); });
        bind_text(app, "--idf-base", idf_base_, "IDF logarithm base: 10|e",
                  [](PipelineConfig& c, const std::string& v) { c.idf_base = parse_idf_base(v); },
                  [](const PipelineConfig& c) { return std::string(to_string(c.idf_base)); });
        bind(app, "--k-fraction", config_.k_fraction, "Medoids per category as a fraction of its size",
             &PipelineConfig::k_fraction);
        bind(app, "--min-cluster-size", config_.min_cluster_size, "Clusters smaller than this are pruned",
             &PipelineConfig::min_cluster_size);
        bind(app, "--outlier-sigma", config_.outlier_sigma, "High-flier threshold in standard deviations",
             &PipelineConfig::outlier_sigma);
        bind(app, "--edit-cap", config_.edit_cap, "Tokens per document compared by edit distance",
             &PipelineConfig::edit_cap);
        bind(app, "--restarts", config_.restarts, "k-medoids restarts (best cost kept)",
             &PipelineConfig::restarts);
        bind(app, "--max-iter", config_.max_iter, "Maximum k-medoids swaps per restart",
             &PipelineConfig::max_iter);
        bind(app, "--seed", config_.seed, "Random seed", &PipelineConfig::seed);
        auto* flag = app.add_flag("--fallback-full-category,!--no-fallback-full-category",
                                  config_.fallback_full_category,
                                  "Represent an emptied category by all of its documents");
        overrides_.push_back({flag, [](PipelineConfig& dst, const PipelineConfig& src) {
                                  dst.fallback_full_category = src.fallback_full_category;
                              }});
    }

    /// Merges the config file and validates. Call after parsing.
    PipelineConfig resolve(const PipelineConfig& base = {}) {
        PipelineConfig file = base;
        if (!config_file_.empty()) file = config_from_json(read_file(config_file_));
        PipelineConfig out = file;
        for (auto& [option, copy] : overrides_) {
            if (option->count() > 0) copy(out, config_);
        }
        for (auto& apply : text_fields_) apply(out);
        validate(out);
        return out;
    }

private:
    template <typename T>
    void bind(CLI::App& app, const std::string& name, T& field, const std::string& help, T PipelineConfig::*member) {
        auto* opt = app.add_option(name, field, help)->capture_default_str();
        overrides_.push_back({opt, [member](PipelineConfig& dst, const PipelineConfig& src) {
                                  dst.*member = src.*member;
                              }});
    }

    void bind_text(CLI::App& app, const std::string& name, std::string& storage, const std::string& help,
                   std::function<void(PipelineConfig&, const std::string&)> set,
                   std::function<std::string(const PipelineConfig&)> get) {
        storage = get(config_);
        auto* opt = app.add_option(name, storage, help)->capture_default_str();
        text_fields_.push_back([opt, &storage, set](PipelineConfig& c) {
            if (opt->count() > 0) set(c, storage);
        });
        overrides_.push_back({opt, [](PipelineConfig&, const PipelineConfig&) {}});
    }

    PipelineConfig config_;
    std::string config_file_;
    std::string weight_mode_;
    std::string weighting_;
    std::string idf_base_;
    std::vector<std::pair<CLI::Option*, std::function<void(PipelineConfig&, const PipelineConfig&)>>> overrides_;
    std::vector<std::function<void(PipelineConfig&)>> text_fields_;
};

void print_category_table(const ConstrictedModel& model) {
    std::printf("%-24s %9s %8s %9s %7s %16s\n", "category", "documents", "flagged", "clusters", "pruned",
                "representatives");
    for (const auto& c : model.categories) {
        std::printf("%-24s %9zu %8zu %9zu %7zu %16zu%s\n", c.name.c_str(), c.documents, c.flagged, c.clusters,
                    c.pruned_clusters, c.representatives, c.fallback ? "  (fallback)" : "");
    }
}

int cmd_ingest(const std::string& input, const std::string& format, const std::string& out) {
    if (format != "jsonl") throw Error(ErrorKind::InvalidArgument, "only --format jsonl is supported");
    const Corpus corpus = run_stage("load_corpus", [&] { return load_corpus(input); });
    const auto split = apply_split(corpus);
    run_stage("write_cache", [&] { save_corpus(out, corpus); });
    std::printf("ingested %zu documents (%zu train, %zu test, %zu unused), %zu categories -> %s\n",
                corpus.size(), split.train.size(), split.test.size(), split.unused_count,
                corpus.categories().size(), out.c_str());
    return 0;
}

int cmd_train(const PipelineConfig& config, const std::string& out, bool print_config) {
    if (config.corpus.empty()) throw Error(ErrorKind::InvalidArgument, "--corpus is required").with_stage("config");
    if (print_config) std::cout << config_to_json(config) << '\n';
    const Corpus corpus = run_stage("load_corpus", [&] { return load_corpus(config.corpus); });
    const TrainOutput result = train(corpus, config);
    run_stage("write_model", [&] { save_model(out, result.model); });

    const auto& d = result.data;
    std::printf("train documents: %zu (dropped %zu multi-label), test documents: %zu, unused: %zu\n",
                d.train.size(), d.dropped_multilabel, d.test.size(), d.unused_count);
    std::printf("removed categories: %zu, vocabulary: %zu terms, %zu selected, %zu conflated\n",
                d.removed_categories.size(), d.vocabulary.size(), d.vocabulary.selected().size(),
                d.conflation.entries().size());
    print_category_table(result.model);
    std::printf("representatives: %zu of %zu training documents\n", result.model.representatives.size(),
                d.train.size());
    std::printf("training time: %.3f s\n", result.seconds);
    return 0;
}

int cmd_predict(const std::string& model_path, const std::string& input, const std::string& out,
                ConfigFlags& flags) {
    const ConstrictedModel model = run_stage("load_model", [&] { return load_model(model_path); });
    const PipelineConfig config = run_stage("config", [&] { return flags.resolve(model.config); });
    LoadOptions options;
    options.require_labels_and_split = false;
    const Corpus docs = run_stage("load_input", [&] { return load_corpus(input, CorpusFormat::JsonLines, options); });

    const auto start = std::chrono::steady_clock::now();
    const auto predictions = predict_all(model, docs.documents(), config.k, config.weight_mode, config.threads);
    const double elapsed = seconds_since(start);

    std::ostringstream buffer;
    write_predictions(buffer, predictions);
    run_stage("write_predictions", [&] { write_file_atomic(out, buffer.str()); });
    std::printf("classified %zu documents (k=%zu, weights=%s) in %.3f s -> %s\n", predictions.size(), config.k,
                to_string(config.weight_mode), elapsed, out.c_str());
    return 0;
}

struct EvaluateArgs {
    std::string model;
    std::string corpus;
    std::string predictions_out;
    std::string report_out;
    std::string report_format = "json";
    bool baseline_full_knn = false;
};

int cmd_evaluate(const EvaluateArgs& args, ConfigFlags& flags) {
    const ConstrictedModel trained = run_stage("load_model", [&] { return load_model(args.model); });
    const PipelineConfig config = run_stage("config", [&] { return flags.resolve(trained.config); });
    const Corpus corpus = run_stage("load_corpus", [&] { return load_corpus(args.corpus); });

    auto start = std::chrono::steady_clock::now();
    const ConstrictedModel model = args.baseline_full_knn ? full_model_from(trained, corpus) : trained;
    const double setup_seconds = seconds_since(start);

    const Corpus test = evaluation_split(corpus, model);
    start = std::chrono::steady_clock::now();
    const auto predictions = predict_all(model, test.documents(), config.k, config.weight_mode, config.threads);
    const double test_seconds = seconds_since(start);

    EvalReport report = run_stage("evaluate", [&] { return evaluate(predictions, test); });
    report.timings = {setup_seconds, test_seconds};

    if (!args.predictions_out.empty()) {
        std::ostringstream buffer;
        write_predictions(buffer, predictions);
        run_stage("write_predictions", [&] { write_file_atomic(args.predictions_out, buffer.str()); });
    }
    std::printf("%s over %zu representatives, k=%zu, weights=%s\n\n",
                args.baseline_full_knn ? "full kNN" : "condensed kNN", model.representatives.size(), config.k,
                to_string(config.weight_mode));
    write_report_table(std::cout, report);
    if (!args.report_out.empty()) {
        std::ostringstream buffer;
        if (args.report_format == "tsv") {
            write_report_tsv(buffer, report);
        } else if (args.report_format == "json") {
            buffer << report_to_json(report);
        } else {
            throw Error(ErrorKind::InvalidArgument, "--report-format must be json or tsv").with_stage("report");
        }
        run_stage("write_report", [&] { write_file_atomic(args.report_out, buffer.str()); });
    }
    return 0;
}

struct Sample {
    std::vector<double> values;
    void add(double v) { values.push_back(v); }
    double mean() const {
        double s = 0.0;
        for (double v : values) s += v;
        return values.empty() ? 0.0 : s / static_cast<double>(values.size());
    }
    double stddev() const {
        if (values.size() < 2) return 0.0;
        const double m = mean();
        double s = 0.0;
        for (double v : values) s += (v - m) * (v - m);
        return std::sqrt(s / static_cast<double>(values.size() - 1));
    }
};

int cmd_bench(const PipelineConfig& config, std::size_t repetitions, const std::string& bench_out) {
    if (config.corpus.empty()) throw Error(ErrorKind::InvalidArgument, "--corpus is required").with_stage("config");
    if (repetitions < 1) throw Error(ErrorKind::InvalidArgument, "--repetitions must be >= 1").with_stage("config");
    const Corpus corpus = run_stage("load_corpus", [&] { return load_corpus(config.corpus); });

    struct Variant {
        const char* name;
        bool condensed;
        WeightMode mode;
        Sample train, test, accuracy;
    };
    const WeightMode weighted = config.weight_mode == WeightMode::None ? WeightMode::Rank : config.weight_mode;
    std::vector<Variant> variants = {{"AkNN with Weight", true, weighted, {}, {}, {}},
                                     {"AkNN without Weight", true, WeightMode::None, {}, {}, {}},
                                     {"kNN", false, WeightMode::None, {}, {}, {}}};

    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        for (auto& v : variants) {
            auto start = std::chrono::steady_clock::now();
            const TrainingData data = prepare_training(corpus, config);
            const ConstrictedModel model = v.condensed ? condense(data, config) : full_model(data, config);
            v.train.add(seconds_since(start));

            const Corpus test = evaluation_split(corpus, model);
            start = std::chrono::steady_clock::now();
            const auto predictions = predict_all(model, test.documents(), config.k, v.mode, config.threads);
            v.test.add(seconds_since(start));
            v.accuracy.add(evaluate(predictions, test).accuracy);
        }
    }

    std::printf("# %zu repetitions per variant; wall-clock seconds as mean (sd); training includes\n"
                "# preprocessing and feature selection, testing covers classification only.\n",
                repetitions);
    std::printf("%-28s", "Modified Apte split");
    for (const auto& v : variants) std::printf(" %24s", v.name);
    std::printf("\n");
    auto row = [&](const char* label, auto pick, const char* fmt) {
        std::printf("%-28s", label);
        for (const auto& v : variants) {
            const Sample& s = pick(v);
            char cell[64];
            std::snprintf(cell, sizeof cell, fmt, s.mean(), s.stddev());
            std::printf(" %24s", cell);
        }
        std::printf("\n");
    };
    row("Training Set (s)", [](const Variant& v) -> const Sample& { return v.train; }, "%.4f (%.4f)");
    row("Testing Set (s)", [](const Variant& v) -> const Sample& { return v.test; }, "%.4f (%.4f)");
    row("Overall Accuracy", [](const Variant& v) -> const Sample& { return v.accuracy; }, "%.4f (%.4f)");

    if (!bench_out.empty()) {
        std::ostringstream out;
        out << "{\n  \"repetitions\": " << repetitions << ",\n  \"variants\": [\n";
        for (std::size_t i = 0; i < variants.size(); ++i) {
            const auto& v = variants[i];
            char buf[512];
            std::snprintf(buf, sizeof buf,
                          "    {\"name\": \"%s\", \"weight_mode\": \"%s\", \"train_seconds_mean\": %.17g, "
                          "\"train_seconds_sd\": %.17g, \"test_seconds_mean\": %.17g, \"test_seconds_sd\": %.17g, "
                          "\"accuracy_mean\": %.17g}%s\n",
                          v.name, to_string(v.mode), v.train.mean(), v.train.stddev(), v.test.mean(),
                          v.test.stddev(), v.accuracy.mean(), i + 1 < variants.size() ? "," : "");
            out << buf;
        }
        out << "  ]\n}\n";
        run_stage("write_bench", [&] { write_file_atomic(bench_out, out.str()); });
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"textcat: medoid-condensed weighted kNN text categorization"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "textcat model schema version " + std::to_string(kSchemaVersion));

    auto* ingest = app.add_subcommand("ingest", "Validate a JSONL corpus and write a normalized cache");
    std::string ingest_input, ingest_format = "jsonl", ingest_out;
    ingest->add_option("--input", ingest_input, "Input corpus (JSON Lines)")->required();
    ingest->add_option("--format", ingest_format, "Input format")->capture_default_str();
    ingest->add_option("--out", ingest_out, "Output corpus cache")->required();

    auto* train_cmd = app.add_subcommand("train", "Build a condensed model from the corpus training split");
    ConfigFlags train_flags(*train_cmd, true);
    std::string train_out;
    bool print_config = false;
    train_cmd->add_option("--out", train_out, "Model file to write")->required();
    train_cmd->add_flag("--print-config", print_config, "Print the resolved configuration");

    auto* predict_cmd = app.add_subcommand("predict", "Classify JSONL documents with a trained model");
    ConfigFlags predict_flags(*predict_cmd, false);
    std::string predict_model, predict_input, predict_out;
    predict_cmd->add_option("--model", predict_model, "Model file")->required();
    predict_cmd->add_option("--input", predict_input, "Documents to classify (JSONL with id and text)")->required();
    predict_cmd->add_option("--out", predict_out, "Predictions file (JSONL)")->required();

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Classify the corpus test split and report P/R/F1");
    ConfigFlags evaluate_flags(*evaluate_cmd, false);
    EvaluateArgs eval_args;
    evaluate_cmd->add_option("--model", eval_args.model, "Model file")->required();
    evaluate_cmd->add_option("--corpus", eval_args.corpus, "Corpus with train/test split tags")->required();
    evaluate_cmd->add_option("--predictions-out", eval_args.predictions_out, "Also write predictions (JSONL)");
    evaluate_cmd->add_option("--report-out", eval_args.report_out, "Machine-readable report file");
    evaluate_cmd->add_option("--report-format", eval_args.report_format, "Report file format: json|tsv")
        ->capture_default_str();
    evaluate_cmd->add_flag("--baseline-full-knn", eval_args.baseline_full_knn,
                           "Classify against every training vector instead of the condensed set");

    auto* bench_cmd = app.add_subcommand("bench", "Time full kNN against condensed kNN with and without weights");
    ConfigFlags bench_flags(*bench_cmd, true);
    std::size_t repetitions = 3;
    std::string bench_out;
    bench_cmd->add_option("--repetitions", repetitions, "Runs per variant")->capture_default_str();
    bench_cmd->add_option("--bench-out", bench_out, "Write timings as JSON");

    const char* command = "textcat";
    try {
        app.parse(argc, argv);
        if (ingest->parsed()) {
            command = "ingest";
            return cmd_ingest(ingest_input, ingest_format, ingest_out);
        }
        if (train_cmd->parsed()) {
            command = "train";
            return cmd_train(run_stage("config", [&] { return train_flags.resolve(); }), train_out, print_config);
        }
        if (predict_cmd->parsed()) {
            command = "predict";
            return cmd_predict(predict_model, predict_input, predict_out, predict_flags);
        }
        if (evaluate_cmd->parsed()) {
            command = "evaluate";
            return cmd_evaluate(eval_args, evaluate_flags);
        }
        if (bench_cmd->parsed()) {
            command = "bench";
            return cmd_bench(run_stage("config", [&] { return bench_flags.resolve(); }), repetitions, bench_out);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "textcat " << command << ": " << (e.stage().empty() ? std::string("error") : e.stage())
                  << ": " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "textcat " << command << ": internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
