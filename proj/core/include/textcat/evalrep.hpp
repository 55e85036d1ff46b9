#pragma once

#include "textcat/aknn.hpp"
#include "textcat/corpus.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace textcat {

/// tp / (tp + fp), 0 when nothing was predicted.
double precision(std::size_t tp, std::size_t fp) noexcept;
/// tp / (tp + fn), 0 when there are no targets.
double recall(std::size_t tp, std::size_t fn) noexcept;
/// 2PR / (P + R), 0 when both are 0.
double f1(double precision, double recall) noexcept;

struct CategoryCounts {
    std::string category;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
};

struct CategoryMetrics {
    std::string category;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;  // gold documents carrying the category
    CategoryCounts counts;
};

struct AveragedMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct Timings {
    double train_seconds = 0.0;
    double test_seconds = 0.0;
};

struct EvalReport {
    std::vector<CategoryMetrics> per_category;  // ordered by category name
    AveragedMetrics micro;
    AveragedMetrics macro;
    double accuracy = 0.0;  // predicted label is one of the gold labels
    std::size_t documents = 0;
    Timings timings;
};

/// One-vs-rest tallies over `gold`: for category c, a document predicted c
/// is a tp when c is among its gold labels and an fp otherwise; every gold
/// label other than the prediction is an fn. Throws UnknownDocId.
EvalReport evaluate(std::span<const Prediction> predictions, const Corpus& gold);

/// Aligned plain-text table with four decimals.
void write_report_table(std::ostream& out, const EvalReport& report);
void write_report_tsv(std::ostream& out, const EvalReport& report);
std::string report_to_json(const EvalReport& report);

}  // namespace textcat
