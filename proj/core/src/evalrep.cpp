#include "textcat/evalrep.hpp"

#include "textcat/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <unordered_map>

namespace textcat {

double precision(std::size_t tp, std::size_t fp) noexcept {
    return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double recall(std::size_t tp, std::size_t fn) noexcept {
    return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double f1(double p, double r) noexcept {
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

EvalReport evaluate(std::span<const Prediction> predictions, const Corpus& gold) {
    std::unordered_map<std::string_view, const Document*> by_id;
    by_id.reserve(gold.size());
    for (const auto& doc : gold.documents()) by_id.emplace(doc.id, &doc);

    std::map<std::string, CategoryMetrics> table;
    std::size_t correct = 0;
    for (const auto& p : predictions) {
        auto it = by_id.find(p.doc_id);
        if (it == by_id.end()) throw Error(ErrorKind::UnknownDocId, "prediction for unknown document '" + p.doc_id + "'");
        const Document& doc = *it->second;

        const bool hit = doc.has_label(p.predicted);
        if (hit) ++correct;
        auto& predicted = table[p.predicted];
        (hit ? predicted.counts.tp : predicted.counts.fp) += 1;
        for (const auto& label : doc.labels) {
            auto& row = table[label];
            ++row.support;
            if (label != p.predicted) ++row.counts.fn;
        }
    }

    EvalReport report;
    report.documents = predictions.size();
    report.accuracy = predictions.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(predictions.size());

    CategoryCounts pooled;
    for (auto& [name, row] : table) {
        row.category = name;
        row.counts.category = name;
        row.precision = precision(row.counts.tp, row.counts.fp);
        row.recall = recall(row.counts.tp, row.counts.fn);
        row.f1 = f1(row.precision, row.recall);
        pooled.tp += row.counts.tp;
        pooled.fp += row.counts.fp;
        pooled.fn += row.counts.fn;
        report.macro.precision += row.precision;
        report.macro.recall += row.recall;
        report.macro.f1 += row.f1;
        report.per_category.push_back(row);
    }
    if (!table.empty()) {
        const auto n = static_cast<double>(table.size());
        report.macro.precision /= n;
        report.macro.recall /= n;
        report.macro.f1 /= n;
    }
    report.micro.precision = precision(pooled.tp, pooled.fp);
    report.micro.recall = recall(pooled.tp, pooled.fn);
    report.micro.f1 = f1(report.micro.precision, report.micro.recall);
    return report;
}

namespace {

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

void write_report_table(std::ostream& out, const EvalReport& report) {
    std::size_t width = std::string("Category").size();
    for (const auto& row : report.per_category) width = std::max(width, row.category.size());
    width = std::max(width, std::string("macro avg").size());

    char line[512];
    auto emit = [&](const std::string& name, const std::string& p, const std::string& r, const std::string& f,
                    const std::string& s) {
        std::snprintf(line, sizeof line, "%-*s  %9s  %9s  %9s  %7s\n", static_cast<int>(width), name.c_str(),
                      p.c_str(), r.c_str(), f.c_str(), s.c_str());
        out << line;
    };
    emit("Category", "Precision", "Recall", "F1", "Support");
    for (const auto& row : report.per_category) {
        emit(row.category, fixed4(row.precision), fixed4(row.recall), fixed4(row.f1), std::to_string(row.support));
    }
    out << '\n';
    emit("micro avg", fixed4(report.micro.precision), fixed4(report.micro.recall), fixed4(report.micro.f1), "");
    emit("macro avg", fixed4(report.macro.precision), fixed4(report.macro.recall), fixed4(report.macro.f1), "");
    out << "accuracy " << fixed4(report.accuracy) << " over " << report.documents << " documents\n";
    out << "train " << fixed4(report.timings.train_seconds) << " s, test " << fixed4(report.timings.test_seconds)
        << " s\n";
}

void write_report_tsv(std::ostream& out, const EvalReport& report) {
    out << "category\tprecision\trecall\tf1\tsupport\ttp\tfp\tfn\n";
    for (const auto& row : report.per_category) {
        out << row.category << '\t' << fixed4(row.precision) << '\t' << fixed4(row.recall) << '\t'
            << fixed4(row.f1) << '\t' << row.support << '\t' << row.counts.tp << '\t' << row.counts.fp << '\t'
            << row.counts.fn << '\n';
    }
    out << "micro avg\t" << fixed4(report.micro.precision) << '\t' << fixed4(report.micro.recall) << '\t'
        << fixed4(report.micro.f1) << "\t\t\t\t\n";
    out << "macro avg\t" << fixed4(report.macro.precision) << '\t' << fixed4(report.macro.recall) << '\t'
        << fixed4(report.macro.f1) << "\t\t\t\t\n";
    out << "accuracy\t" << fixed4(report.accuracy) << "\t\t\t" << report.documents << "\t\t\t\n";
}

std::string report_to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    auto& rows = j["per_category"] = nlohmann::ordered_json::array();
    for (const auto& row : report.per_category) {
        rows.push_back({{"category", row.category},
                        {"precision", row.precision},
                        {"recall", row.recall},
                        {"f1", row.f1},
                        {"support", row.support},
                        {"tp", row.counts.tp},
                        {"fp", row.counts.fp},
                        {"fn", row.counts.fn}});
    }
    j["micro"] = {{"precision", report.micro.precision}, {"recall", report.micro.recall}, {"f1", report.micro.f1}};
    j["macro"] = {{"precision", report.macro.precision}, {"recall", report.macro.recall}, {"f1", report.macro.f1}};
    j["accuracy"] = report.accuracy;
    j["documents"] = report.documents;
    j["timings"] = {{"train_seconds", report.timings.train_seconds},
                    {"test_seconds", report.timings.test_seconds}};
    return j.dump(2) + "\n";
}

}  // namespace textcat
