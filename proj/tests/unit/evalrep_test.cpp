#include "textcat/error.hpp"
#include "textcat/evalrep.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace textcat {
namespace {

Prediction pred(std::string id, std::string label) {
    Prediction p;
    p.doc_id = std::move(id);
    p.predicted = std::move(label);
    p.scores[p.predicted] = 1.0;
    return p;
}

struct Fixture {
    Corpus gold;
    std::vector<Prediction> predictions;
};

Fixture ten_documents() {
    const std::vector<std::pair<const char*, const char*>> rows = {
        {"a", "a"}, {"a", "a"}, {"a", "b"}, {"b", "b"}, {"b", "a"},
        {"b", "b"}, {"c", "c"}, {"c", "b"}, {"c", "c"}, {"c", "c"}};
    std::vector<Document> docs;
    Fixture f;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto id = "d" + std::to_string(i + 1);
        docs.push_back({id, "t", {rows[i].first}, Split::Test});
        f.predictions.push_back(pred(id, rows[i].second));
    }
    f.gold = Corpus(std::move(docs));
    return f;
}

TEST(Metrics, ZeroDenominators) {
    EXPECT_DOUBLE_EQ(precision(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(recall(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(f1(0.0, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(f1(0.5, 0.5), 0.5);
}

TEST(Metrics, PublishedF1Pairs) {
    EXPECT_NEAR(f1(0.89, 0.93), 0.9096, 5e-5);
    EXPECT_NEAR(f1(0.70, 0.88), 0.7797, 5e-5);
}

TEST(Evaluate, TenDocumentHandTable) {
    // a: tp 2 fp 1 fn 1 | b: tp 2 fp 2 fn 1 | c: tp 3 fp 0 fn 1
    const auto f = ten_documents();
    const auto r = evaluate(f.predictions, f.gold);
    ASSERT_EQ(r.per_category.size(), 3u);
    const auto& a = r.per_category[0];
    const auto& b = r.per_category[1];
    const auto& c = r.per_category[2];
    EXPECT_EQ(b.counts.tp, 2u);
    EXPECT_EQ(b.counts.fp, 2u);
    EXPECT_EQ(b.counts.fn, 1u);
    EXPECT_EQ(c.support, 4u);
    EXPECT_NEAR(a.precision, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(a.f1, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(b.precision, 0.5, 1e-12);
    EXPECT_NEAR(b.f1, 4.0 / 7.0, 1e-12);
    EXPECT_NEAR(c.recall, 0.75, 1e-12);
    EXPECT_NEAR(c.f1, 6.0 / 7.0, 1e-12);
    EXPECT_NEAR(r.micro.precision, 0.7, 1e-12);
    EXPECT_NEAR(r.micro.recall, 0.7, 1e-12);
    EXPECT_NEAR(r.accuracy, 0.7, 1e-12);
    EXPECT_NEAR(r.macro.precision, (2.0 / 3.0 + 0.5 + 1.0) / 3.0, 1e-12);
    EXPECT_NEAR(r.macro.recall, (2.0 / 3.0 + 2.0 / 3.0 + 0.75) / 3.0, 1e-12);
    EXPECT_NEAR(r.macro.f1, 44.0 / 63.0, 1e-12);
    EXPECT_EQ(r.documents, 10u);
}

TEST(Evaluate, MultiLabelGold) {
    const Corpus gold({{"x", "t", {"a", "b"}, Split::Test}, {"y", "t", {"a", "b"}, Split::Test}});
    const std::vector<Prediction> p = {pred("x", "a"), pred("y", "c")};
    const auto r = evaluate(p, gold);
    ASSERT_EQ(r.per_category.size(), 3u);
    EXPECT_EQ(r.per_category[0].counts.tp, 1u);  // a
    EXPECT_EQ(r.per_category[0].counts.fn, 1u);
    EXPECT_EQ(r.per_category[1].counts.fn, 2u);  // b
    EXPECT_EQ(r.per_category[2].counts.fp, 1u);  // c
    EXPECT_DOUBLE_EQ(r.per_category[2].recall, 0.0);
    EXPECT_DOUBLE_EQ(r.accuracy, 0.5);
}

TEST(Evaluate, UnknownDocId) {
    const Corpus gold({{"x", "t", {"a"}, Split::Test}});
    const std::vector<Prediction> p = {pred("nope", "a")};
    try {
        evaluate(p, gold);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownDocId);
    }
}

TEST(EvaluateProperty, MicroEqualsAccuracyForSingleLabel) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Document> docs;
        std::vector<Prediction> preds;
        const std::size_t n = 1 + rng() % 40;
        for (std::size_t i = 0; i < n; ++i) {
            const auto id = "d" + std::to_string(i);
            docs.push_back({id, "t", {"c" + std::to_string(rng() % 4)}, Split::Test});
            preds.push_back(pred(id, "c" + std::to_string(rng() % 4)));
        }
        const auto r = evaluate(preds, Corpus(std::move(docs)));
        EXPECT_NEAR(r.micro.precision, r.accuracy, 1e-12);
        EXPECT_NEAR(r.micro.recall, r.accuracy, 1e-12);
        EXPECT_NEAR(r.micro.f1, r.accuracy, 1e-12);
        for (const auto& row : r.per_category) {
            EXPECT_GE(row.f1, std::min(row.precision, row.recall) - 1e-12);
            EXPECT_LE(row.f1, std::max(row.precision, row.recall) + 1e-12);
        }
    }
}

TEST(Report, FormatsFourDecimals) {
    const auto f = ten_documents();
    auto r = evaluate(f.predictions, f.gold);
    r.timings = {1.25, 0.5};

    std::ostringstream table;
    write_report_table(table, r);
    EXPECT_NE(table.str().find("0.5714"), std::string::npos);
    EXPECT_NE(table.str().find("accuracy 0.7000 over 10 documents"), std::string::npos);

    std::ostringstream tsv;
    write_report_tsv(tsv, r);
    EXPECT_EQ(tsv.str().substr(0, tsv.str().find('\n')), "category\tprecision\trecall\tf1\tsupport\ttp\tfp\tfn");
    EXPECT_NE(tsv.str().find("b\t0.5000\t0.6667\t0.5714\t3\t2\t2\t1\n"), std::string::npos);

    const auto j = nlohmann::json::parse(report_to_json(r));
    EXPECT_EQ(j["per_category"].size(), 3u);
    EXPECT_DOUBLE_EQ(j["accuracy"].get<double>(), r.accuracy);
    EXPECT_DOUBLE_EQ(j["timings"]["train_seconds"].get<double>(), 1.25);
}

}  // namespace
}  // namespace textcat
