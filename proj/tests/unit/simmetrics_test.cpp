#include "textcat/error.hpp"
#include "textcat/simmetrics.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace textcat {
namespace {

using testing::cosine_dense;
using testing::lev_naive;

TEST(Levenshtein, Classic) {
    EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
    EXPECT_EQ(lev_naive(std::string("kitten"), std::string("sitting")), 3u);
    EXPECT_EQ(levenshtein("", "abc"), 3u);
    EXPECT_EQ(levenshtein("abc", ""), 3u);
    EXPECT_EQ(levenshtein("", ""), 0u);
    EXPECT_EQ(levenshtein("flaw", "lawn"), 2u);
}

TEST(Levenshtein, TokenSequences) {
    const std::vector<TermId> a = {1, 2, 3, 4};
    const std::vector<TermId> b = {1, 3, 4, 5};
    EXPECT_EQ(levenshtein(a, b), 2u);
    EXPECT_EQ(levenshtein(a, a), 0u);
}

TEST(LevenshteinProperty, MetricAxiomsAndNaiveAgreement) {
    std::mt19937_64 rng(17);
    auto random_seq = [&] {
        std::vector<TermId> s(rng() % 8);
        for (auto& x : s) x = static_cast<TermId>(rng() % 4);
        return s;
    };
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = random_seq(), b = random_seq(), c = random_seq();
        const auto ab = levenshtein(a, b);
        EXPECT_EQ(ab, lev_naive(a, b));
        EXPECT_EQ(ab, levenshtein(b, a));
        EXPECT_EQ(ab == 0, a == b);
        EXPECT_LE(levenshtein(a, c), ab + levenshtein(b, c));
        EXPECT_GE(ab, a.size() > b.size() ? a.size() - b.size() : b.size() - a.size());
        EXPECT_LE(ab, std::max(a.size(), b.size()));
    }
}

TEST(Digrams, DistinctAndSorted) {
    // "banana": ba an na an na -> {an, ba, na}
    const auto d = digrams("banana");
    ASSERT_EQ(d.size(), 3u);
    EXPECT_TRUE(std::is_sorted(d.begin(), d.end()));
    EXPECT_TRUE(digrams("a").empty());
    EXPECT_TRUE(digrams("").empty());
}

TEST(Dice, NightNacht) {
    // night: ni ig gh ht; nacht: na ac ch ht; shared: ht -> 2/8
    EXPECT_DOUBLE_EQ(dice("night", "nacht"), 0.25);
    EXPECT_DOUBLE_EQ(dice("nacht", "night"), 0.25);
}

TEST(Dice, EdgeCases) {
    EXPECT_DOUBLE_EQ(dice("same", "same"), 1.0);
    EXPECT_DOUBLE_EQ(dice("abc", "xyz"), 0.0);
    EXPECT_DOUBLE_EQ(dice("a", "a"), 1.0);
    EXPECT_DOUBLE_EQ(dice("a", "b"), 0.0);
    EXPECT_DOUBLE_EQ(dice("a", "ab"), 0.0);
}

TEST(DiceProperty, SymmetricAndBounded) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 500; ++trial) {
        std::string a(1 + rng() % 7, 'a'), b(1 + rng() % 7, 'a');
        for (auto& c : a) c = static_cast<char>('a' + rng() % 4);
        for (auto& c : b) c = static_cast<char>('a' + rng() % 4);
        const double s = dice(a, b);
        EXPECT_DOUBLE_EQ(s, dice(b, a));
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, 1.0);
        EXPECT_DOUBLE_EQ(dice(a, a), 1.0);
    }
}

TEST(SparseVector, NormalizesEntries) {
    const SparseVector v({{5, 1.0}, {2, 2.0}, {5, 0.5}, {9, 0.0}}, "d");
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v.entries()[0], (SparseVector::Entry{2, 2.0}));
    EXPECT_EQ(v.entries()[1], (SparseVector::Entry{5, 1.5}));
    EXPECT_DOUBLE_EQ(v.weight(9), 0.0);
    EXPECT_DOUBLE_EQ(v.squared_norm(), 4.0 + 2.25);
    EXPECT_EQ(v.doc_id(), "d");
}

TEST(Cosine, Fixtures) {
    const SparseVector a({{0, 1.0}, {1, 1.0}});
    const SparseVector b({{0, 1.0}, {2, 1.0}});
    EXPECT_NEAR(cosine(a, b), 0.5, 1e-15);
    EXPECT_NEAR(cosine(a, a), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(cosine(a, SparseVector({{7, 3.0}})), 0.0);
    EXPECT_DOUBLE_EQ(cosine(a, SparseVector()), 0.0);
    EXPECT_DOUBLE_EQ(cosine(SparseVector(), SparseVector()), 0.0);
}

TEST(Cosine, NegativeWeightRejected) {
    const SparseVector a({{0, 1.0}});
    const SparseVector neg({{0, -1.0}});
    try {
        cosine(a, neg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NegativeWeight);
    }
}

SparseVector random_vector(std::mt19937_64& rng, double scale = 1.0) {
    std::vector<SparseVector::Entry> e;
    const auto n = rng() % 12;
    std::uniform_real_distribution<double> w(0.0, 5.0);
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<TermId>(rng() % 30), scale * w(rng));
    return SparseVector(std::move(e));
}

TEST(CosineProperty, MatchesDenseFormulaAndIsScaleInvariant) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = random_vector(rng), b = random_vector(rng);
        const double c = cosine(a, b);
        EXPECT_NEAR(c, cosine_dense(a, b), 1e-12);
        EXPECT_GE(c, 0.0);
        EXPECT_LE(c, 1.0);
        EXPECT_DOUBLE_EQ(c, cosine(b, a));
        std::vector<SparseVector::Entry> scaled;
        for (const auto& [id, w] : a.entries()) scaled.emplace_back(id, 3.5 * w);
        EXPECT_NEAR(cosine(SparseVector(scaled), b), c, 1e-12);
    }
}

TEST(Dot, SortedMerge) {
    EXPECT_DOUBLE_EQ(dot(SparseVector({{1, 2.0}, {3, 4.0}}), SparseVector({{3, 0.5}, {4, 9.0}})), 2.0);
}

}  // namespace
}  // namespace textcat
