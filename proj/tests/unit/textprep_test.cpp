#include "textcat/simmetrics.hpp"
#include "textcat/textprep.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

namespace textcat {
namespace {

using Tokens = std::vector<std::string>;

TEST(Normalize, LowercasesAndCollapsesWhitespace) {
    EXPECT_EQ(normalize("The  CAT\n sat."), "the cat sat.");
    EXPECT_EQ(normalize(""), "");
    EXPECT_EQ(normalize("A\tB\r\nC"), "a b c");
}

TEST(Normalize, TrimsAndDropsControlCharacters) {
    EXPECT_EQ(normalize("  \t lead and trail \n"), "lead and trail");
    EXPECT_EQ(normalize("bell\x07here"), "bellhere");
    EXPECT_EQ(normalize("caf\xc3\xa9 OK"), "caf\xc3\xa9 ok");
}

TEST(Tokenize, RemovesStopwords) {
    EXPECT_EQ(tokenize("the cat sat", {"the"}).tokens, (Tokens{"cat", "sat"}));
}

TEST(Tokenize, PunctuationDelimits) {
    EXPECT_EQ(tokenize("a1 b2, c3!", {}, 1).tokens, (Tokens{"a1", "b2", "c3"}));
}

TEST(Tokenize, MinimumLength) {
    EXPECT_EQ(tokenize("a bb ccc", {}, 2).tokens, (Tokens{"bb", "ccc"}));
    EXPECT_EQ(tokenize("a bb ccc", {}, 3).tokens, (Tokens{"ccc"}));
}

TEST(Tokenize, TenSentenceFixtureMatchesHandTokenization) {
    const std::string text =
        "Shares of ACME rose 5 pct. "
        "The company said profits doubled! "
        "Oil prices fell to $18.50 a barrel. "
        "Analysts expect a rate cut in May. "
        "Grain exports, mostly wheat, rose. "
        "It was the third quarterly gain. "
        "Shipping rates (Baltic) were flat. "
        "Trade talks resume on 3/15. "
        "The yen weakened vs. the dollar. "
        "Reuters could not reach officials.";
    const StopwordSet stop = {"the", "a", "of", "to", "in", "it", "was", "on", "vs", "were", "not"};
    const Tokens expected = {"shares", "acme",    "rose",    "pct",     "company", "said",     "profits",
                             "doubled", "oil",    "prices",  "fell",    "18",      "50",       "barrel",
                             "analysts", "expect", "rate",   "cut",     "may",     "grain",    "exports",
                             "mostly",  "wheat",  "rose",    "third",   "quarterly", "gain",   "shipping",
                             "rates",   "baltic", "flat",    "trade",   "talks",   "resume",   "15",
                             "yen",     "weakened", "dollar", "reuters", "could",  "reach",    "officials"};
    EXPECT_EQ(tokenize(normalize(text), stop, 2).tokens, expected);
}

TEST(Tokenize, NeverEmitsStopwords) {
    std::mt19937_64 rng(3);
    const StopwordSet stop = {"ab", "cd", "abc"};
    const std::string alphabet = "abcd ,.";
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        for (int i = 0; i < 60; ++i) text += alphabet[rng() % alphabet.size()];
        for (const auto& t : tokenize(normalize(text), stop, 1).tokens) {
            EXPECT_FALSE(stop.contains(t));
            EXPECT_FALSE(t.empty());
            EXPECT_EQ(t.find(' '), std::string::npos);
        }
    }
}

TEST(Stopwords, ParseSkipsCommentsAndBlankLines) {
    const auto words = parse_stopwords("# header\nthe\n\n  and  \n#skip\nof\r\n");
    EXPECT_EQ(words, (StopwordSet{"the", "and", "of"}));
}

TEST(Stopwords, LoadFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "textcat_stopwords_test.txt";
    std::ofstream(path) << "# list\nfoo\nbar\n";
    EXPECT_EQ(load_stopwords(path), (StopwordSet{"foo", "bar"}));
    std::filesystem::remove(path);
}

TEST(Stopwords, DefaultListIsLoaded) {
    const auto& words = default_stopwords();
    EXPECT_TRUE(words.contains("the"));
    EXPECT_TRUE(words.contains("and"));
    EXPECT_FALSE(words.contains("wheat"));
    for (const auto& w : words) EXPECT_NE(w.front(), '#');
}

std::map<std::string, std::size_t> counts(std::initializer_list<std::pair<const char*, std::size_t>> items) {
    std::map<std::string, std::size_t> out;
    for (const auto& [t, c] : items) out[t] = c;
    return out;
}

TEST(Conflate, TauOneIsIdentityForDistinctDigramSets) {
    const auto map = conflate_terms(counts({{"wheat", 3}, {"wheats", 1}, {"grain", 2}, {"grains", 5}}), 1.0);
    EXPECT_TRUE(map.entries().empty());
}

TEST(Conflate, AbsorptionAbsorbingHandDigrams) {
    // absorption: ab bs so or rp pt ti io on  (A = 9)
    // absorbing:  ab bs so or rb bi in ng     (B = 8)
    // shared:     ab bs so or                 (C = 4)  ->  S = 8/17
    EXPECT_EQ(digrams("absorption").size(), 9u);
    EXPECT_EQ(digrams("absorbing").size(), 8u);
    EXPECT_EQ(shared_digrams(digrams("absorption"), digrams("absorbing")), 4u);
    EXPECT_DOUBLE_EQ(dice("absorption", "absorbing"), 8.0 / 17.0);

    const auto terms = counts({{"absorption", 2}, {"absorbing", 5}});
    EXPECT_TRUE(conflate_terms(terms, 0.5).entries().empty());  // 8/17 < 0.5
    const auto merged = conflate_terms(terms, 0.45);
    EXPECT_EQ(merged.apply("absorption"), "absorbing");
    EXPECT_EQ(merged.apply("absorbing"), "absorbing");
}

TEST(Conflate, TauZeroMergesEverything) {
    const auto map = conflate_terms(counts({{"alpha", 1}, {"zz", 4}, {"qqqq", 4}, {"x", 1}}), 0.0);
    for (const char* t : {"alpha", "zz", "qqqq", "x"}) EXPECT_EQ(map.apply(t), "zz") << t;
}

TEST(Conflate, RepresentativeTieBreaks) {
    // "stock"/"stocks": dice = 2*4/(4+5) ~ 0.889.
    EXPECT_EQ(conflate_terms(counts({{"stock", 3}, {"stocks", 3}}), 0.8).apply("stocks"), "stock");
    EXPECT_EQ(conflate_terms(counts({{"stock", 1}, {"stocks", 3}}), 0.8).apply("stock"), "stocks");
}

TEST(Conflate, SingleLinkChains) {
    // a~b and b~c above tau while a~c is below: all three share a group.
    const std::string a = "abcdef", b = "abcdefgh", c = "cdefgh";
    ASSERT_GE(dice(a, b), 0.7);
    ASSERT_GE(dice(b, c), 0.7);
    ASSERT_LT(dice(a, c), 0.7);
    const auto map = conflate_terms(counts({{"abcdef", 1}, {"abcdefgh", 9}, {"cdefgh", 1}}), 0.7);
    EXPECT_EQ(map.apply(a), b);
    EXPECT_EQ(map.apply(c), b);
}

TEST(Conflate, RejectsOutOfRangeTau) {
    EXPECT_THROW(conflate_terms({}, 1.5), std::exception);
    EXPECT_THROW(conflate_terms({}, -0.1), std::exception);
}

std::map<std::string, std::size_t> random_vocabulary(std::mt19937_64& rng, std::size_t n) {
    std::map<std::string, std::size_t> vocab;
    const std::string letters = "aeinrst";
    while (vocab.size() < n) {
        std::string w(3 + rng() % 5, 'a');
        for (auto& c : w) c = letters[rng() % letters.size()];
        vocab[w] = 1 + rng() % 10;
    }
    return vocab;
}

std::map<std::string, std::size_t> brute_force_groups(const std::map<std::string, std::size_t>& vocab, double tau) {
    // Flood fill over the full similarity matrix.
    std::vector<std::string> terms;
    for (const auto& [t, c] : vocab) terms.push_back(t);
    std::vector<std::size_t> group(terms.size(), SIZE_MAX);
    std::size_t next = 0;
    for (std::size_t s = 0; s < terms.size(); ++s) {
        if (group[s] != SIZE_MAX) continue;
        std::vector<std::size_t> stack{s};
        group[s] = next;
        while (!stack.empty()) {
            const auto i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < terms.size(); ++j) {
                if (group[j] == SIZE_MAX && dice(terms[i], terms[j]) >= tau) {
                    group[j] = next;
                    stack.push_back(j);
                }
            }
        }
        ++next;
    }
    std::map<std::string, std::size_t> out;
    for (std::size_t i = 0; i < terms.size(); ++i) out[terms[i]] = group[i];
    return out;
}

TEST(ConflateProperty, MatchesBruteForceClosureAndIsIdempotent) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto vocab = random_vocabulary(rng, 60);
        for (double tau : {0.3, 0.5, 0.6, 0.8}) {
            const auto map = conflate_terms(vocab, tau);
            const auto groups = brute_force_groups(vocab, tau);
            for (const auto& [a, ga] : groups) {
                const auto& ra = map.apply(a);
                EXPECT_EQ(map.apply(ra), ra);  // idempotent
                EXPECT_EQ(groups.at(ra), ga);
                for (const auto& [b, gb] : groups) {
                    EXPECT_EQ(ga == gb, ra == map.apply(b)) << a << " " << b << " tau=" << tau;
                }
            }
        }
    }
}

TEST(ConflateProperty, HigherTauRefinesPartition) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto vocab = random_vocabulary(rng, 80);
        const auto coarse = conflate_terms(vocab, 0.4);
        const auto fine = conflate_terms(vocab, 0.7);
        for (const auto& [a, ca] : vocab) {
            for (const auto& [b, cb] : vocab) {
                if (fine.apply(a) == fine.apply(b)) {
                    EXPECT_EQ(coarse.apply(a), coarse.apply(b));
                }
            }
        }
    }
}

TEST(ConflationMap, RejectsNonIdempotentMapping) {
    EXPECT_THROW(ConflationMap(std::map<std::string, std::string>{{"a", "b"}, {"b", "c"}}), std::exception);
    TokenSequence seq{"d", {"cats", "dog"}};
    ConflationMap(std::map<std::string, std::string>{{"cats", "cat"}}).apply_in_place(seq);
    EXPECT_EQ(seq.tokens, (Tokens{"cat", "dog"}));
}

}  // namespace
}  // namespace textcat
