#include "hcsim/text_ingest.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace hcsim;

TEST(Tokenize, EmptyText) { EXPECT_TRUE(tokenize_terms("").empty()); }

TEST(Tokenize, WhitespaceLowercase) {
  EXPECT_EQ(tokenize_terms("The cat sat"), (std::vector<std::string>{"the", "cat", "sat"}));
}

TEST(Tokenize, SplitsOnNonAlphabetic) {
  EXPECT_EQ(tokenize_terms("it's 1787--Publius, No.10"),
            (std::vector<std::string>{"it", "s", "publius", "no"}));
}

TEST(Tokenize, KeepsCaseWhenAsked) {
  TokenizerConfig cfg;
  cfg.lowercase = false;
  EXPECT_EQ(tokenize_terms("The Cat", cfg), (std::vector<std::string>{"The", "Cat"}));
}

TEST(Tokenize, UnigramsThenBigrams) {
  TokenizerConfig cfg;
  cfg.ngram_orders = {1, 2};
  EXPECT_EQ(tokenize_terms("a b c", cfg), (std::vector<std::string>{"a", "b", "c", "a_b", "b_c"}));
}

TEST(Tokenize, TrigramsOnly) {
  TokenizerConfig cfg;
  cfg.ngram_orders = {3};
  EXPECT_EQ(tokenize_terms("a b c d", cfg), (std::vector<std::string>{"a_b_c", "b_c_d"}));
  EXPECT_TRUE(tokenize_terms("a b", cfg).empty());
}

TEST(Tokenize, StopAndShortTokensDroppedBeforeNgrams) {
  TokenizerConfig cfg;
  cfg.ngram_orders = {2};
  cfg.stop_list = std::unordered_set<std::string>{"the"};
  cfg.min_token_len = 2;
  // "the" and "a" vanish, so "cat" and "sat" become adjacent.
  EXPECT_EQ(tokenize_terms("the cat a sat", cfg), (std::vector<std::string>{"cat_sat"}));
}

TEST(Tokenize, InvalidConfig) {
  TokenizerConfig cfg;
  cfg.ngram_orders = {};
  EXPECT_THROW(tokenize_terms("a", cfg), std::invalid_argument);
  cfg.ngram_orders = {0};
  EXPECT_THROW(tokenize_terms("a", cfg), std::invalid_argument);
  cfg.ngram_orders = {1};
  cfg.min_token_len = 0;
  EXPECT_THROW(tokenize_terms("a", cfg), std::invalid_argument);
}

TEST(CountTerms, Basic) {
  auto t = count_terms({"a", "b", "a"});
  EXPECT_EQ(t.count("a"), 2);
  EXPECT_EQ(t.count("b"), 1);
  EXPECT_EQ(t.total(), 3);
}

TEST(CountTerms, WithVocabulary) {
  Vocabulary v{"a"};
  auto t = count_terms({"a", "b", "a"}, &v);
  EXPECT_EQ(t, (FrequencyTable{{"a", 2}}));
  EXPECT_EQ(t.total(), 2);
}

TEST(CountTerms, Empty) {
  auto t = count_terms({});
  EXPECT_TRUE(t.empty());
  EXPECT_EQ(t.total(), 0);
}

TEST(CountTerms, TotalEqualsSequenceLength) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> seq;
    const int len = static_cast<int>(rng() % 200);
    for (int i = 0; i < len; ++i) seq.push_back(std::string(1, static_cast<char>('a' + rng() % 8)));
    EXPECT_EQ(count_terms(seq).total(), static_cast<Count>(seq.size()));
  }
}

TEST(BuildVocabulary, TopFrequency) {
  std::vector<FrequencyTable> tables{{{"a", 5}, {"b", 3}}, {{"b", 4}, {"c", 1}}};
  auto r = build_vocabulary(tables, 2);
  EXPECT_EQ(r.vocab.terms(), (std::vector<std::string>{"b", "a"}));
  EXPECT_FALSE(r.warning);
}

TEST(BuildVocabulary, TiesAreLexicographic) {
  std::vector<FrequencyTable> tables{{{"z", 2}, {"m", 2}, {"a", 2}, {"q", 9}}};
  EXPECT_EQ(build_vocabulary(tables, 3).vocab.terms(), (std::vector<std::string>{"q", "a", "m"}));
}

TEST(BuildVocabulary, FewerTermsThanRequested) {
  std::vector<FrequencyTable> tables{{{"a", 1}, {"b", 2}}};
  auto r = build_vocabulary(tables, 10);
  EXPECT_EQ(r.vocab.size(), 2u);
  ASSERT_TRUE(r.warning);
}

TEST(BuildVocabulary, Deterministic) {
  std::vector<FrequencyTable> tables{{{"x", 3}, {"y", 3}}, {{"y", 1}, {"w", 4}}};
  EXPECT_EQ(build_vocabulary(tables, 3).vocab, build_vocabulary(tables, 3).vocab);
}

TEST(BuildVocabulary, ExternalListPrefix) {
  std::istringstream in("the\nof\nand");
  auto r = read_vocabulary_list(in, 2);
  EXPECT_EQ(r.vocab.terms(), (std::vector<std::string>{"the", "of"}));
  EXPECT_FALSE(r.warning);
}

TEST(BuildVocabulary, ExternalListShort) {
  std::istringstream in("the\r\n\nof\n");
  auto r = read_vocabulary_list(in, 5);
  EXPECT_EQ(r.vocab.terms(), (std::vector<std::string>{"the", "of"}));
  EXPECT_TRUE(r.warning);
}

TEST(BuildVocabulary, MissingFile) {
  EXPECT_THROW(load_vocabulary_file("/nonexistent/vocab.txt", 3), std::runtime_error);
}

TEST(ProjectTable, AddsZerosAndDropsOthers) {
  FrequencyTable t{{"a", 2}, {"b", 1}};
  auto p = project_table(t, Vocabulary{"a", "c"});
  EXPECT_EQ(p.count("a"), 2);
  EXPECT_TRUE(p.contains("c"));
  EXPECT_EQ(p.count("c"), 0);
  EXPECT_FALSE(p.contains("b"));
  EXPECT_EQ(p.total(), 2);
}

TEST(ProjectTable, EmptyTable) {
  auto p = project_table(FrequencyTable{}, Vocabulary{"a"});
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(p.total(), 0);
}

TEST(ProjectTable, IdentityAndIdempotent) {
  FrequencyTable t{{"a", 1}, {"b", 1}, {"c", 1}};
  Vocabulary v{"a", "b", "c"};
  EXPECT_EQ(project_table(t, v), t);
  Vocabulary w{"b", "d"};
  EXPECT_EQ(project_table(project_table(t, w), w), project_table(t, w));
}

TEST(Vocabulary, RejectsDuplicates) { EXPECT_THROW(Vocabulary({"a", "a"}), std::invalid_argument); }

TEST(Vocabulary, DigestDependsOnOrder) {
  EXPECT_NE(Vocabulary({"a", "b"}).digest(), Vocabulary({"b", "a"}).digest());
  EXPECT_EQ(Vocabulary({"a", "b"}).digest().size(), 16u);
}

TEST(FrequencyTable, NegativeCountRejected) {
  FrequencyTable t;
  EXPECT_THROW(t.add("a", -1), std::invalid_argument);
}
