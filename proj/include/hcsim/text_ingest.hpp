#pragma once

#include "hcsim/frequency_table.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace hcsim {

struct TokenizerConfig {
  bool lowercase = true;
  std::set<int> ngram_orders{1};
  std::optional<std::unordered_set<std::string>> stop_list;
  int min_token_len = 1;

  void validate() const {
    if (ngram_orders.empty()) throw std::invalid_argument("ngram_orders must not be empty");
    if (*ngram_orders.begin() < 1) throw std::invalid_argument("ngram orders must be >= 1");
    if (min_token_len < 1) throw std::invalid_argument("min_token_len must be >= 1");
  }
};

inline constexpr char kNgramJoiner = '_';

namespace detail {

inline bool is_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

inline char to_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace detail

/// Splits on every non-alphabetic (ASCII) character. Stop-listed and short
/// tokens are dropped before n-grams are formed. Output is order-major:
/// all unigrams, then all bigrams, and so on, each in document order.
inline std::vector<std::string> tokenize_terms(std::string_view text, const TokenizerConfig& cfg = {}) {
  cfg.validate();
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !detail::is_alpha(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && detail::is_alpha(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) continue;
    std::string tok(text.substr(start, i - start));
    if (cfg.lowercase) std::transform(tok.begin(), tok.end(), tok.begin(), detail::to_lower);
    if (static_cast<int>(tok.size()) < cfg.min_token_len) continue;
    if (cfg.stop_list && cfg.stop_list->count(tok)) continue;
    tokens.push_back(std::move(tok));
  }

  std::vector<std::string> terms;
  for (int order : cfg.ngram_orders) {
    const auto n = static_cast<std::size_t>(order);
    if (n == 1) {
      terms.insert(terms.end(), tokens.begin(), tokens.end());
      continue;
    }
    for (std::size_t s = 0; s + n <= tokens.size(); ++s) {
      std::string gram = tokens[s];
      for (std::size_t k = 1; k < n; ++k) {
        gram += kNgramJoiner;
        gram += tokens[s + k];
      }
      terms.push_back(std::move(gram));
    }
  }
  return terms;
}

/// Counts terms; with a vocabulary, out-of-vocabulary terms are discarded.
inline FrequencyTable count_terms(const std::vector<std::string>& terms,
                                  const Vocabulary* vocab = nullptr) {
  std::unordered_set<std::string_view> allowed;
  if (vocab) allowed.insert(vocab->begin(), vocab->end());
  FrequencyTable table;
  for (const auto& t : terms) {
    if (vocab && !allowed.count(t)) continue;
    table.add(t);
  }
  return table;
}

struct VocabularyResult {
  Vocabulary vocab;
  std::optional<std::string> warning;
};

/// The `n` terms with the largest summed counts; ties go to the
/// lexicographically smaller term.
inline VocabularyResult build_vocabulary(const std::vector<FrequencyTable>& tables, std::size_t n) {
  if (n < 1) throw std::invalid_argument("vocabulary size must be >= 1");
  FrequencyTable pooled;
  for (const auto& t : tables) pooled += t;

  std::vector<std::pair<std::string, Count>> ranked(pooled.begin(), pooled.end());
  // Terms present only with zero counts carry no frequency information.
  std::erase_if(ranked, [](const auto& e) { return e.second == 0; });
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  VocabularyResult out;
  if (ranked.size() < n) {
    out.warning = "requested " + std::to_string(n) + " terms but only " + std::to_string(ranked.size()) +
                  " distinct terms are available";
  }
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < std::min(n, ranked.size()); ++i) terms.push_back(ranked[i].first);
  out.vocab = Vocabulary(std::move(terms));
  return out;
}

/// First `n` terms of a one-term-per-line list. Blank lines are ignored.
inline VocabularyResult read_vocabulary_list(std::istream& in, std::size_t n) {
  if (n < 1) throw std::invalid_argument("vocabulary size must be >= 1");
  std::vector<std::string> terms;
  std::unordered_set<std::string> seen;
  std::string line;
  while (terms.size() < n && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t") - first + 1);
    if (!seen.insert(line).second) throw std::invalid_argument("duplicate term '" + line + "' in vocabulary list");
    terms.push_back(line);
  }
  VocabularyResult out;
  if (terms.size() < n) {
    out.warning = "vocabulary list has only " + std::to_string(terms.size()) + " terms (requested " +
                  std::to_string(n) + ")";
  }
  out.vocab = Vocabulary(std::move(terms));
  return out;
}

inline VocabularyResult load_vocabulary_file(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vocabulary file '" + path + "'");
  return read_vocabulary_list(in, n);
}

/// Restricts `table` to `vocab`. Every vocabulary term is present in the
/// result, with count 0 if absent from the input.
inline FrequencyTable project_table(const FrequencyTable& table, const Vocabulary& vocab) {
  FrequencyTable out;
  for (const auto& t : vocab) out.add(t, table.count(t));
  return out;
}

}  // namespace hcsim
