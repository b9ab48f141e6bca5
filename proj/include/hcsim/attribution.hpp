#pragma once

#include "hcsim/frequency_table.hpp"
#include "hcsim/hc.hpp"
#include "hcsim/similarity.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace hcsim {

struct Document {
  std::string id;
  FrequencyTable table;
};

/// Documents of a single author plus the concatenated table and a cache of
/// leave-one-out self-scores. Any membership change drops the cache.
class Corpus {
public:
  Corpus() = default;

  Corpus(std::string author, std::vector<Document> docs) : author_(std::move(author)) {
    for (auto& d : docs) add(std::move(d));
  }

  const std::string& author() const { return author_; }
  const std::vector<Document>& documents() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }
  const FrequencyTable& concatenated() const { return concat_; }

  std::optional<std::size_t> find(std::string_view doc_id) const {
    for (std::size_t i = 0; i < docs_.size(); ++i) {
      if (docs_[i].id == doc_id) return i;
    }
    return std::nullopt;
  }
  bool contains(std::string_view doc_id) const { return find(doc_id).has_value(); }

  void add(Document doc) {
    if (contains(doc.id)) throw std::invalid_argument("duplicate document id '" + doc.id + "' in corpus " + author_);
    concat_ += doc.table;
    docs_.push_back(std::move(doc));
    cache_.reset();
  }

  void remove(std::string_view doc_id) {
    auto idx = find(doc_id);
    if (!idx) throw std::invalid_argument("document '" + std::string(doc_id) + "' is not in corpus " + author_);
    for (const auto& [term, c] : docs_[*idx].table) {
      if (c > 0) concat_.subtract(term, c);
    }
    docs_.erase(docs_.begin() + static_cast<std::ptrdiff_t>(*idx));
    cache_.reset();
  }

  /// Copy of this corpus without `doc_id`.
  Corpus without(std::string_view doc_id) const {
    Corpus c = *this;
    c.remove(doc_id);
    return c;
  }

  struct SelfScoreCache {
    std::string vocab_digest;
    double alpha;
    HCVariant variant;
    std::vector<double> scores;
  };
  const std::optional<SelfScoreCache>& cache() const { return cache_; }
  void store_cache(SelfScoreCache c) const { cache_ = std::move(c); }

private:
  std::string author_;
  std::vector<Document> docs_;
  FrequencyTable concat_;
  mutable std::optional<SelfScoreCache> cache_;
};

/// Term-wise sum of the member tables, optionally leaving one document out.
/// Leaving out the only document yields an empty table and sets `warning`.
inline FrequencyTable concat_corpus(const Corpus& corpus, std::optional<std::string_view> leave_out = std::nullopt,
                                    std::string* warning = nullptr) {
  if (!leave_out) return corpus.concatenated();
  auto idx = corpus.find(*leave_out);
  if (!idx) {
    throw std::invalid_argument("concat_corpus: '" + std::string(*leave_out) + "' is not a member of corpus " +
                                corpus.author());
  }
  FrequencyTable out = corpus.concatenated();
  for (const auto& [term, c] : corpus.documents()[*idx].table) {
    if (c > 0) out.subtract(term, c);
  }
  if (out.empty() && warning) *warning = "corpus " + corpus.author() + " is empty after leaving out " + std::string(*leave_out);
  return out;
}

/// HC similarity between a document and a corpus. A member document is
/// compared against the corpus with itself removed.
inline SimilarityIndex doc_vs_corpus(const Document& doc, const Corpus& corpus, const Vocabulary& vocab,
                                     double alpha = kDefaultAlpha, HCVariant variant = HCVariant::dagger) {
  const bool member = corpus.contains(doc.id);
  FrequencyTable reference = member ? concat_corpus(corpus, doc.id) : corpus.concatenated();
  if (total_over(reference, vocab) == 0) {
    throw std::invalid_argument("doc_vs_corpus: corpus " + corpus.author() + " is empty (over the vocabulary) after " +
                                "leaving out " + doc.id);
  }
  return hc_sim(doc.table, reference, vocab, alpha, variant);
}

inline double doc_vs_corpus_score(const Document& doc, const Corpus& corpus, const Vocabulary& vocab,
                                  double alpha = kDefaultAlpha, HCVariant variant = HCVariant::dagger) {
  return doc_vs_corpus(doc, corpus, vocab, alpha, variant).value;
}

/// Leave-one-out HC score of every member, in document order. Cached on the
/// corpus for the given (vocabulary, alpha, variant).
inline std::vector<double> corpus_self_scores(const Corpus& corpus, const Vocabulary& vocab,
                                              double alpha = kDefaultAlpha, HCVariant variant = HCVariant::dagger) {
  if (corpus.size() < 2) {
    throw std::invalid_argument("corpus_self_scores: corpus " + corpus.author() + " has fewer than 2 documents");
  }
  const std::string digest = vocab.digest();
  if (const auto& c = corpus.cache(); c && c->vocab_digest == digest && c->alpha == alpha && c->variant == variant) {
    return c->scores;
  }
  std::vector<double> scores;
  scores.reserve(corpus.size());
  for (const auto& d : corpus.documents()) scores.push_back(doc_vs_corpus_score(d, corpus, vocab, alpha, variant));
  corpus.store_cache({digest, alpha, variant, scores});
  return scores;
}

struct RankResult {
  double score = 0.0;
  std::size_t rank = 0;  // 1 = smallest; ties take the maximal rank
  double rhat = 0.0;     // rank / (m + 1)
  std::size_t m = 0;
};

/// Rank of `score` among itself and the m self-scores, normalized by m + 1.
inline RankResult normalized_rank(double score, const std::vector<double>& self_scores) {
  RankResult r;
  r.score = score;
  r.m = self_scores.size();
  r.rank = 1 + static_cast<std::size_t>(
                   std::count_if(self_scores.begin(), self_scores.end(), [&](double s) { return s <= score; }));
  r.rhat = static_cast<double>(r.rank) / static_cast<double>(r.m + 1);
  return r;
}

/// Rank calibration of a non-member document against a corpus of m >= 2 documents.
inline RankResult rank_calibrate(const Document& doc, const Corpus& corpus, const Vocabulary& vocab,
                                 double alpha = kDefaultAlpha, HCVariant variant = HCVariant::dagger) {
  if (corpus.contains(doc.id)) {
    throw std::invalid_argument("rank_calibrate: document '" + doc.id + "' is a member of corpus " + corpus.author());
  }
  const auto self = corpus_self_scores(corpus, vocab, alpha, variant);
  return normalized_rank(doc_vs_corpus_score(doc, corpus, vocab, alpha, variant), self);
}

enum class DecisionRule { min_rank, min_hc };

inline std::string_view to_string(DecisionRule r) { return r == DecisionRule::min_rank ? "min-rank" : "min-hc"; }

inline DecisionRule parse_rule(std::string_view s) {
  if (s == "min-rank") return DecisionRule::min_rank;
  if (s == "min-hc") return DecisionRule::min_hc;
  throw std::invalid_argument("unknown decision rule '" + std::string(s) + "' (expected min-rank or min-hc)");
}

struct CandidateScore {
  std::string author;
  double hc = 0.0;
  std::optional<std::size_t> rank;  // min-rank only
  std::optional<double> rhat;
  std::size_t m = 0;                 // reference corpus size actually used
  bool self_excluded = false;
  DiscriminatingSet delta;
};

struct AttributionReport {
  std::string doc_id;
  std::vector<CandidateScore> candidates;  // sorted by author id
  std::string chosen;
  DecisionRule rule = DecisionRule::min_rank;
  double alpha = kDefaultAlpha;
  HCVariant variant = HCVariant::dagger;
  std::string vocab_digest;

  const CandidateScore& candidate(std::string_view author) const {
    for (const auto& c : candidates) {
      if (c.author == author) return c;
    }
    throw std::out_of_range("no candidate '" + std::string(author) + "'");
  }
};

namespace detail {

inline void require_distinct_authors(const std::vector<const Corpus*>& corpora) {
  std::set<std::string_view> seen;
  for (const auto* c : corpora) {
    if (!seen.insert(c->author()).second) throw std::invalid_argument("duplicate candidate author '" + c->author() + "'");
  }
}

}  // namespace detail

/// Scores `doc` against every candidate and picks one.
///
/// min-rank chooses the smallest normalized rank, then the smallest raw HC,
/// then the smallest author id; min-hc skips the rank and uses the last two.
/// A candidate containing `doc` is evaluated with `doc` removed.
inline AttributionReport attribute(const Document& doc, const std::vector<const Corpus*>& corpora,
                                   DecisionRule rule, const Vocabulary& vocab, double alpha = kDefaultAlpha,
                                   HCVariant variant = HCVariant::dagger) {
  if (corpora.size() < 2) throw std::invalid_argument("attribute: need at least 2 candidate corpora");
  detail::require_distinct_authors(corpora);

  AttributionReport rep;
  rep.doc_id = doc.id;
  rep.rule = rule;
  rep.alpha = alpha;
  rep.variant = variant;
  rep.vocab_digest = vocab.digest();

  for (const auto* corpus : corpora) {
    CandidateScore cs;
    cs.author = corpus->author();
    cs.self_excluded = corpus->contains(doc.id);
    std::optional<Corpus> reduced;
    if (cs.self_excluded) reduced = corpus->without(doc.id);
    const Corpus& ref = reduced ? *reduced : *corpus;
    cs.m = ref.size();

    auto sim = doc_vs_corpus(doc, ref, vocab, alpha, variant);
    cs.hc = sim.value;
    cs.delta = std::move(*sim.delta);
    if (rule == DecisionRule::min_rank) {
      auto r = normalized_rank(cs.hc, corpus_self_scores(ref, vocab, alpha, variant));
      cs.rank = r.rank;
      cs.rhat = r.rhat;
    }
    rep.candidates.push_back(std::move(cs));
  }

  std::sort(rep.candidates.begin(), rep.candidates.end(),
            [](const auto& a, const auto& b) { return a.author < b.author; });
  auto key = [rule](const CandidateScore& c) {
    return std::make_tuple(rule == DecisionRule::min_rank ? *c.rhat : 0.0, c.hc, std::string_view(c.author));
  };
  rep.chosen = std::min_element(rep.candidates.begin(), rep.candidates.end(),
                                [&](const auto& a, const auto& b) { return key(a) < key(b); })
                   ->author;
  return rep;
}

inline AttributionReport attribute(const Document& doc, const std::vector<Corpus>& corpora, DecisionRule rule,
                                   const Vocabulary& vocab, double alpha = kDefaultAlpha,
                                   HCVariant variant = HCVariant::dagger) {
  std::vector<const Corpus*> ptrs;
  for (const auto& c : corpora) ptrs.push_back(&c);
  return attribute(doc, ptrs, rule, vocab, alpha, variant);
}

/// Table-vs-table index where smaller means more similar.
using IndexFn = std::function<double(const FrequencyTable&, const FrequencyTable&, const Vocabulary&)>;

/// Attribution by the smallest index value (ties: smaller author id), with
/// the same self-exclusion as `attribute`. Used for the baseline statistics.
inline std::string attribute_by_index(const Document& doc, const std::vector<const Corpus*>& corpora,
                                      const Vocabulary& vocab, const IndexFn& index) {
  if (corpora.size() < 2) throw std::invalid_argument("attribute_by_index: need at least 2 candidate corpora");
  detail::require_distinct_authors(corpora);
  std::optional<std::pair<double, std::string>> best;
  for (const auto* corpus : corpora) {
    const FrequencyTable ref = corpus->contains(doc.id) ? concat_corpus(*corpus, doc.id) : corpus->concatenated();
    const double v = index(doc.table, ref, vocab);
    std::pair<double, std::string> cand{v, corpus->author()};
    if (!best || cand < *best) best = std::move(cand);
  }
  return best->second;
}

}  // namespace hcsim
