#pragma once

#include "hcsim/attribution.hpp"
#include "hcsim/frequency_table.hpp"
#include "hcsim/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hcsim {

/// Poisson variance-stabilized rate 2 sqrt((N(w|D) + 1/4) / |D|).
inline double stabilized_rate(Count count, Count total) {
  if (total <= 0) throw std::invalid_argument("stabilized_rate: empty table");
  return 2.0 * std::sqrt((static_cast<double>(count) + 0.25) / static_cast<double>(total));
}

inline double stabilized_rate(const FrequencyTable& table, std::string_view term) {
  return stabilized_rate(table.count(term), table.total());
}

struct CvRecord {
  std::string term;
  double mu = 0.0;
  double sigma2 = 0.0;
  double cv = 0.0;
};

struct CorpusCv {
  std::vector<CvRecord> records;  // vocabulary order
  std::vector<std::string> warnings;

  const CvRecord* find(std::string_view term) const {
    for (const auto& r : records) {
      if (r.term == term) return &r;
    }
    return nullptr;
  }
};

inline constexpr double kLengthSpreadWarning = 5.0;

/// Per-term mean, unbiased variance and coefficient of variation of the
/// stabilized rates across the corpus documents (rates over the vocabulary).
///
/// A term that occurs in none of the documents gets sigma2 = cv = 0: it has
/// no within-corpus variability, only the length-driven offset.
inline CorpusCv corpus_cv(const Corpus& corpus, const Vocabulary& vocab) {
  const std::size_t m = corpus.size();
  if (m < 2) throw std::invalid_argument("corpus_cv: corpus " + corpus.author() + " has fewer than 2 documents");

  std::vector<Count> totals;
  totals.reserve(m);
  for (const auto& d : corpus.documents()) {
    totals.push_back(total_over(d.table, vocab));
    if (totals.back() == 0) {
      throw std::invalid_argument("corpus_cv: document '" + d.id + "' has no vocabulary terms");
    }
  }

  CorpusCv out;
  const auto [mn, mx] = std::minmax_element(totals.begin(), totals.end());
  if (static_cast<double>(*mx) > kLengthSpreadWarning * static_cast<double>(*mn)) {
    out.warnings.push_back("document lengths in corpus " + corpus.author() + " vary from " + std::to_string(*mn) +
                           " to " + std::to_string(*mx) + " vocabulary tokens");
  }

  std::vector<double> rates(m);
  out.records.reserve(vocab.size());
  for (const auto& term : vocab) {
    bool seen = false;
    for (std::size_t j = 0; j < m; ++j) {
      const Count c = corpus.documents()[j].table.count(term);
      seen = seen || c > 0;
      rates[j] = stabilized_rate(c, totals[j]);
    }
    // Sorting first makes the sums independent of document order.
    std::sort(rates.begin(), rates.end());
    double sum = 0.0;
    for (double r : rates) sum += r;
    const double mu = sum / static_cast<double>(m);
    double ss = 0.0;
    for (double r : rates) ss += (r - mu) * (r - mu);
    CvRecord rec{term, mu, 0.0, 0.0};
    if (seen) {
      rec.sigma2 = ss / static_cast<double>(m - 1);
      rec.cv = std::sqrt(rec.sigma2) / mu;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

struct RankedTerm {
  std::size_t rank = 0;  // 1-based position in the P-value ordering
  std::string term;
  double pi = 1.0;
  double cv = 0.0;
  bool below_threshold = false;
};

struct RankedTerms {
  std::vector<RankedTerm> terms;  // at most K
  HCResult hc;
};

inline constexpr std::size_t kDefaultProfileDepth = 50;

/// Orders the tested terms of (doc, corpus) by P-value and annotates the
/// first K with the corpus CV and whether they fall at or below the HC
/// threshold. A member document is removed from the corpus first.
inline RankedTerms cv_by_pvalue_rank(const Document& doc, const Corpus& corpus, const Vocabulary& vocab,
                                     double alpha = kDefaultAlpha, HCVariant variant = HCVariant::dagger,
                                     std::size_t k = kDefaultProfileDepth) {
  std::optional<Corpus> reduced;
  if (corpus.contains(doc.id)) reduced = corpus.without(doc.id);
  const Corpus& ref = reduced ? *reduced : corpus;

  const auto cvs = corpus_cv(ref, vocab);
  std::unordered_map<std::string_view, double> cv_of;
  for (const auto& r : cvs.records) cv_of.emplace(r.term, r.cv);

  auto sim = hc_sim(doc.table, ref.concatenated(), vocab, alpha, variant);
  RankedTerms out;
  out.hc = *sim.hc;
  const auto ordered = sorted_by_pvalue(std::move(sim.pvalues));
  for (std::size_t i = 0; i < std::min(k, ordered.size()); ++i) {
    const auto& r = ordered[i];
    out.terms.push_back({i + 1, r.term, r.pi, cv_of.at(r.term), r.pi <= out.hc.threshold});
  }
  return out;
}

/// Rank-wise CV averages over a set of document-corpus pairs, with the
/// distribution of the HC-threshold rank i*.
struct RankProfile {
  std::size_t depth = kDefaultProfileDepth;
  std::vector<double> avg_cv;        // per rank; 0 where no pair reaches that rank
  std::vector<std::size_t> n_pairs;  // pairs contributing to each rank
  std::size_t pair_count = 0;
  double mean_threshold_rank = 0.0;
  double threshold_rank_q025 = 0.0;
  double threshold_rank_q975 = 0.0;
  // Pooled over all (pair, rank <= depth) entries.
  double avg_cv_below = 0.0;  // entries at or below the HC threshold
  double avg_cv_above = 0.0;  // the remaining entries
  std::size_t n_below = 0;
  std::size_t n_above = 0;
};

struct ProfilePair {
  const Document* doc;
  const Corpus* corpus;
  bool concordant;
};

struct Profiles {
  RankProfile overall;
  RankProfile concordant;
  RankProfile discordant;
};

namespace detail {

// Linear interpolation between order statistics (the common "type 7" rule).
inline double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double h = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

class ProfileAccumulator {
public:
  explicit ProfileAccumulator(std::size_t depth) : sums_(depth, 0.0), counts_(depth, 0) {}

  void add(const RankedTerms& rt) {
    for (const auto& t : rt.terms) {
      sums_[t.rank - 1] += t.cv;
      counts_[t.rank - 1] += 1;
      if (t.below_threshold) {
        below_sum_ += t.cv;
        ++below_n_;
      } else {
        above_sum_ += t.cv;
        ++above_n_;
      }
    }
    thresholds_.push_back(static_cast<double>(rt.hc.i_star));
  }

  RankProfile finish() const {
    RankProfile p;
    p.depth = sums_.size();
    p.pair_count = thresholds_.size();
    p.n_pairs = counts_;
    p.avg_cv.resize(sums_.size(), 0.0);
    for (std::size_t i = 0; i < sums_.size(); ++i) {
      if (counts_[i]) p.avg_cv[i] = sums_[i] / static_cast<double>(counts_[i]);
    }
    if (!thresholds_.empty()) {
      double s = 0.0;
      for (double t : thresholds_) s += t;
      p.mean_threshold_rank = s / static_cast<double>(thresholds_.size());
      p.threshold_rank_q025 = quantile(thresholds_, 0.025);
      p.threshold_rank_q975 = quantile(thresholds_, 0.975);
    }
    p.n_below = below_n_;
    p.n_above = above_n_;
    if (below_n_) p.avg_cv_below = below_sum_ / static_cast<double>(below_n_);
    if (above_n_) p.avg_cv_above = above_sum_ / static_cast<double>(above_n_);
    return p;
  }

private:
  std::vector<double> sums_;
  std::vector<std::size_t> counts_;
  std::vector<double> thresholds_;
  double below_sum_ = 0.0, above_sum_ = 0.0;
  std::size_t below_n_ = 0, above_n_ = 0;
};

}  // namespace detail

inline Profiles averaged_profiles(const std::vector<ProfilePair>& pairs, const Vocabulary& vocab,
                                  double alpha = kDefaultAlpha, HCVariant variant = HCVariant::dagger,
                                  std::size_t k = kDefaultProfileDepth) {
  if (pairs.empty()) throw std::invalid_argument("averaged_profiles: no document-corpus pairs");
  detail::ProfileAccumulator all(k), conc(k), disc(k);
  for (const auto& pr : pairs) {
    const auto rt = cv_by_pvalue_rank(*pr.doc, *pr.corpus, vocab, alpha, variant, k);
    all.add(rt);
    (pr.concordant ? conc : disc).add(rt);
  }
  return {all.finish(), conc.finish(), disc.finish()};
}

}  // namespace hcsim
