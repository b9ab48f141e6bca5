#pragma once

#include "hcsim/binom_test.hpp"
#include "hcsim/frequency_table.hpp"
#include "hcsim/hc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcsim {

enum class Statistic { hc, cosine, divergence };

struct SimilarityIndex {
  double value = 0.0;
  Statistic statistic = Statistic::hc;
  double lambda = 0.0;  // divergence only

  // HC only.
  std::optional<HCResult> hc;
  std::optional<DiscriminatingSet> delta;
  std::vector<PValueRecord> pvalues;
  std::vector<std::string> skipped;
};

/// HC similarity of two word-frequency tables: per-word exact binomial
/// P-values combined by Higher Criticism. Smaller means more similar.
inline SimilarityIndex hc_sim(const FrequencyTable& t1, const FrequencyTable& t2, const Vocabulary& vocab,
                              double alpha = kDefaultAlpha, HCVariant variant = HCVariant::dagger) {
  const Count n1 = total_over(t1, vocab);
  const Count n2 = total_over(t2, vocab);
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("hc_sim: a table is empty over the vocabulary");

  auto tested = word_pvalues(t1, t2, vocab);
  if (tested.records.empty()) throw std::invalid_argument("hc_sim: no testable terms");

  std::vector<double> pis;
  pis.reserve(tested.records.size());
  for (const auto& r : tested.records) pis.push_back(r.pi);

  SimilarityIndex out;
  out.statistic = Statistic::hc;
  out.hc = compute_hc(pis, alpha, variant);
  out.value = out.hc->score;
  out.delta = discriminating_set(tested.records, *out.hc, n1, n2);
  out.pvalues = std::move(tested.records);
  out.skipped = std::move(tested.skipped);
  return out;
}

/// 1 - cos(angle between the two count vectors over the vocabulary).
inline SimilarityIndex cosine_index(const FrequencyTable& t1, const FrequencyTable& t2, const Vocabulary& vocab) {
  // Integer-valued sums are exact in long double for any realistic corpus,
  // so identical tables give exactly 0.
  long double dot = 0, s1 = 0, s2 = 0;
  for (const auto& term : vocab) {
    const auto a = static_cast<long double>(t1.count(term));
    const auto b = static_cast<long double>(t2.count(term));
    dot += a * b;
    s1 += a * a;
    s2 += b * b;
  }
  if (s1 == 0 || s2 == 0) throw std::invalid_argument("cosine_index: zero count vector");
  const long double cosv = dot / std::sqrt(s1 * s2);
  SimilarityIndex out;
  out.statistic = Statistic::cosine;
  out.value = std::clamp(static_cast<double>(1.0L - cosv), 0.0, 1.0);
  return out;
}

struct DivergenceOptions {
  // Multiply by 2/(lambda(lambda+1)) so that lambda = 1 is Pearson's X^2
  // and lambda -> 0 is G^2. Off reproduces the bare sum O((O/E)^lambda - 1).
  bool classical_factor = true;
};

inline constexpr double kLambdaG2 = 0.0;
inline constexpr double kLambdaCressieRead = 2.0 / 3.0;
inline constexpr double kLambdaPearson = 1.0;

/// Two-sample power divergence with pooled expectations
///   E_i(w) = (N(w|D1) + N(w|D2)) n_i / (n1 + n2),
/// normalized by N' - 1, N' being the number of terms with a nonzero pooled count.
inline SimilarityIndex power_divergence(const FrequencyTable& t1, const FrequencyTable& t2,
                                        const Vocabulary& vocab, double lambda,
                                        DivergenceOptions opts = {}) {
  const Count n1 = total_over(t1, vocab);
  const Count n2 = total_over(t2, vocab);
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("power_divergence: a table is empty over the vocabulary");
  const double n = static_cast<double>(n1 + n2);

  const bool g2 = std::abs(lambda) < 1e-12;
  const bool modified = std::abs(lambda + 1.0) < 1e-12;

  double sum = 0.0, comp = 0.0;
  auto accumulate = [&](double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };

  std::size_t n_prime = 0;
  for (const auto& term : vocab) {
    const Count obs[2] = {t1.count(term), t2.count(term)};
    const Count pooled = obs[0] + obs[1];
    if (pooled == 0) continue;
    ++n_prime;
    for (int i = 0; i < 2; ++i) {
      const double o = static_cast<double>(obs[i]);
      // Multiply before dividing: E is then exact whenever it is an integer.
      const double e = static_cast<double>(pooled) * static_cast<double>(i == 0 ? n1 : n2) / n;
      double v;
      if (g2) {
        v = o == 0.0 ? 0.0 : o * std::log(o / e);
        if (opts.classical_factor) v *= 2.0;
        else v = 0.0;
      } else if (modified) {
        v = o == 0.0 ? std::numeric_limits<double>::infinity() : e * std::log(e / o);
        if (opts.classical_factor) v *= 2.0;
        else v = 0.0;
      } else {
        if (o == 0.0) {
          v = lambda > -1.0 ? 0.0 : std::numeric_limits<double>::infinity();
        } else {
          v = o * std::expm1(lambda * std::log(o / e));  // accurate for small lambda
        }
        if (opts.classical_factor) v *= 2.0 / (lambda * (lambda + 1.0));
      }
      accumulate(v);
    }
  }
  if (n_prime <= 1) throw std::invalid_argument("power_divergence: need at least two terms with nonzero pooled count");

  SimilarityIndex out;
  out.statistic = Statistic::divergence;
  out.lambda = lambda;
  // The statistic is nonnegative; only rounding can push it below zero.
  const double dv = (opts.classical_factor && sum < 0.0 && sum > -1e-9) ? 0.0 : sum;
  out.value = dv / static_cast<double>(n_prime - 1);
  return out;
}

}  // namespace hcsim
