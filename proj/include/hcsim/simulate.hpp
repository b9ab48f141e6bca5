#pragma once

#include "hcsim/attribution.hpp"
#include "hcsim/frequency_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcsim {

/// Two-author synthetic setting: author B equals author A's Zipf law except
/// on a small random set of terms whose probabilities are scaled by `shift`.
struct RareWeakConfig {
  std::size_t vocab_size = 1000;
  std::size_t docs_per_author = 20;
  std::size_t doc_length = 2000;
  double epsilon = 0.02;
  double shift = 2.0;
  double zipf_exponent = 1.0;
  std::uint64_t seed = 1;

  void validate() const {
    if (vocab_size < 2) throw std::invalid_argument("simulate: vocabulary size must be >= 2");
    if (docs_per_author < 1) throw std::invalid_argument("simulate: docs per author must be >= 1");
    if (doc_length < 1) throw std::invalid_argument("simulate: document length must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("simulate: epsilon must lie in (0, 1)");
    if (!(shift > 0.0)) throw std::invalid_argument("simulate: shift must be > 0");
    if (!(zipf_exponent >= 0.0)) throw std::invalid_argument("simulate: Zipf exponent must be >= 0");
  }

  std::size_t perturbed_count() const {
    // Guard against 0.01 * 1000 landing a hair above 10.
    return static_cast<std::size_t>(std::ceil(epsilon * static_cast<double>(vocab_size) - 1e-9));
  }
};

/// mt19937_64 with sampling helpers defined here rather than by the
/// standard distributions, so output is identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform on [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

  std::mt19937_64& engine() { return eng_; }

private:
  std::mt19937_64 eng_;
};

/// Alphabetic term names (t + base-26 code) that survive tokenization.
inline std::string synthetic_term(std::size_t index, std::size_t vocab_size) {
  std::size_t width = 1;
  for (std::size_t cap = 26; cap < vocab_size; cap *= 26) ++width;
  std::string s(width, 'a');
  for (std::size_t i = width; i-- > 0; index /= 26) s[i] = static_cast<char>('a' + index % 26);
  return "t" + s;
}

inline Vocabulary synthetic_vocabulary(std::size_t vocab_size) {
  std::vector<std::string> terms;
  terms.reserve(vocab_size);
  for (std::size_t i = 0; i < vocab_size; ++i) terms.push_back(synthetic_term(i, vocab_size));
  return Vocabulary(std::move(terms));
}

/// p_k proportional to k^-s, k = 1..N.
inline std::vector<double> zipf_law(std::size_t n, double exponent) {
  std::vector<double> p(n);
  double z = 0.0;
  for (std::size_t k = 0; k < n; ++k) z += p[k] = std::pow(static_cast<double>(k + 1), -exponent);
  for (auto& v : p) v /= z;
  return p;
}

/// Multiplies the listed probabilities by `shift` and renormalizes.
inline std::vector<double> perturb_law(std::vector<double> p, const std::vector<std::size_t>& indices, double shift) {
  for (auto i : indices) p[i] *= shift;
  double z = 0.0;
  for (double v : p) z += v;
  for (auto& v : p) v /= z;
  return p;
}

/// Multinomial document of `length` draws, by inverse-CDF sampling.
inline FrequencyTable sample_document(const std::vector<double>& law, std::size_t length, const Vocabulary& vocab,
                                      Rng& rng) {
  std::vector<double> cdf(law.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < law.size(); ++i) cdf[i] = acc += law[i];
  std::vector<Count> counts(law.size(), 0);
  for (std::size_t t = 0; t < length; ++t) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++counts[static_cast<std::size_t>(it - cdf.begin())];
  }
  FrequencyTable table;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i]) table.add(vocab[i], counts[i]);
  }
  return table;
}

struct SyntheticCorpora {
  Corpus a;
  Corpus b;
  Vocabulary vocab;
  std::vector<std::string> perturbed;  // ground truth, vocabulary order
  std::vector<double> law_a;
  std::vector<double> law_b;
};

inline SyntheticCorpora simulate_rare_weak(const RareWeakConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  SyntheticCorpora out;
  out.vocab = synthetic_vocabulary(cfg.vocab_size);
  out.law_a = zipf_law(cfg.vocab_size, cfg.zipf_exponent);

  // Partial Fisher-Yates draw of the perturbed terms.
  std::vector<std::size_t> idx(cfg.vocab_size);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const std::size_t n_pert = cfg.perturbed_count();
  for (std::size_t i = 0; i < n_pert; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(cfg.vocab_size - i));
    std::swap(idx[i], idx[j]);
  }
  std::vector<std::size_t> chosen(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_pert));
  std::sort(chosen.begin(), chosen.end());
  for (auto i : chosen) out.perturbed.push_back(out.vocab[i]);
  out.law_b = perturb_law(out.law_a, chosen, cfg.shift);

  auto make = [&](const std::string& author, const std::vector<double>& law) {
    std::vector<Document> docs;
    for (std::size_t d = 0; d < cfg.docs_per_author; ++d) {
      char id[32];
      std::snprintf(id, sizeof id, "%s/doc%03zu", author.c_str(), d + 1);
      docs.push_back({id, sample_document(law, cfg.doc_length, out.vocab, rng)});
    }
    return Corpus(author, std::move(docs));
  };
  out.a = make("A", out.law_a);
  out.b = make("B", out.law_b);
  return out;
}

}  // namespace hcsim
