#pragma once

#include "hcsim/binom_test.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hcsim {

/// star maximizes over every rank up to alpha*N; dagger only over ranks
/// whose P-value is at least 1/N.
enum class HCVariant { star, dagger };

inline constexpr double kDefaultAlpha = 0.3;

inline std::string_view to_string(HCVariant v) { return v == HCVariant::star ? "star" : "dagger"; }

inline HCVariant parse_variant(std::string_view s) {
  if (s == "star") return HCVariant::star;
  if (s == "dagger") return HCVariant::dagger;
  throw std::invalid_argument("unknown HC variant '" + std::string(s) + "' (expected star or dagger)");
}

struct HCResult {
  double score = 0.0;
  std::size_t i_star = 0;   // 1-based rank of the maximizer
  double threshold = 0.0;   // the i_star-th smallest P-value
  double alpha = kDefaultAlpha;
  HCVariant variant = HCVariant::dagger;
  std::size_t n_tested = 0;
};

/// Thrown by the dagger variant when every candidate P-value lies below 1/N.
class NoAdmissibleRank : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Standardized deviation of the i-th order statistic from its uniform
/// expectation:  sqrt(N) (i/N - pi_(i)) / sqrt((i/N)(1 - i/N)).
inline double hc_z(std::size_t i, std::size_t n, double pi_i) {
  const double u = static_cast<double>(i) / static_cast<double>(n);
  return std::sqrt(static_cast<double>(n)) * (u - pi_i) / std::sqrt(u * (1.0 - u));
}

/// Higher Criticism over a batch of P-values.
///
/// Ranks run over 1 <= i <= floor(alpha*N), excluding i = N where the
/// standardization is undefined. Ties in the maximum resolve to the smallest
/// rank.
inline HCResult compute_hc(std::span<const double> pvalues, double alpha = kDefaultAlpha,
                           HCVariant variant = HCVariant::dagger) {
  if (pvalues.empty()) throw std::invalid_argument("compute_hc: no P-values");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("compute_hc: alpha must lie in (0, 1]");

  const std::size_t n = pvalues.size();
  const auto upper = std::min(static_cast<std::size_t>(std::floor(alpha * static_cast<double>(n))), n - 1);
  if (upper < 1) {
    throw std::invalid_argument("compute_hc: floor(alpha*N) < 1 (alpha=" + std::to_string(alpha) +
                                ", N=" + std::to_string(n) + ")");
  }

  std::vector<double> sorted(pvalues.begin(), pvalues.end());
  std::sort(sorted.begin(), sorted.end());

  const double floor_pi = 1.0 / static_cast<double>(n);
  HCResult res;
  res.alpha = alpha;
  res.variant = variant;
  res.n_tested = n;
  bool found = false;
  for (std::size_t i = 1; i <= upper; ++i) {
    const double pi_i = sorted[i - 1];
    if (variant == HCVariant::dagger && pi_i < floor_pi) continue;
    const double z = hc_z(i, n, pi_i);
    if (!found || z > res.score) {
      res.score = z;
      res.i_star = i;
      res.threshold = pi_i;
      found = true;
    }
  }
  if (!found) {
    throw NoAdmissibleRank("compute_hc: all of the smallest " + std::to_string(upper) +
                           " P-values fall below 1/N; HC dagger has no admissible rank");
  }
  return res;
}

struct DiscriminatingTerm {
  std::string term;
  double pi = 1.0;
  int direction = 0;  // +1: relatively more frequent in the first table, -1: in the second
};

/// Terms whose P-value is at or below the HC threshold, ordered by P-value.
struct DiscriminatingSet {
  std::vector<DiscriminatingTerm> terms;

  std::size_t size() const { return terms.size(); }
  bool contains(std::string_view t) const {
    return std::any_of(terms.begin(), terms.end(), [&](const auto& d) { return d.term == t; });
  }
};

/// Sign of x - n_w * p_w, evaluated in integers from the record's counts.
inline int allocation_direction(const PValueRecord& r, Count n1, Count n2) {
  const Count den = n1 + n2 - r.n_w;
  // x - n_w (n1 - x) / den  ~  x * den - n_w * (n1 - x)
  const auto lhs = static_cast<long double>(r.x) * static_cast<long double>(den);
  const auto rhs = static_cast<long double>(r.n_w) * static_cast<long double>(n1 - r.x);
  return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

inline DiscriminatingSet discriminating_set(const std::vector<PValueRecord>& records, const HCResult& hc,
                                            Count n1, Count n2) {
  DiscriminatingSet out;
  for (const auto& r : sorted_by_pvalue(records)) {
    if (r.pi > hc.threshold) break;
    out.terms.push_back({r.term, r.pi, allocation_direction(r, n1, n2)});
  }
  return out;
}

/// Variant without table totals: direction from the stored p_w.
inline DiscriminatingSet discriminating_set(const std::vector<PValueRecord>& records, const HCResult& hc) {
  DiscriminatingSet out;
  for (const auto& r : sorted_by_pvalue(records)) {
    if (r.pi > hc.threshold) break;
    const double e = static_cast<double>(r.x) - static_cast<double>(r.n_w) * r.p_w;
    out.terms.push_back({r.term, r.pi, e > 0 ? 1 : (e < 0 ? -1 : 0)});
  }
  return out;
}

}  // namespace hcsim
