#include "hcsim/similarity.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hcsim;

namespace {

Vocabulary letters(std::size_t n) {
  std::vector<std::string> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(std::string(1, static_cast<char>('a' + i)));
  return Vocabulary(t);
}

FrequencyTable random_table(const Vocabulary& v, std::mt19937_64& rng, Count max_count) {
  FrequencyTable t;
  for (const auto& term : v) t.add(term, static_cast<Count>(rng() % static_cast<std::uint64_t>(max_count + 1)));
  return t;
}

}  // namespace

TEST(HCSim, TwoWordExample) {
  FrequencyTable d1{{"a", 3}, {"b", 1}}, d2{{"a", 1}, {"b", 3}};
  auto s = hc_sim(d1, d2, Vocabulary{"a", "b"}, 0.5, HCVariant::star);
  // Both P-values are 13/256; only rank 1 is used.
  EXPECT_NEAR(s.value, 1.2705824974445776, 1e-12);
  ASSERT_TRUE(s.hc);
  EXPECT_EQ(s.hc->i_star, 1u);
  ASSERT_TRUE(s.delta);
  EXPECT_EQ(s.delta->size(), 2u);
  EXPECT_EQ(s.pvalues.size(), 2u);
}

TEST(HCSim, Symmetric) {
  std::mt19937_64 rng(17);
  auto v = letters(26);
  for (int trial = 0; trial < 50; ++trial) {
    auto t1 = random_table(v, rng, 40), t2 = random_table(v, rng, 15);
    for (auto var : {HCVariant::star, HCVariant::dagger}) {
      try {
        EXPECT_EQ(hc_sim(t1, t2, v, 0.3, var).value, hc_sim(t2, t1, v, 0.3, var).value);
      } catch (const NoAdmissibleRank&) {
        EXPECT_THROW(hc_sim(t2, t1, v, 0.3, var), NoAdmissibleRank);
      }
    }
  }
}

TEST(HCSim, EmptyTableRejected) {
  FrequencyTable d{{"a", 1}};
  EXPECT_THROW(hc_sim(d, FrequencyTable{}, Vocabulary{"a"}), std::invalid_argument);
  EXPECT_THROW(hc_sim(d, FrequencyTable{{"b", 5}}, Vocabulary{"a"}), std::invalid_argument);
}

TEST(HCSim, DistinctSourcesScoreHigher) {
  // Identical draws sit near the null; a shifted law lights up HC.
  std::mt19937_64 rng(4);
  auto v = letters(20);
  std::vector<double> w(20, 1.0), shifted = w;
  shifted[3] = shifted[7] = 3.0;
  auto draw = [&](const std::vector<double>& law) {
    std::discrete_distribution<int> dist(law.begin(), law.end());
    FrequencyTable t;
    for (int i = 0; i < 4000; ++i) t.add(v[static_cast<std::size_t>(dist(rng))], 1);
    return t;
  };
  auto a1 = draw(w), a2 = draw(w), b = draw(shifted);
  EXPECT_GT(hc_sim(a1, b, v, 0.3, HCVariant::star).value, hc_sim(a1, a2, v, 0.3, HCVariant::star).value);
}

TEST(Cosine, IdenticalIsZero) {
  FrequencyTable d{{"a", 7}, {"b", 2}, {"c", 11}};
  EXPECT_EQ(cosine_index(d, d, Vocabulary{"a", "b", "c"}).value, 0.0);
}

TEST(Cosine, ScaledIsZero) {
  FrequencyTable d{{"a", 1}, {"b", 2}}, e{{"a", 3}, {"b", 6}};
  EXPECT_NEAR(cosine_index(d, e, Vocabulary{"a", "b"}).value, 0.0, 1e-15);
}

TEST(Cosine, DisjointIsOne) {
  FrequencyTable d{{"a", 1}}, e{{"b", 1}};
  EXPECT_EQ(cosine_index(d, e, Vocabulary{"a", "b"}).value, 1.0);
}

TEST(Cosine, FortyFiveDegrees) {
  FrequencyTable d{{"a", 1}}, e{{"a", 1}, {"b", 1}};
  EXPECT_NEAR(cosine_index(d, e, Vocabulary{"a", "b"}).value, 1.0 - 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Cosine, BoundedAndSymmetric) {
  std::mt19937_64 rng(8);
  auto v = letters(12);
  for (int trial = 0; trial < 100; ++trial) {
    auto t1 = random_table(v, rng, 9), t2 = random_table(v, rng, 9);
    if (t1.total() == 0 || t2.total() == 0) continue;
    const double c = cosine_index(t1, t2, v).value;
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
    EXPECT_EQ(c, cosine_index(t2, t1, v).value);
  }
}

TEST(Cosine, ZeroVectorRejected) {
  EXPECT_THROW(cosine_index(FrequencyTable{}, FrequencyTable{{"a", 1}}, Vocabulary{"a"}), std::invalid_argument);
}

TEST(Divergence, IdenticalIsZero) {
  FrequencyTable d{{"a", 7}, {"b", 2}, {"c", 11}};
  Vocabulary v{"a", "b", "c"};
  for (double lambda : {kLambdaG2, kLambdaCressieRead, kLambdaPearson}) {
    EXPECT_NEAR(power_divergence(d, d, v, lambda).value, 0.0, 1e-12) << lambda;
  }
}

TEST(Divergence, PearsonExample) {
  // E = 2 in every cell, (O - E)^2 / E = 1/2 four times; N' - 1 = 1.
  FrequencyTable d1{{"a", 3}, {"b", 1}}, d2{{"a", 1}, {"b", 3}};
  auto s = power_divergence(d1, d2, Vocabulary{"a", "b"}, kLambdaPearson);
  EXPECT_NEAR(s.value, 2.0, 1e-12);
  EXPECT_EQ(s.statistic, Statistic::divergence);
  EXPECT_EQ(s.lambda, 1.0);
}

TEST(Divergence, PearsonMatchesChiSquaredForm) {
  std::mt19937_64 rng(21);
  auto v = letters(10);
  for (int trial = 0; trial < 50; ++trial) {
    auto t1 = random_table(v, rng, 30), t2 = random_table(v, rng, 30);
    const double n1 = static_cast<double>(t1.total()), n2 = static_cast<double>(t2.total());
    double chi = 0.0;
    std::size_t np = 0;
    for (const auto& w : v) {
      const double pooled = static_cast<double>(t1.count(w) + t2.count(w));
      if (pooled == 0) continue;
      ++np;
      const double e1 = pooled * n1 / (n1 + n2), e2 = pooled * n2 / (n1 + n2);
      chi += std::pow(t1.count(w) - e1, 2) / e1 + std::pow(t2.count(w) - e2, 2) / e2;
    }
    if (np <= 1) continue;
    EXPECT_NEAR(power_divergence(t1, t2, v, kLambdaPearson).value, chi / (np - 1), 1e-9 * (1 + chi));
  }
}

TEST(Divergence, SmallLambdaApproachesG2) {
  std::mt19937_64 rng(13);
  auto v = letters(15);
  for (int trial = 0; trial < 50; ++trial) {
    auto t1 = random_table(v, rng, 25), t2 = random_table(v, rng, 25);
    const double g2 = power_divergence(t1, t2, v, kLambdaG2).value;
    const double near = power_divergence(t1, t2, v, 1e-6).value;
    EXPECT_NEAR(near, g2, 1e-6 * g2 + 1e-12);
  }
}

TEST(Divergence, NonnegativeAndScaleInvariantProportions) {
  std::mt19937_64 rng(31);
  auto v = letters(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto t1 = random_table(v, rng, 12), t2 = random_table(v, rng, 12);
    for (double lambda : {kLambdaG2, kLambdaCressieRead, kLambdaPearson}) {
      EXPECT_GE(power_divergence(t1, t2, v, lambda).value, 0.0);
    }
    // Proportional tables: equal per-document proportions give zero.
    FrequencyTable doubled;
    for (const auto& [term, c] : t1) doubled.add(term, 2 * c);
    if (t1.total() == 0) continue;
    for (double lambda : {kLambdaG2, kLambdaCressieRead, kLambdaPearson}) {
      EXPECT_NEAR(power_divergence(t1, doubled, v, lambda).value, 0.0, 1e-12);
    }
  }
}

TEST(Divergence, WithoutClassicalFactor) {
  FrequencyTable d1{{"a", 3}, {"b", 1}}, d2{{"a", 1}, {"b", 3}};
  DivergenceOptions bare;
  bare.classical_factor = false;
  // Bare sum O((O/E) - 1) = sum (O^2/E - O) = 2 * (9/2 - 3 + 1/2 - 1) = 2.
  EXPECT_NEAR(power_divergence(d1, d2, Vocabulary{"a", "b"}, 1.0, bare).value, 2.0, 1e-12);
}

TEST(Divergence, Errors) {
  FrequencyTable d{{"a", 3}};
  EXPECT_THROW(power_divergence(d, FrequencyTable{}, Vocabulary{"a"}, 1.0), std::invalid_argument);
  EXPECT_THROW(power_divergence(d, d, Vocabulary{"a"}, 1.0), std::invalid_argument);  // N' = 1
}
