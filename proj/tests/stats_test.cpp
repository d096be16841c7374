// Copyright 2026 The clineval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "clineval/error.hpp"
#include "clineval/stats.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace clineval {
namespace {

using test::expect_errc;
using V = std::vector<double>;

TEST(Cosine, Examples) {
  const V a = {0.3, -1.2, 4.0};
  EXPECT_NEAR(cosine_similarity(a, a), 1.0, 1e-15);
  EXPECT_EQ(cosine_similarity(V{1, 0, 0}, V{0, 1, 0}), 0.0);
  EXPECT_NEAR(cosine_similarity(V{1, 1}, V{1, 0}), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(cosine_similarity(V{1, 2}, V{-2, -4}), -1.0, 1e-15);
}

TEST(Cosine, BoundedAndScaleInvariant) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> s(0.01, 100.0);
  for (int trial = 0; trial < 500; ++trial) {
    V a(8), b(8);
    for (auto &x : a) x = g(rng);
    for (auto &x : b) x = g(rng);
    const double c = cosine_similarity(a, b);
    ASSERT_LE(std::abs(c), 1.0);
    V sa = a;
    const double k = s(rng);
    for (auto &x : sa) x *= k;
    ASSERT_NEAR(cosine_similarity(b, a), c, 1e-15);
    ASSERT_NEAR(cosine_similarity(sa, b), c, 1e-12);
  }
}

TEST(Cosine, Errors) {
  expect_errc(Errc::kLengthMismatch, [] { cosine_similarity(V{1, 2}, V{1, 2, 3}); });
  expect_errc(Errc::kZeroNorm, [] { cosine_similarity(V{0, 0}, V{1, 2}); });
}

TEST(LoadEmbedding, JsonAndFloat32) {
  test::ScratchDir dir;
  {
    std::ofstream out(dir / "e.json");
    out << "[0.5, -1, 2.25]";
  }
  EXPECT_EQ(load_embedding(dir / "e.json", EmbeddingFormat::kJson).values, (V{0.5, -1, 2.25}));
  {
    const float raw[3] = {0.5f, -1.0f, 2.25f};
    std::ofstream out(dir / "e.f32", std::ios::binary);
    out.write(reinterpret_cast<const char *>(raw), sizeof raw);
  }
  EXPECT_EQ(load_embedding(dir / "e.f32", EmbeddingFormat::kFloat32).values, (V{0.5, -1, 2.25}));
  {
    std::ofstream out(dir / "odd.f32", std::ios::binary);
    out << "abcde";
  }
  expect_errc(Errc::kCorruptData, [&] { load_embedding(dir / "odd.f32", EmbeddingFormat::kFloat32); });
  {
    std::ofstream out(dir / "bad.json");
    out << "{\"x\": 1}";
  }
  expect_errc(Errc::kCorruptData, [&] { load_embedding(dir / "bad.json", EmbeddingFormat::kJson); });
  expect_errc(Errc::kMissingFile, [&] { load_embedding(dir / "nope.json", EmbeddingFormat::kJson); });
}

IpaSequence ipa(const char *s) { return tokenize_ipa(s); }

TEST(ConsonantAccuracy, Examples) {
  const auto r = consonant_accuracy(ipa("kæt"), ipa("tæt"));
  EXPECT_EQ(r.matches, 1u);
  EXPECT_EQ(r.total_ref_consonants, 2u);
  EXPECT_EQ(r.pcc_percent, 50.0);
  EXPECT_EQ(r.consonant_distance, 1u);

  const auto same = consonant_accuracy(ipa("stɹit"), ipa("stɹit"));
  EXPECT_EQ(same.pcc_percent, 100.0);
  EXPECT_EQ(same.consonant_distance, 0u);

  expect_errc(Errc::kUndefinedPcc, [] { consonant_accuracy(ipa("a"), ipa("ma")); });
}

TEST(ConsonantAccuracy, MatchModes) {
  const auto strict = consonant_accuracy(ipa("kʰæt"), ipa("kæt"), MatchMode::kStrict);
  const auto loose = consonant_accuracy(ipa("kʰæt"), ipa("kæt"), MatchMode::kBaseOnly);
  EXPECT_EQ(strict.matches, 1u);
  EXPECT_EQ(loose.matches, 2u);
}

TEST(ConsonantAccuracy, VowelsDoNotCount) {
  const auto r = consonant_accuracy(ipa("kæt"), ipa("kit"));
  EXPECT_EQ(r.pcc_percent, 100.0);
}

TEST(ConsonantAccuracy, ExtraProducedConsonantsLowerNothingButDistance) {
  const auto r = consonant_accuracy(ipa("sʌn"), ipa("stʌnd"));
  EXPECT_EQ(r.matches, 2u);
  EXPECT_EQ(r.pcc_percent, 100.0);
  EXPECT_EQ(r.consonant_distance, 2u);
}

TEST(ConsonantAccuracy, SubstitutionNeverRaisesPcc) {
  const char *pool[] = {"p", "t", "k", "s", "m", "n", "l", "ɹ"};
  std::mt19937 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    std::string ref;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) ref += std::string(pool[rng() % 8]) + "a";
    const auto base = consonant_accuracy(ipa(ref.c_str()), ipa(ref.c_str()));
    std::string mutated = ref;
    const auto pos = mutated.find('a');  // corrupt one consonant into a click
    mutated = "ǀ" + mutated.substr(pos);
    const auto worse = consonant_accuracy(ipa(ref.c_str()), ipa(mutated.c_str()));
    ASSERT_LE(worse.pcc_percent, base.pcc_percent);
    ASSERT_GE(worse.consonant_distance, base.consonant_distance);
  }
}

TEST(PccFromCounts, Examples) {
  EXPECT_EQ(pcc_from_counts(9, 12), 75.0);
  EXPECT_EQ(pcc_from_counts(12, 12), 100.0);
  EXPECT_EQ(pcc_from_counts(0, 7), 0.0);
  expect_errc(Errc::kUndefinedPcc, [] { pcc_from_counts(0, 0); });
  expect_errc(Errc::kInvalidArgument, [] { pcc_from_counts(5, 3); });
  expect_errc(Errc::kInvalidArgument, [] { pcc_from_counts(-1, 3); });
}

TEST(PccAccumulator, PooledVersusMean) {
  PccAccumulator acc;
  acc.add(1, 2);
  acc.add(9, 10);
  EXPECT_EQ(acc.utterances(), 2u);
  EXPECT_DOUBLE_EQ(acc.pooled_percent(), 100.0 * 10 / 12);
  EXPECT_DOUBLE_EQ(acc.mean_percent(), 70.0);
}

TEST(Pearson, ClosedForms) {
  EXPECT_NEAR(pearson(V{1, 2, 3}, V{2, 4, 6}).rho, 1.0, 1e-12);
  EXPECT_NEAR(pearson(V{1, 2, 3}, V{3, 2, 1}).rho, -1.0, 1e-12);
  EXPECT_NEAR(pearson(V{1, 2, 3}, V{1, 3, 2}).rho, 0.5, 1e-12);
  EXPECT_EQ(pearson(V{1, 2, 3}, V{1, 3, 2}).n, 3u);
}

TEST(Pearson, Errors) {
  expect_errc(Errc::kInsufficientData, [] { pearson(V{1}, V{2}); });
  expect_errc(Errc::kLengthMismatch, [] { pearson(V{1, 2}, V{1, 2, 3}); });
  expect_errc(Errc::kZeroVariance, [] { pearson(V{1, 1, 1}, V{1, 2, 3}); });
}

TEST(Pearson, AffineInvarianceAndOracle) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> coef(0.1, 10.0), shift(-100, 100);
  for (int trial = 0; trial < 1000; ++trial) {
    V x(3 + trial % 20), y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = g(rng);
      y[i] = 0.5 * x[i] + g(rng);
    }
    const double rho = pearson(x, y).rho;
    ASSERT_NEAR(rho, oracle::pearson(x, y), 1e-12);
    const double a = coef(rng), b = shift(rng), c = coef(rng), d = shift(rng);
    V ax = x, cy = y;
    for (auto &v : ax) v = a * v + b;
    for (auto &v : cy) v = c * v + d;
    ASSERT_NEAR(pearson(ax, cy).rho, rho, 1e-9);
  }
}

TEST(SpecialFunctions, IncompleteBetaAgainstBoost) {
  for (double a : {0.5, 1.0, 2.5, 10.0, 400.0})
    for (double b : {0.5, 1.0, 3.0, 50.0})
      for (double x : {0.0, 1e-6, 0.1, 0.5, 0.9, 0.999, 1.0})
        EXPECT_NEAR(regularized_incomplete_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-12)
            << a << " " << b << " " << x;
}

TEST(SpecialFunctions, StudentTAgainstBoost) {
  for (double dof : {1.0, 2.0, 3.7, 8.0, 30.0, 1000.0}) {
    boost::math::students_t dist(dof);
    for (double t : {-40.0, -3.0, -1.0, -0.2, 0.0, 0.7, 2.0, 12.0})
      EXPECT_NEAR(student_t_cdf(t, dof), boost::math::cdf(dist, t), 1e-12) << dof << " " << t;
  }
  boost::math::normal n01;
  for (double z : {-5.0, -1.0, 0.0, 0.3, 2.5})
    EXPECT_NEAR(normal_cdf(z), boost::math::cdf(n01, z), 1e-15);
}

TEST(Welch, Examples) {
  const V a = {1, 2, 3, 4, 5};
  const auto same = welch_t_test(a, a);
  EXPECT_EQ(same.t_stat, 0.0);
  EXPECT_NEAR(same.p_value, 1.0, 1e-15);
  EXPECT_FALSE(same.significant_at_05);

  const auto r = welch_t_test(a, V{2, 3, 4, 5, 6});
  EXPECT_NEAR(r.t_stat, -1.0, 1e-12);
  EXPECT_NEAR(r.dof, 8.0, 1e-12);
  EXPECT_NEAR(r.p_value, 0.34659350708733416, 1e-10);

  expect_errc(Errc::kZeroVariance, [] { welch_t_test(V{0, 0}, V{0, 0}); });
  expect_errc(Errc::kInsufficientData, [] { welch_t_test(V{1}, V{1, 2}); });
}

TEST(Welch, SwapNegatesT) {
  const V a = {0.3, 1.9, 2.2, 0.8}, b = {2.5, 3.1, 2.9, 4.0, 3.3};
  const auto ab = welch_t_test(a, b), ba = welch_t_test(b, a);
  EXPECT_NEAR(ab.t_stat, -ba.t_stat, 1e-14);
  EXPECT_NEAR(ab.p_value, ba.p_value, 1e-14);
  EXPECT_NEAR(ab.dof, ba.dof, 1e-12);
}

TEST(Welch, OneConstantSampleIsAllowed) {
  const auto r = welch_t_test(V{1, 1, 1}, V{1, 2, 3, 4});
  EXPECT_TRUE(std::isfinite(r.t_stat));
  EXPECT_NEAR(r.dof, 3.0, 1e-12);
}

TEST(Welch, MatchesFrozenReference) {
  std::ifstream in(CLINEVAL_FIXTURE_DIR "/welch_reference.json");
  ASSERT_TRUE(in);
  const auto cases = nlohmann::json::parse(in);
  ASSERT_EQ(cases.size(), 20u);
  for (const auto &c : cases) {
    const auto a = c["a"].get<V>();
    const auto b = c["b"].get<V>();
    const auto r = welch_t_test(a, b);
    EXPECT_NEAR(r.t_stat, c["t"].get<double>(), 1e-9);
    EXPECT_NEAR(r.dof, c["dof"].get<double>(), 1e-9);
    EXPECT_NEAR(r.p_value, c["p"].get<double>(), 1e-10);
    EXPECT_EQ(r.significant_at_05, c["p"].get<double>() < 0.05);
  }
}

}  // namespace
}  // namespace clineval
