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

#include "clineval/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>

#include "json.hpp"

namespace clineval {

double EmbeddingVector::norm() const {
  return std::sqrt(std::inner_product(values.begin(), values.end(), values.begin(), 0.0));
}

EmbeddingVector load_embedding(const std::filesystem::path &path,
                               EmbeddingFormat format) {
  const std::string where = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kMissingFile, where + ": cannot open embedding");
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());

  EmbeddingVector out;
  if (format == EmbeddingFormat::kJson) {
    const auto doc = nlohmann::json::parse(bytes, nullptr, false);
    if (doc.is_discarded() || !doc.is_array())
      throw Error(Errc::kCorruptData, where + ": expected a JSON array of reals");
    for (const auto &v : doc) {
      if (!v.is_number())
        throw Error(Errc::kCorruptData, where + ": non-numeric embedding entry");
      out.values.push_back(v.get<double>());
    }
  } else {
    if (bytes.size() % 4 != 0)
      throw Error(Errc::kCorruptData,
                  where + ": float32 file size is not a multiple of 4");
    for (std::size_t i = 0; i < bytes.size(); i += 4) {
      std::uint32_t word = 0;
      for (int b = 3; b >= 0; --b)
        word = (word << 8) | static_cast<std::uint8_t>(bytes[i + b]);
      out.values.push_back(std::bit_cast<float>(word));
    }
  }
  if (out.values.empty()) throw Error(Errc::kEmptyPayload, where + ": empty embedding");
  if (!std::all_of(out.values.begin(), out.values.end(),
                   [](double v) { return std::isfinite(v); }))
    throw Error(Errc::kCorruptData, where + ": non-finite embedding value");
  return out;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw Error(Errc::kLengthMismatch,
                "cosine_similarity: lengths " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  const double dot = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
  const double na = std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0));
  const double nb = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
  if (!(na > 0.0) || !(nb > 0.0))
    throw Error(Errc::kZeroNorm, "cosine_similarity: zero-norm vector");
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

PccResult consonant_accuracy(const IpaSequence &ref, const IpaSequence &produced,
                             MatchMode mode, std::size_t max_len) {
  const auto ref_c = extract_consonants(ref);
  const auto prod_c = extract_consonants(produced);
  if (ref_c.tokens.empty())
    throw Error(Errc::kUndefinedPcc, "consonant_accuracy: reference has no consonants");

  auto eq = [mode](const IpaToken &x, const IpaToken &y) {
    if (mode == MatchMode::kBaseOnly) return x.base == y.base;
    return x.base == y.base && x.diacritics == y.diacritics;
  };
  const auto script = levenshtein<IpaToken>(ref_c.tokens, prod_c.tokens, eq, max_len);

  PccResult out;
  out.matches = script.counts.matches;
  out.total_ref_consonants = ref_c.tokens.size();
  out.consonant_distance = script.distance;
  out.pcc_percent = 100.0 * static_cast<double>(out.matches) /
                    static_cast<double>(out.total_ref_consonants);
  return out;
}

double pcc_from_counts(long long correct, long long total) {
  if (total == 0) throw Error(Errc::kUndefinedPcc, "pcc_from_counts: total is zero");
  if (total < 0)
    throw Error(Errc::kInvalidArgument, "pcc_from_counts: total must be positive");
  if (correct < 0 || correct > total)
    throw Error(Errc::kInvalidArgument,
                "pcc_from_counts: need 0 <= correct <= total, got " +
                    std::to_string(correct) + "/" + std::to_string(total));
  return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

void PccAccumulator::add(std::size_t correct, std::size_t total) {
  percent_sum_ += pcc_from_counts(static_cast<long long>(correct),
                                  static_cast<long long>(total));
  correct_ += correct;
  total_ += total;
  ++n_;
}

double PccAccumulator::pooled_percent() const {
  if (n_ == 0) throw Error(Errc::kInsufficientData, "no PCC values accumulated");
  return 100.0 * static_cast<double>(correct_) / static_cast<double>(total_);
}

double PccAccumulator::mean_percent() const {
  if (n_ == 0) throw Error(Errc::kInsufficientData, "no PCC values accumulated");
  return percent_sum_ / static_cast<double>(n_);
}

double mean(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::kInsufficientData, "mean of empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2)
    throw Error(Errc::kInsufficientData, "variance needs at least two values");
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return ss / static_cast<double>(values.size() - 1);
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(Errc::kLengthMismatch, "pearson: sequences differ in length");
  if (x.size() < 2) throw Error(Errc::kInsufficientData, "pearson: need n >= 2");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0))
    throw Error(Errc::kZeroVariance, "pearson: a sequence has zero variance");
  return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), x.size()};
}

namespace {

// Continued fraction for I_x(a, b), modified Lentz. Converges quickly for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) return h;
  }
  throw Error(Errc::kInvalidArgument, "incomplete beta: continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw Error(Errc::kInvalidArgument, "incomplete beta: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0))
    throw Error(Errc::kInvalidArgument, "incomplete beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
  if (!(dof > 0.0)) throw Error(Errc::kInvalidArgument, "student_t_cdf: dof must be positive");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = dof / (dof + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * dof, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw Error(Errc::kInsufficientData, "welch_t_test: each sample needs n >= 2");
  const double va = sample_variance(a) / static_cast<double>(a.size());
  const double vb = sample_variance(b) / static_cast<double>(b.size());
  if (!(va > 0.0) && !(vb > 0.0))
    throw Error(Errc::kZeroVariance, "welch_t_test: both samples are constant");

  const double se2 = va + vb;
  TTestResult out;
  out.t_stat = (mean(a) - mean(b)) / std::sqrt(se2);
  out.dof = se2 * se2 /
            (va * va / static_cast<double>(a.size() - 1) +
             vb * vb / static_cast<double>(b.size() - 1));
  const double x = out.dof / (out.dof + out.t_stat * out.t_stat);
  out.p_value = std::clamp(regularized_incomplete_beta(0.5 * out.dof, 0.5, x), 0.0, 1.0);
  out.significant_at_05 = out.p_value < 0.05;
  return out;
}

}  // namespace clineval
