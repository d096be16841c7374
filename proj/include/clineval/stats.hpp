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

// Similarity, consonant accuracy and the significance/correlation statistics
// used to compare methods and validate automatic scores against clinicians.

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "clineval/align.hpp"
#include "clineval/phon.hpp"

namespace clineval {

inline constexpr std::size_t kSpeakerEmbeddingDim = 256;

/// Speaker embedding. Length is whatever the producer emitted; 256 is the
/// expected size but is not enforced.
struct EmbeddingVector {
  std::vector<double> values;

  double norm() const;
};

enum class EmbeddingFormat {
  kJson,     // a JSON array of reals
  kFloat32,  // raw little-endian float32, length = file size / 4
};

/// Throws kMissingFile, kCorruptData (bad JSON, non-finite values, size not a
/// multiple of 4) or kEmptyPayload.
EmbeddingVector load_embedding(const std::filesystem::path &path,
                               EmbeddingFormat format);

/// Cosine of the angle between a and b, clamped to [-1, 1]. Throws
/// kLengthMismatch or kZeroNorm.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// How consonant tokens are compared when aligning.
enum class MatchMode {
  kStrict,    // base and diacritics must agree
  kBaseOnly,  // diacritics ignored
};

struct PccResult {
  std::size_t matches = 0;
  std::size_t total_ref_consonants = 0;
  double pcc_percent = 0.0;
  std::size_t consonant_distance = 0;
};

/// Aligns the consonants of `produced` against those of `ref`. Throws
/// kUndefinedPcc when `ref` has no consonants.
PccResult consonant_accuracy(const IpaSequence &ref, const IpaSequence &produced,
                             MatchMode mode = MatchMode::kStrict,
                             std::size_t max_len = kDefaultMaxSequenceLength);

/// 100 * correct / total. Throws kInvalidArgument unless 0 <= correct <= total
/// and total > 0.
double pcc_from_counts(long long correct, long long total);

/// Running pooled PCC (sum correct / sum total) and per-utterance mean.
class PccAccumulator {
 public:
  void add(std::size_t correct, std::size_t total);

  std::size_t utterances() const { return n_; }
  std::size_t correct() const { return correct_; }
  std::size_t total() const { return total_; }
  /// Throws kInsufficientData when nothing has been added.
  double pooled_percent() const;
  double mean_percent() const;

 private:
  std::size_t n_ = 0;
  std::size_t correct_ = 0;
  std::size_t total_ = 0;
  double percent_sum_ = 0.0;
};

struct CorrelationResult {
  double rho = 0.0;
  std::size_t n = 0;
};

/// Sample Pearson correlation. Throws kLengthMismatch, kInsufficientData
/// (n < 2) or kZeroVariance.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

struct TTestResult {
  double t_stat = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
  bool significant_at_05 = false;
};

/// Two-sided Welch t-test. Throws kInsufficientData when a sample has fewer
/// than two values and kZeroVariance when both samples are constant.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

/// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);
/// P(T <= t) for Student's t with `dof` degrees of freedom (dof > 0).
double student_t_cdf(double t, double dof);
double normal_cdf(double z);

double mean(std::span<const double> values);
/// Unbiased sample variance (n - 1 denominator).
double sample_variance(std::span<const double> values);

}  // namespace clineval
