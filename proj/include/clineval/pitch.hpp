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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "clineval/audio.hpp"

namespace clineval {

/// YIN parameters. The f0 range defaults are wide enough for child speech.
struct YinConfig {
  double f0_min = 50.0;
  double f0_max = 600.0;
  double threshold = 0.15;
  std::size_t frame_len = 2048;
  std::size_t hop = 256;
  /// Frames with RMS below this are unvoiced whatever the CMNDF says.
  double silence_rms = 0.01;
};

struct PitchFrame {
  double time_s = 0.0;             // frame centre
  std::optional<double> f0;        // empty when unvoiced
  double confidence = 0.0;         // 1 - min CMNDF, clamped to [0, 1]
};

struct PitchTrack {
  std::vector<PitchFrame> frames;
  /// Set when frame_len < 2 * ceil(sample_rate / f0_min).
  bool short_frame_warning = false;

  std::size_t voiced_count() const;
};

/// Estimates f0 per frame. Throws kTooShort when the clip does not fill one
/// frame and kInvalidArgument when the f0 bounds do not fit the sample rate
/// or frame length.
PitchTrack yin_f0_track(const AudioClip &clip, const YinConfig &cfg = {});

/// Single-frame YIN. Returns the lag (in samples, fractional) and the CMNDF
/// value at the chosen integer lag. Exposed for testing.
struct YinLag {
  double tau = 0.0;
  double cmndf = 1.0;
};
YinLag yin_frame_lag(std::span<const float> frame, std::size_t tau_min,
                     std::size_t tau_max, double threshold);

enum class F0Statistic { kMean, kMedian };

/// Mean (or median) of voiced f0 values. Throws kUnvoicedClip when no frame is
/// voiced.
double aggregate_f0(const PitchTrack &track,
                    F0Statistic statistic = F0Statistic::kMean);

struct PitchComparison {
  double f0_ref_mean = 0.0;
  double f0_rec_mean = 0.0;
  double semitone_diff = 0.0;           // |12 log2(rec / ref)|
  double relative_deviation_pct = 0.0;  // 100 |rec - ref| / ref
};

/// Throws kInvalidArgument for non-positive frequencies.
PitchComparison compare_pitch(double f0_ref, double f0_rec);

}  // namespace clineval
