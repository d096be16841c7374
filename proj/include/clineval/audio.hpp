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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace clineval {

/// Mono sample buffer in [-1, 1] at a fixed rate.
struct AudioClip {
  std::vector<float> samples;
  int sample_rate = 0;
  std::string source_path;

  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

struct FrameSpec {
  std::size_t frame_len = 0;
  std::size_t hop = 0;
};

/// Reads a RIFF/WAVE file with PCM16 or float32 payload. Channels are
/// averaged into one; PCM16 is scaled by 1/32768.
///
/// Throws Error with kMissingFile, kUnsupportedFormat, kTruncated,
/// kEmptyPayload or kCorruptData.
AudioClip load_wav(const std::filesystem::path &path);

enum class WavEncoding { kPcm16, kFloat32 };

/// Writes a mono WAV. PCM16 rounds to nearest and saturates at full scale.
void write_wav(const std::filesystem::path &path, std::span<const float> samples,
               int sample_rate, WavEncoding encoding = WavEncoding::kPcm16);

/// Views into `clip.samples`; frame k covers [k*hop, k*hop + frame_len).
/// Trailing samples that cannot fill a frame are dropped. The views are only
/// valid while `clip` is alive.
std::vector<std::span<const float>> frame_signal(const AudioClip &clip,
                                                 const FrameSpec &spec);

/// floor((n - frame_len) / hop) + 1, or 0 when n < frame_len.
std::size_t frame_count(std::size_t n_samples, const FrameSpec &spec);

}  // namespace clineval
