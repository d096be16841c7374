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

#include "clineval/pitch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "clineval/error.hpp"

namespace clineval {

std::size_t PitchTrack::voiced_count() const {
  return static_cast<std::size_t>(std::count_if(
      frames.begin(), frames.end(), [](const PitchFrame &f) { return f.f0.has_value(); }));
}

YinLag yin_frame_lag(std::span<const float> frame, std::size_t tau_min,
                     std::size_t tau_max, double threshold) {
  // Every lag is summed over the same window so d(tau) values are comparable.
  const std::size_t window = frame.size() - tau_max;

  // diff[tau] for tau in [0, tau_max]; cmndf needs the running sum from 1.
  std::vector<double> cmndf(tau_max + 1, 1.0);
  double running = 0.0;
  for (std::size_t tau = 1; tau <= tau_max; ++tau) {
    double d = 0.0;
    for (std::size_t j = 0; j < window; ++j) {
      const double delta = static_cast<double>(frame[j]) - frame[j + tau];
      d += delta * delta;
    }
    running += d;
    cmndf[tau] = running > 0.0 ? d * static_cast<double>(tau) / running : 1.0;
  }

  // Absolute threshold: first dip under the threshold, walked down to its
  // local minimum. Fall back to the global minimum in range.
  std::size_t best = tau_min;
  bool found = false;
  for (std::size_t tau = tau_min; tau <= tau_max; ++tau) {
    if (cmndf[tau] < threshold) {
      while (tau + 1 <= tau_max && cmndf[tau + 1] < cmndf[tau]) ++tau;
      best = tau;
      found = true;
      break;
    }
  }
  if (!found) {
    for (std::size_t tau = tau_min; tau <= tau_max; ++tau)
      if (cmndf[tau] < cmndf[best]) best = tau;
  }

  double refined = static_cast<double>(best);
  if (best > tau_min && best < tau_max) {
    const double left = cmndf[best - 1];
    const double mid = cmndf[best];
    const double right = cmndf[best + 1];
    const double denom = left - 2.0 * mid + right;
    if (denom > 0.0) {
      const double shift = 0.5 * (left - right) / denom;
      if (std::abs(shift) < 1.0) refined += shift;
    }
  }
  refined = std::clamp(refined, static_cast<double>(tau_min),
                       static_cast<double>(tau_max));
  return {refined, cmndf[best]};
}

PitchTrack yin_f0_track(const AudioClip &clip, const YinConfig &cfg) {
  if (clip.sample_rate <= 0)
    throw Error(Errc::kInvalidArgument, "yin: sample rate must be positive");
  if (!(cfg.f0_min > 0.0 && cfg.f0_min < cfg.f0_max))
    throw Error(Errc::kInvalidArgument, "yin: need 0 < f0_min < f0_max");
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0))
    throw Error(Errc::kInvalidArgument, "yin: threshold must be in (0, 1)");
  const double rate = clip.sample_rate;
  if (cfg.f0_max >= rate / 2.0)
    throw Error(Errc::kInvalidArgument,
                "yin: f0_max " + std::to_string(cfg.f0_max) +
                    " Hz is not below the Nyquist frequency");

  // Lag bounds chosen so that rate / tau always lies in [f0_min, f0_max].
  const auto tau_min = static_cast<std::size_t>(std::ceil(rate / cfg.f0_max));
  const auto tau_max = static_cast<std::size_t>(std::floor(rate / cfg.f0_min));
  if (tau_min < 2 || tau_max <= tau_min)
    throw Error(Errc::kInvalidArgument, "yin: f0 bounds leave no usable lag range");
  if (cfg.frame_len <= tau_max + 1)
    throw Error(Errc::kInvalidArgument,
                "yin: frame_len " + std::to_string(cfg.frame_len) +
                    " cannot hold the longest lag " + std::to_string(tau_max));

  const auto frames = frame_signal(clip, FrameSpec{cfg.frame_len, cfg.hop});

  PitchTrack track;
  track.short_frame_warning =
      cfg.frame_len < 2 * static_cast<std::size_t>(std::ceil(rate / cfg.f0_min));
  track.frames.reserve(frames.size());
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const auto frame = frames[k];
    PitchFrame out;
    out.time_s = (static_cast<double>(k * cfg.hop) + cfg.frame_len / 2.0) / rate;

    const double energy = std::transform_reduce(
        frame.begin(), frame.end(), 0.0, std::plus<>(),
        [](float s) { return static_cast<double>(s) * s; });
    const double rms = std::sqrt(energy / static_cast<double>(frame.size()));
    if (rms < cfg.silence_rms) {
      track.frames.push_back(out);
      continue;
    }

    const YinLag lag = yin_frame_lag(frame, tau_min, tau_max, cfg.threshold);
    out.f0 = rate / lag.tau;
    out.confidence = std::clamp(1.0 - lag.cmndf, 0.0, 1.0);
    track.frames.push_back(out);
  }
  return track;
}

double aggregate_f0(const PitchTrack &track, F0Statistic statistic) {
  std::vector<double> voiced;
  for (const auto &f : track.frames)
    if (f.f0) voiced.push_back(*f.f0);
  if (voiced.empty())
    throw Error(Errc::kUnvoicedClip, "no voiced frames in pitch track");

  if (statistic == F0Statistic::kMedian) {
    const std::size_t mid = voiced.size() / 2;
    std::nth_element(voiced.begin(), voiced.begin() + mid, voiced.end());
    if (voiced.size() % 2 == 1) return voiced[mid];
    const double upper = voiced[mid];
    const double lower = *std::max_element(voiced.begin(), voiced.begin() + mid);
    return 0.5 * (lower + upper);
  }
  return std::accumulate(voiced.begin(), voiced.end(), 0.0) /
         static_cast<double>(voiced.size());
}

PitchComparison compare_pitch(double f0_ref, double f0_rec) {
  if (!(f0_ref > 0.0) || !(f0_rec > 0.0))
    throw Error(Errc::kInvalidArgument, "compare_pitch: frequencies must be positive");
  PitchComparison out;
  out.f0_ref_mean = f0_ref;
  out.f0_rec_mean = f0_rec;
  out.semitone_diff = std::abs(12.0 * std::log2(f0_rec / f0_ref));
  out.relative_deviation_pct = 100.0 * std::abs(f0_rec - f0_ref) / f0_ref;
  return out;
}

}  // namespace clineval
