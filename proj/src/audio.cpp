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

#include "clineval/audio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>

#include "clineval/error.hpp"

namespace clineval {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t> &out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8)
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
}

void put_tag(std::vector<std::uint8_t> &out, const char *tag) {
  out.insert(out.end(), tag, tag + 4);
}

bool tag_is(const std::uint8_t *p, const char *tag) {
  return std::memcmp(p, tag, 4) == 0;
}

struct FormatChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

FormatChunk parse_fmt(const std::uint8_t *body, std::uint32_t size,
                      const std::string &where) {
  if (size < 16)
    throw Error(Errc::kTruncated, where + ": fmt chunk shorter than 16 bytes");
  FormatChunk fmt;
  fmt.format = read_u16(body);
  fmt.channels = read_u16(body + 2);
  fmt.sample_rate = read_u32(body + 4);
  fmt.block_align = read_u16(body + 12);
  fmt.bits = read_u16(body + 14);
  if (fmt.format == kFormatExtensible) {
    if (size < 40)
      throw Error(Errc::kTruncated,
                  where + ": WAVE_FORMAT_EXTENSIBLE fmt chunk too short");
    // The first two bytes of the sub-format GUID carry the plain format tag.
    fmt.format = read_u16(body + 24);
  }
  return fmt;
}

}  // namespace

AudioClip load_wav(const std::filesystem::path &path) {
  const std::string where = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::kMissingFile, where + ": cannot open file");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());

  if (bytes.size() < 12)
    throw Error(Errc::kTruncated, where + ": shorter than a RIFF header");
  if (!tag_is(bytes.data(), "RIFF") || !tag_is(bytes.data() + 8, "WAVE"))
    throw Error(Errc::kUnsupportedFormat, where + ": not a RIFF/WAVE file");

  std::optional<FormatChunk> fmt;
  const std::uint8_t *data = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size() && data == nullptr) {
    const std::uint8_t *header = bytes.data() + pos;
    const std::uint32_t chunk_size = read_u32(header + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;
    if (tag_is(header, "fmt ")) {
      if (chunk_size > available)
        throw Error(Errc::kTruncated, where + ": fmt chunk runs past end of file");
      fmt = parse_fmt(bytes.data() + body, chunk_size, where);
    } else if (tag_is(header, "data")) {
      if (!fmt)
        throw Error(Errc::kTruncated, where + ": data chunk before fmt chunk");
      if (chunk_size > available)
        throw Error(Errc::kTruncated,
                    where + ": data chunk declares " + std::to_string(chunk_size) +
                        " bytes but only " + std::to_string(available) +
                        " are present");
      data = bytes.data() + body;
      data_size = chunk_size;
    }
    pos = body + chunk_size + (chunk_size & 1u);
  }

  if (!fmt) throw Error(Errc::kTruncated, where + ": no fmt chunk");
  if (data == nullptr) throw Error(Errc::kTruncated, where + ": no data chunk");

  const bool pcm16 = fmt->format == kFormatPcm && fmt->bits == 16;
  const bool float32 = fmt->format == kFormatFloat && fmt->bits == 32;
  if (!pcm16 && !float32)
    throw Error(Errc::kUnsupportedFormat,
                where + ": unsupported encoding (format tag " +
                    std::to_string(fmt->format) + ", " +
                    std::to_string(fmt->bits) + " bits)");
  if (fmt->channels == 0 || fmt->sample_rate == 0)
    throw Error(Errc::kCorruptData, where + ": zero channels or sample rate");

  const std::size_t bytes_per_sample = fmt->bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt->channels;
  const std::size_t n_frames = data_size / frame_bytes;
  if (n_frames == 0)
    throw Error(Errc::kEmptyPayload, where + ": no audio frames");

  AudioClip clip;
  clip.sample_rate = static_cast<int>(fmt->sample_rate);
  clip.source_path = where;
  clip.samples.resize(n_frames);
  for (std::size_t f = 0; f < n_frames; ++f) {
    double sum = 0.0;
    for (std::size_t c = 0; c < fmt->channels; ++c) {
      const std::uint8_t *p = data + f * frame_bytes + c * bytes_per_sample;
      if (pcm16) {
        sum += static_cast<std::int16_t>(read_u16(p)) / 32768.0;
      } else {
        const float v = std::bit_cast<float>(read_u32(p));
        if (!std::isfinite(v))
          throw Error(Errc::kCorruptData,
                      where + ": non-finite sample at frame " + std::to_string(f));
        sum += std::clamp(static_cast<double>(v), -1.0, 1.0);
      }
    }
    clip.samples[f] = static_cast<float>(sum / fmt->channels);
  }
  return clip;
}

void write_wav(const std::filesystem::path &path, std::span<const float> samples,
               int sample_rate, WavEncoding encoding) {
  if (sample_rate <= 0)
    throw Error(Errc::kInvalidArgument, "write_wav: sample rate must be positive");
  const bool pcm16 = encoding == WavEncoding::kPcm16;
  const std::uint16_t bits = pcm16 ? 16 : 32;
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(samples.size() * (bits / 8));

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_size);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, pcm16 ? kFormatPcm : kFormatFloat);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(sample_rate));
  put_u32(out, static_cast<std::uint32_t>(sample_rate) * (bits / 8));
  put_u16(out, bits / 8);
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_size);
  for (float s : samples) {
    if (pcm16) {
      const long q = std::lround(static_cast<double>(s) * 32768.0);
      put_u16(out, static_cast<std::uint16_t>(
                       static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L))));
    } else {
      put_u32(out, std::bit_cast<std::uint32_t>(s));
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(Errc::kIo, path.string() + ": cannot open for writing");
  file.write(reinterpret_cast<const char *>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(Errc::kIo, path.string() + ": write failed");
}

std::size_t frame_count(std::size_t n_samples, const FrameSpec &spec) {
  if (spec.frame_len == 0 || spec.hop == 0 || n_samples < spec.frame_len)
    return 0;
  return (n_samples - spec.frame_len) / spec.hop + 1;
}

std::vector<std::span<const float>> frame_signal(const AudioClip &clip,
                                                 const FrameSpec &spec) {
  if (spec.frame_len == 0 || spec.hop == 0 || spec.hop > spec.frame_len)
    throw Error(Errc::kInvalidArgument,
                "frame_signal: need frame_len > 0 and 0 < hop <= frame_len");
  if (clip.samples.size() < spec.frame_len)
    throw Error(Errc::kTooShort,
                "frame_signal: clip has " + std::to_string(clip.samples.size()) +
                    " samples, frame needs " + std::to_string(spec.frame_len));
  const std::size_t n = frame_count(clip.samples.size(), spec);
  std::vector<std::span<const float>> frames;
  frames.reserve(n);
  const std::span<const float> all(clip.samples);
  for (std::size_t k = 0; k < n; ++k)
    frames.push_back(all.subspan(k * spec.hop, spec.frame_len));
  return frames;
}

}  // namespace clineval
