// vtlkws/wav.hpp

// Copyright 2026  vtlkws authors

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

#ifndef VTLKWS_WAV_HPP_
#define VTLKWS_WAV_HPP_

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vtlkws {

struct WavData {
  std::vector<float> samples;  // mono, in [-1, 1]
  int sample_rate = 0;
};

// Reads a RIFF/WAVE file. Only 16-bit PCM mono is accepted; samples are
// scaled to [-1, 1] by division by 32768. Chunks are scanned, so files with
// LIST/fact chunks before the data chunk parse fine.
inline WavData read_wav(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open WAV file: " + path.string());
  }

  char riff[4], wave[4];
  std::uint32_t riff_size = 0;
  file.read(riff, 4);
  file.read(reinterpret_cast<char*>(&riff_size), 4);
  file.read(wave, 4);
  if (!file || std::memcmp(riff, "RIFF", 4) != 0 ||
      std::memcmp(wave, "WAVE", 4) != 0) {
    throw std::runtime_error("not a RIFF/WAVE file: " + path.string());
  }

  std::uint16_t audio_format = 0, num_channels = 0, bits_per_sample = 0;
  std::uint32_t sample_rate = 0;
  bool found_fmt = false;
  WavData out;

  while (file) {
    char id[4];
    std::uint32_t size = 0;
    file.read(id, 4);
    file.read(reinterpret_cast<char*>(&size), 4);
    if (!file) break;
    const auto chunk_start = file.tellg();

    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) {
        throw std::runtime_error("malformed fmt chunk: " + path.string());
      }
      std::uint32_t byte_rate = 0;
      std::uint16_t block_align = 0;
      file.read(reinterpret_cast<char*>(&audio_format), 2);
      file.read(reinterpret_cast<char*>(&num_channels), 2);
      file.read(reinterpret_cast<char*>(&sample_rate), 4);
      file.read(reinterpret_cast<char*>(&byte_rate), 4);
      file.read(reinterpret_cast<char*>(&block_align), 2);
      file.read(reinterpret_cast<char*>(&bits_per_sample), 2);
      found_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      if (!found_fmt) {
        throw std::runtime_error("data chunk before fmt chunk: " +
                                 path.string());
      }
      if (audio_format != 1 || bits_per_sample != 16) {
        throw std::runtime_error("unsupported WAV encoding (want 16-bit PCM): " +
                                 path.string());
      }
      if (num_channels != 1) {
        throw std::runtime_error("unsupported channel count " +
                                 std::to_string(num_channels) +
                                 " (want mono): " + path.string());
      }
      const std::size_t n = size / 2;
      std::vector<std::int16_t> raw(n);
      file.read(reinterpret_cast<char*>(raw.data()),
                static_cast<std::streamsize>(n * 2));
      if (!file) {
        throw std::runtime_error("truncated data chunk: " + path.string());
      }
      out.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        out.samples[i] = static_cast<float>(raw[i]) / 32768.0f;
      }
      out.sample_rate = static_cast<int>(sample_rate);
      return out;
    }

    // Skip to the next chunk; chunks are word-aligned.
    file.seekg(chunk_start);
    file.seekg(size + (size & 1), std::ios::cur);
  }
  throw std::runtime_error("no data chunk found: " + path.string());
}

// Writes 16-bit PCM mono. Samples are clipped to [-1, 1] before quantizing.
inline void write_wav(const std::filesystem::path& path,
                      const std::vector<float>& samples, int sample_rate) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(samples.size() * 2);
  const std::uint32_t riff_size = 36 + data_bytes;
  const std::uint16_t audio_format = 1, channels = 1, bits = 16;
  const std::uint32_t rate = static_cast<std::uint32_t>(sample_rate);
  const std::uint32_t byte_rate = rate * 2;
  const std::uint16_t block_align = 2;
  const std::uint32_t fmt_size = 16;

  file.write("RIFF", 4);
  file.write(reinterpret_cast<const char*>(&riff_size), 4);
  file.write("WAVE", 4);
  file.write("fmt ", 4);
  file.write(reinterpret_cast<const char*>(&fmt_size), 4);
  file.write(reinterpret_cast<const char*>(&audio_format), 2);
  file.write(reinterpret_cast<const char*>(&channels), 2);
  file.write(reinterpret_cast<const char*>(&rate), 4);
  file.write(reinterpret_cast<const char*>(&byte_rate), 4);
  file.write(reinterpret_cast<const char*>(&block_align), 2);
  file.write(reinterpret_cast<const char*>(&bits), 2);
  file.write("data", 4);
  file.write(reinterpret_cast<const char*>(&data_bytes), 4);
  for (float s : samples) {
    const float c = std::clamp(s, -1.0f, 1.0f);
    const auto q = static_cast<std::int16_t>(
        std::clamp(static_cast<int>(std::lrintf(c * 32767.0f)), -32768, 32767));
    file.write(reinterpret_cast<const char*>(&q), 2);
  }
  if (!file) {
    throw std::runtime_error("short write: " + path.string());
  }
}

}  // namespace vtlkws

#endif  // VTLKWS_WAV_HPP_
