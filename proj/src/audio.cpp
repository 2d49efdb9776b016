// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "esdd/error.hpp"

namespace esdd {

namespace {

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::string& s, uint32_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
  s.push_back(static_cast<char>((v >> 16) & 0xff));
  s.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16(std::string& s, uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
}

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;

}  // namespace

Waveform load_waveform(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open audio file: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const uint8_t* data = reinterpret_cast<const uint8_t*>(bytes.data());
  size_t size = bytes.size();

  if (size < 12 || std::memcmp(data, "RIFF", 4) != 0 ||
      std::memcmp(data + 8, "WAVE", 4) != 0) {
    throw DataError("not a RIFF/WAVE file: " + path);
  }

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  const uint8_t* payload = nullptr;
  uint32_t payload_size = 0;
  bool have_fmt = false;

  size_t pos = 12;
  while (pos + 8 <= size) {
    const uint8_t* chunk = data + pos;
    uint32_t chunk_size = read_u32(chunk + 4);
    const uint8_t* body = chunk + 8;
    if (pos + 8 + chunk_size > size) break;
    if (std::memcmp(chunk, "fmt ", 4) == 0 && chunk_size >= 16) {
      format = read_u16(body);
      channels = read_u16(body + 2);
      sample_rate = read_u32(body + 4);
      bits = read_u16(body + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      payload = body;
      payload_size = chunk_size;
    }
    pos += 8 + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || payload == nullptr)
    throw DataError("missing fmt/data chunk in WAV file: " + path);
  if (channels == 0 || sample_rate == 0)
    throw DataError("invalid WAV header in: " + path);

  bool pcm16 = (format == kFormatPcm && bits == 16);
  bool f32 = (format == kFormatFloat && bits == 32);
  if (!pcm16 && !f32) {
    throw DataError("unsupported WAV encoding (need 16-bit PCM or 32-bit "
                    "float) in: " + path);
  }

  uint32_t bytes_per_sample = bits / 8;
  uint32_t frame_size = bytes_per_sample * channels;
  uint32_t n_frames = payload_size / frame_size;
  if (n_frames == 0) throw DataError("zero-length audio in: " + path);

  Waveform w;
  w.sample_rate = static_cast<int>(sample_rate);
  w.samples.resize(n_frames);
  for (uint32_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    for (uint32_t c = 0; c < channels; ++c) {
      const uint8_t* s = payload + i * frame_size + c * bytes_per_sample;
      if (pcm16) {
        int16_t v = static_cast<int16_t>(s[0] | (s[1] << 8));
        acc += v / 32768.0;
      } else {
        float v;
        std::memcpy(&v, s, 4);
        acc += v;
      }
    }
    w.samples[i] = acc / channels;
  }
  return w;
}

void save_waveform(const std::string& path, const Waveform& w) {
  uint32_t n = static_cast<uint32_t>(w.samples.size());
  uint32_t data_size = n * 2;
  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  put_u32(out, 36 + data_size);
  out += "WAVE";
  out += "fmt ";
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<uint32_t>(w.sample_rate));
  put_u32(out, static_cast<uint32_t>(w.sample_rate) * 2);  // byte rate
  put_u16(out, 2);                                         // block align
  put_u16(out, 16);
  out += "data";
  put_u32(out, data_size);
  for (double x : w.samples) {
    double c = std::clamp(x, -1.0, 1.0);
    int16_t q = static_cast<int16_t>(std::lrint(c * 32767.0));
    put_u16(out, static_cast<uint16_t>(q));
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write audio file: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw DataError("short write to audio file: " + path);
}

Waveform fix_duration(const Waveform& w, double target_seconds) {
  if (w.samples.empty()) throw DataError("fix_duration: empty waveform");
  if (target_seconds <= 0.0)
    throw DataError("fix_duration: target_seconds must be > 0");
  size_t target =
      static_cast<size_t>(std::llround(target_seconds * w.sample_rate));
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.resize(target);
  size_t len = w.samples.size();
  if (len >= target) {
    std::copy(w.samples.begin(), w.samples.begin() + target,
              out.samples.begin());
  } else {
    for (size_t i = 0; i < target; ++i) out.samples[i] = w.samples[i % len];
  }
  return out;
}

}  // namespace esdd
