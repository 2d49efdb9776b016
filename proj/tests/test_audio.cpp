// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <fstream>

#include "esdd/audio.hpp"
#include "esdd/error.hpp"
#include "esdd/rng.hpp"
#include "support/test_util.hpp"

using namespace esdd;
using esdd_test::TempDir;

namespace {

void put_u32(std::string& s, uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u16(std::string& s, uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
}

// Hand-rolled WAV writer so the reader is tested against independent bytes.
std::string raw_wav(uint16_t format, uint16_t channels, uint32_t rate,
                    uint16_t bits, const std::string& payload) {
  std::string s;
  s += "RIFF";
  put_u32(s, 36 + static_cast<uint32_t>(payload.size()));
  s += "WAVE";
  s += "fmt ";
  put_u32(s, 16);
  put_u16(s, format);
  put_u16(s, channels);
  put_u32(s, rate);
  put_u32(s, rate * channels * bits / 8);
  put_u16(s, channels * bits / 8);
  put_u16(s, bits);
  s += "data";
  put_u32(s, static_cast<uint32_t>(payload.size()));
  s += payload;
  return s;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_SUITE("audio") {

TEST_CASE("16-bit full-scale sample maps to 32767/32768") {
  TempDir tmp("wav16");
  std::string payload;
  put_u16(payload, 0x7fff);  // +32767
  put_u16(payload, 0x8000);  // -32768
  write_file(tmp.file("a.wav"), raw_wav(1, 1, 16000, 16, payload));
  Waveform w = load_waveform(tmp.file("a.wav"));
  CHECK(w.sample_rate == 16000);
  REQUIRE(w.samples.size() == 2);
  CHECK(w.samples[0] == doctest::Approx(32767.0 / 32768.0).epsilon(1e-12));
  CHECK(w.samples[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("zero-filled second decodes to 16000 zero samples") {
  TempDir tmp("wavzero");
  std::string payload(16000 * 2, '\0');
  write_file(tmp.file("z.wav"), raw_wav(1, 1, 16000, 16, payload));
  Waveform w = load_waveform(tmp.file("z.wav"));
  REQUIRE(w.samples.size() == 16000);
  for (double s : w.samples) CHECK(s == 0.0);
}

TEST_CASE("stereo (+0.5, -0.5) averages to silence") {
  TempDir tmp("wavst");
  std::string payload;
  for (int i = 0; i < 100; ++i) {
    float l = 0.5f, r = -0.5f;
    char b[8];
    std::memcpy(b, &l, 4);
    std::memcpy(b + 4, &r, 4);
    payload.append(b, 8);
  }
  write_file(tmp.file("s.wav"), raw_wav(3, 2, 16000, 32, payload));
  Waveform w = load_waveform(tmp.file("s.wav"));
  REQUIRE(w.samples.size() == 100);
  for (double s : w.samples) CHECK(s == 0.0);
}

TEST_CASE("float32 round trip through the 16-bit writer") {
  TempDir tmp("wavrt");
  Waveform w;
  w.sample_rate = 8000;
  RngStream rng(7);
  for (int i = 0; i < 500; ++i) w.samples.push_back(rng.uniform(-0.9, 0.9));
  save_waveform(tmp.file("w.wav"), w);
  Waveform r = load_waveform(tmp.file("w.wav"));
  REQUIRE(r.samples.size() == w.samples.size());
  CHECK(r.sample_rate == 8000);
  for (size_t i = 0; i < w.samples.size(); ++i)
    CHECK(std::abs(r.samples[i] - w.samples[i]) < 1.0 / 32768.0);
}

TEST_CASE("error paths: missing file, bad encoding, empty data") {
  TempDir tmp("waverr");
  CHECK_THROWS_AS(load_waveform(tmp.file("nope.wav")), DataError);

  write_file(tmp.file("bad.wav"), raw_wav(1, 1, 16000, 8, "xx"));
  CHECK_THROWS_AS(load_waveform(tmp.file("bad.wav")), DataError);

  write_file(tmp.file("empty.wav"), raw_wav(1, 1, 16000, 16, ""));
  CHECK_THROWS_AS(load_waveform(tmp.file("empty.wav")), DataError);

  write_file(tmp.file("junk.wav"), "not a wav at all");
  CHECK_THROWS_AS(load_waveform(tmp.file("junk.wav")), DataError);
}

TEST_CASE("fix_duration repeats short input cyclically") {
  Waveform w;
  w.sample_rate = 16000;
  RngStream rng(3);
  for (int i = 0; i < 32000; ++i) w.samples.push_back(rng.uniform(-1, 1));
  Waveform out = fix_duration(w, 4.0);
  REQUIRE(out.samples.size() == 64000);
  for (int i = 0; i < 32000; ++i) {
    CHECK(out.samples[i] == w.samples[i]);
    CHECK(out.samples[32000 + i] == w.samples[i]);
  }
}

TEST_CASE("fix_duration truncates long input to a bit-exact prefix") {
  Waveform w;
  w.sample_rate = 16000;
  RngStream rng(4);
  for (int i = 0; i < 96000; ++i) w.samples.push_back(rng.uniform(-1, 1));
  Waveform out = fix_duration(w, 4.0);
  REQUIRE(out.samples.size() == 64000);
  for (int i = 0; i < 64000; ++i) CHECK(out.samples[i] == w.samples[i]);
}

TEST_CASE("fix_duration is the identity at the exact length") {
  Waveform w;
  w.sample_rate = 16000;
  w.samples.assign(64000, 0.25);
  Waveform out = fix_duration(w, 4.0);
  CHECK(out.samples == w.samples);
}

TEST_CASE("fix_duration length and repetition identity over random lengths") {
  RngStream rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Waveform w;
    w.sample_rate = 1000;
    int len = rng.uniform_int(1, 5000);
    for (int i = 0; i < len; ++i) w.samples.push_back(rng.uniform(-1, 1));
    double target_s = rng.uniform(0.001, 4.0);
    Waveform out = fix_duration(w, target_s);
    size_t expect = static_cast<size_t>(std::llround(target_s * 1000));
    REQUIRE(out.samples.size() == expect);
    for (size_t i = 0; i < out.samples.size(); ++i) {
      if (len >= static_cast<int>(expect)) {
        CHECK(out.samples[i] == w.samples[i]);
      } else {
        CHECK(out.samples[i] == w.samples[i % len]);
      }
    }
  }
}

}  // TEST_SUITE
