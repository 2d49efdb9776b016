// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>

#include "esdd/error.hpp"
#include "esdd/mel.hpp"
#include "support/test_util.hpp"

using namespace esdd;
using esdd_test::TempDir;

TEST_SUITE("mel") {

TEST_CASE("4 s at 16 kHz with 25/10 ms framing gives 398 frames") {
  MelConfig cfg;
  // Independent route to the frame count.
  int win = static_cast<int>(std::lround(0.025 * 16000));
  int hop = static_cast<int>(std::lround(0.010 * 16000));
  int expect = 1 + (64000 - win) / hop;
  CHECK(expect == 398);

  RngStream rng(5);
  Waveform w = esdd_test::noise_wave(4.0, 16000, rng);
  MelSpec m = mel_spectrogram(w, cfg);
  CHECK(m.frames() == 398);
  CHECK(m.n_mels() == 128);
}

TEST_CASE("all-zero waveform hits the log floor everywhere") {
  MelConfig cfg;
  Waveform w;
  w.sample_rate = 16000;
  w.samples.assign(16000, 0.0);
  MelSpec m = mel_spectrogram(w, cfg);
  double floor_log = std::log(cfg.log_floor);
  for (int t = 0; t < m.frames(); ++t)
    for (int k = 0; k < m.n_mels(); ++k)
      CHECK(m.values(t, k) == doctest::Approx(floor_log).epsilon(1e-12));
}

TEST_CASE("1 kHz sine peaks in the filter whose center is nearest 1 kHz") {
  MelConfig cfg;
  Waveform w = esdd_test::sine_wave(1000.0, 1.0, 16000);
  MelSpec m = mel_spectrogram(w, cfg);

  Eigen::RowVectorXd mean = m.values.colwise().mean();
  int argmax = 0;
  mean.maxCoeff(&argmax);

  MelFilterbank fb = mel_filterbank(cfg, cfg.win());
  int nearest = 0;
  double best = 1e18;
  for (int i = 0; i < cfg.n_mels; ++i) {
    double d = std::abs(fb.center_freq_hz[i] - 1000.0);
    if (d < best) {
      best = d;
      nearest = i;
    }
  }
  CHECK(argmax == nearest);
}

TEST_CASE("lower bound holds for random inputs") {
  MelConfig cfg;
  RngStream rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    Waveform w = esdd_test::noise_wave(0.5, 16000, rng, 0.8);
    MelSpec m = mel_spectrogram(w, cfg);
    CHECK(m.values.minCoeff() >= std::log(cfg.log_floor) - 1e-12);
  }
}

TEST_CASE("dropping one hop of samples drops exactly the first frame") {
  MelConfig cfg;
  RngStream rng(13);
  Waveform w = esdd_test::noise_wave(2.0, 16000, rng);
  MelSpec full = mel_spectrogram(w, cfg);

  Waveform shifted;
  shifted.sample_rate = w.sample_rate;
  shifted.samples.assign(w.samples.begin() + cfg.hop(), w.samples.end());
  MelSpec tail = mel_spectrogram(shifted, cfg);

  REQUIRE(tail.frames() == full.frames() - 1);
  for (int t = 0; t < tail.frames(); ++t) {
    for (int k = 0; k < cfg.n_mels; ++k) {
      double a = tail.values(t, k);
      double b = full.values(t + 1, k);
      CHECK(std::abs(a - b) <= 1e-6 * std::max(std::abs(a), std::abs(b)));
    }
  }
}

TEST_CASE("audio shorter than one frame is rejected") {
  MelConfig cfg;
  Waveform w;
  w.sample_rate = 16000;
  w.samples.assign(cfg.win() - 1, 0.1);
  CHECK_THROWS_AS(mel_spectrogram(w, cfg), DataError);
}

TEST_CASE("sample-rate mismatch is rejected (no resampling)") {
  MelConfig cfg;
  Waveform w;
  w.sample_rate = 44100;
  w.samples.assign(44100, 0.1);
  CHECK_THROWS_AS(mel_spectrogram(w, cfg), DataError);
}

TEST_CASE("mel cache round trip") {
  TempDir tmp("melcache");
  MelConfig cfg;
  RngStream rng(17);
  Waveform w = esdd_test::noise_wave(0.5, 16000, rng);
  MelSpec m = mel_spectrogram(w, cfg);
  save_mel(tmp.file("m.mel"), m);
  MelSpec r = load_mel(tmp.file("m.mel"), cfg);
  REQUIRE(r.frames() == m.frames());
  REQUIRE(r.n_mels() == m.n_mels());
  for (int t = 0; t < m.frames(); ++t)
    for (int k = 0; k < m.n_mels(); ++k)
      CHECK(r.values(t, k) ==
            doctest::Approx(m.values(t, k)).epsilon(1e-6));
}

TEST_CASE("filterbank triangles are nonnegative and cover interior bins") {
  MelConfig cfg;
  MelFilterbank fb = mel_filterbank(cfg, cfg.win());
  CHECK(fb.weights.minCoeff() >= 0.0);
  for (int mseq = 0; mseq < cfg.n_mels; ++mseq)
    CHECK(fb.weights.row(mseq).maxCoeff() > 0.0);
}

}  // TEST_SUITE
