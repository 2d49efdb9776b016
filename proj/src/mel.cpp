// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/mel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "esdd/dsp.hpp"
#include "esdd/error.hpp"

namespace esdd {

int MelConfig::win() const {
  return static_cast<int>(std::lround(frame_length_s * sample_rate));
}

int MelConfig::hop() const {
  return static_cast<int>(std::lround(frame_shift_s * sample_rate));
}

int MelConfig::frames_for(int len) const {
  return 1 + (len - win()) / hop();
}

void MelConfig::validate() const {
  if (sample_rate <= 0) throw ConfigError("frontend.sample_rate must be > 0");
  if (!(frame_shift_s > 0.0) || frame_length_s < frame_shift_s)
    throw ConfigError(
        "frontend frame lengths must satisfy frame_length_s >= "
        "frame_shift_s > 0");
  if (n_mels < 1) throw ConfigError("frontend.n_mels must be >= 1");
  if (fmin_hz < 0.0 || fmin_hz >= fmax_hz || fmax_hz > sample_rate / 2.0)
    throw ConfigError(
        "frontend mel range must satisfy 0 <= fmin_hz < fmax_hz <= "
        "sample_rate/2");
  if (!(log_floor > 0.0)) throw ConfigError("frontend.log_floor must be > 0");
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank mel_filterbank(const MelConfig& cfg, int n_fft) {
  int bins = n_fft / 2 + 1;
  double mel_lo = hz_to_mel(cfg.fmin_hz);
  double mel_hi = hz_to_mel(cfg.fmax_hz);

  std::vector<double> edges(cfg.n_mels + 2);
  for (int i = 0; i < cfg.n_mels + 2; ++i)
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (cfg.n_mels + 1));

  MelFilterbank fb;
  fb.weights = Eigen::MatrixXd::Zero(cfg.n_mels, bins);
  fb.center_freq_hz.resize(cfg.n_mels);
  for (int m = 0; m < cfg.n_mels; ++m) {
    double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
    fb.center_freq_hz[m] = mid;
    for (int k = 0; k < bins; ++k) {
      double f = static_cast<double>(k) * cfg.sample_rate / n_fft;
      double rise = (f - lo) / (mid - lo);
      double fall = (hi - f) / (hi - mid);
      fb.weights(m, k) = std::max(0.0, std::min(rise, fall));
    }
  }
  return fb;
}

MelSpec mel_spectrogram(const Waveform& w, const MelConfig& cfg) {
  cfg.validate();
  if (w.sample_rate != cfg.sample_rate)
    throw DataError("mel_spectrogram: waveform sample rate " +
                    std::to_string(w.sample_rate) +
                    " does not match configured rate " +
                    std::to_string(cfg.sample_rate) + " (resampling is out of scope)");
  int win = cfg.win();
  int hop = cfg.hop();
  if (w.length() < win)
    throw DataError("mel_spectrogram: audio shorter than one frame");

  Eigen::MatrixXcd spec = stft(w.samples, win, hop);
  int frames = static_cast<int>(spec.rows());
  Eigen::MatrixXd power = spec.cwiseAbs2();  // frames x bins

  MelFilterbank fb = mel_filterbank(cfg, win);
  MelSpec out;
  out.config = cfg;
  out.values.resize(frames, cfg.n_mels);
  Eigen::MatrixXd mel_power = power * fb.weights.transpose();
  double floor_val = cfg.log_floor;
  out.values = mel_power.unaryExpr(
      [floor_val](double v) { return std::log(std::max(v, floor_val)); });
  return out;
}

namespace {

void put_u32(std::ofstream& f, uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff),
               static_cast<char>((v >> 24) & 0xff)};
  f.write(b, 4);
}

uint32_t get_u32(std::ifstream& f, const std::string& path) {
  uint8_t b[4];
  if (!f.read(reinterpret_cast<char*>(b), 4))
    throw DataError("truncated mel cache: " + path);
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

}  // namespace

void save_mel(const std::string& path, const MelSpec& m) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write mel cache: " + path);
  f.write("MEL1", 4);
  put_u32(f, static_cast<uint32_t>(m.frames()));
  put_u32(f, static_cast<uint32_t>(m.n_mels()));
  for (int t = 0; t < m.frames(); ++t) {
    for (int k = 0; k < m.n_mels(); ++k) {
      float v = static_cast<float>(m.values(t, k));
      f.write(reinterpret_cast<const char*>(&v), 4);
    }
  }
  if (!f) throw DataError("short write to mel cache: " + path);
}

MelSpec load_mel(const std::string& path, const MelConfig& cfg) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open mel cache: " + path);
  char magic[4];
  if (!f.read(magic, 4) || std::memcmp(magic, "MEL1", 4) != 0)
    throw DataError("bad mel cache magic in: " + path);
  uint32_t frames = get_u32(f, path);
  uint32_t n_mels = get_u32(f, path);
  MelSpec m;
  m.config = cfg;
  m.values.resize(frames, n_mels);
  for (uint32_t t = 0; t < frames; ++t) {
    for (uint32_t k = 0; k < n_mels; ++k) {
      float v;
      if (!f.read(reinterpret_cast<char*>(&v), 4))
        throw DataError("truncated mel cache: " + path);
      m.values(t, k) = v;
    }
  }
  return m;
}

}  // namespace esdd
