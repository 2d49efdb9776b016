// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_MEL_HPP
#define ESDD_MEL_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "esdd/audio.hpp"

namespace esdd {

struct MelConfig {
  int sample_rate = 16000;
  double frame_length_s = 0.025;
  double frame_shift_s = 0.010;
  int n_mels = 128;
  double fmin_hz = 0.0;
  double fmax_hz = 8000.0;
  double log_floor = 1e-10;

  int win() const;  // round(frame_length_s * sample_rate)
  int hop() const;  // round(frame_shift_s * sample_rate)
  // Frame count for a waveform of `len` samples: 1 + floor((len - win) / hop).
  int frames_for(int len) const;
  void validate() const;  // throws ConfigError on invariant violations
};

// Log-mel spectrogram, frames x n_mels, natural log of mel power floored at
// log_floor (so every entry is >= log(log_floor)).
struct MelSpec {
  Eigen::MatrixXd values;
  MelConfig config;

  int frames() const { return static_cast<int>(values.rows()); }
  int n_mels() const { return static_cast<int>(values.cols()); }
};

// Triangular mel filterbank on the HTK mel scale
// (mel = 2595 * log10(1 + hz / 700)), n_mels filters over FFT bins of an
// n_fft-point transform. Filters are unnormalized triangles evaluated at the
// bin center frequencies.
struct MelFilterbank {
  Eigen::MatrixXd weights;             // n_mels x (n_fft/2 + 1)
  std::vector<double> center_freq_hz;  // triangle peaks, one per filter
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);
MelFilterbank mel_filterbank(const MelConfig& cfg, int n_fft);

// Hann-windowed power-spectrum STFT -> mel filterbank -> ln with floor.
// Throws DataError if the waveform is shorter than one frame or the sample
// rates disagree.
MelSpec mel_spectrogram(const Waveform& w, const MelConfig& cfg);

// On-disk cache: magic "MEL1", u32 frames, u32 n_mels (little-endian), then
// row-major float32 values (one row per frame).
void save_mel(const std::string& path, const MelSpec& m);
MelSpec load_mel(const std::string& path, const MelConfig& cfg);

}  // namespace esdd

#endif  // ESDD_MEL_HPP
