// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_TESTS_TEST_UTIL_HPP
#define ESDD_TESTS_TEST_UTIL_HPP

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <string>

#include "esdd/audio.hpp"
#include "esdd/mel.hpp"
#include "esdd/rng.hpp"

namespace esdd_test {

inline Eigen::MatrixXd random_matrix(int rows, int cols, esdd::RngStream& rng,
                                     double scale = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (long i = 0; i < m.size(); ++i) m.data()[i] = scale * rng.normal();
  return m;
}

inline esdd::Waveform sine_wave(double freq_hz, double seconds,
                                int sample_rate, double amp = 0.5) {
  esdd::Waveform w;
  w.sample_rate = sample_rate;
  int n = static_cast<int>(std::lround(seconds * sample_rate));
  w.samples.resize(n);
  double omega = 2.0 * M_PI * freq_hz / sample_rate;
  for (int i = 0; i < n; ++i) w.samples[i] = amp * std::sin(omega * i);
  return w;
}

inline esdd::Waveform noise_wave(double seconds, int sample_rate,
                                 esdd::RngStream& rng, double amp = 0.3) {
  esdd::Waveform w;
  w.sample_rate = sample_rate;
  int n = static_cast<int>(std::lround(seconds * sample_rate));
  w.samples.resize(n);
  for (int i = 0; i < n; ++i) w.samples[i] = amp * rng.normal();
  return w;
}

// Random but finite mel spectrogram with plausible log-power values.
inline esdd::MelSpec random_mel(int frames, int n_mels, esdd::RngStream& rng) {
  esdd::MelSpec m;
  m.config.n_mels = n_mels;
  m.values = random_matrix(frames, n_mels, rng, 2.0);
  m.values.array() -= 4.0;
  return m;
}

// Unique scratch directory under the system temp dir, wiped on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = (std::filesystem::temp_directory_path() /
             ("esdd_test_" + tag + "_" + std::to_string(counter_++)))
                .string();
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (std::filesystem::path(path_) / name).string();
  }

 private:
  static inline int counter_ = 0;
  std::string path_;
};

}  // namespace esdd_test

#endif  // ESDD_TESTS_TEST_UTIL_HPP
