// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_DSP_HPP
#define ESDD_DSP_HPP

#include <Eigen/Dense>
#include <vector>

namespace esdd {

// Periodic Hann window: w[i] = 0.5 - 0.5 cos(2*pi*i / n).
std::vector<double> hann_window(int n);

// Short-time Fourier transform without center padding. Frame t covers samples
// [t*hop, t*hop + win); the windowed frame is zero-padded to n_fft >= win, so
// the output has n_fft/2 + 1 bins per frame. Output shape: frames x bins.
// frames = 1 + floor((len - win) / hop); requires len >= win.
Eigen::MatrixXcd stft(const std::vector<double>& samples, int win, int hop,
                      int n_fft);

// Least-squares inverse of the zero-padded STFT (weighted overlap-add with
// the Hann analysis window, normalized by the summed squared window; only
// the first win samples of each inverse transform carry signal). Output has
// n_samples samples, where n_samples should be win + (frames - 1) * hop to
// cover every frame exactly.
std::vector<double> istft(const Eigen::MatrixXcd& frames, int win, int hop,
                          int n_fft, int n_samples);

}  // namespace esdd

#endif  // ESDD_DSP_HPP
