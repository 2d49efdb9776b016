// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/vocoder.hpp"

#include <cmath>
#include <complex>

#include "esdd/dsp.hpp"
#include "esdd/error.hpp"
#include "esdd/rng.hpp"

namespace esdd {

Waveform griffin_lim(const MelSpec& m, const GriffinLimConfig& cfg,
                     std::vector<double>* iter_distances) {
  if (cfg.iterations < 1)
    throw DataError("griffin_lim: iterations must be >= 1");
  const MelConfig& mc = m.config;
  int win = mc.win();
  int hop = mc.hop();
  int bins = win / 2 + 1;
  int frames = m.frames();
  int n_samples = win + (frames - 1) * hop;

  // Mel power back to a linear power spectrum via the filterbank
  // pseudo-inverse, clamped at zero to keep magnitudes real.
  MelFilterbank fb = mel_filterbank(mc, win);
  Eigen::MatrixXd pinv = fb.weights.completeOrthogonalDecomposition()
                             .pseudoInverse();  // bins x n_mels
  Eigen::MatrixXd mel_power = m.values.array().exp();  // frames x n_mels
  Eigen::MatrixXd lin_power =
      (pinv * mel_power.transpose()).cwiseMax(0.0);    // bins x frames
  Eigen::MatrixXd target = lin_power.cwiseSqrt().transpose();  // frames x bins

  Eigen::MatrixXd phase(frames, bins);
  if (cfg.phase_init == GriffinLimConfig::PhaseInit::kZero) {
    phase.setZero();
  } else {
    RngStream rng(cfg.seed);
    for (int t = 0; t < frames; ++t)
      for (int k = 0; k < bins; ++k)
        phase(t, k) = rng.uniform(-M_PI, M_PI);
  }

  std::vector<double> x;
  for (int it = 0; it < cfg.iterations; ++it) {
    Eigen::MatrixXcd spec(frames, bins);
    for (int t = 0; t < frames; ++t)
      for (int k = 0; k < bins; ++k)
        spec(t, k) = std::polar(target(t, k), phase(t, k));
    x = istft(spec, win, hop, n_samples);
    Eigen::MatrixXcd re = stft(x, win, hop);
    double dist2 = 0.0;
    for (int t = 0; t < frames; ++t) {
      for (int k = 0; k < bins; ++k) {
        phase(t, k) = std::arg(re(t, k));
        double d = std::abs(re(t, k)) - target(t, k);
        dist2 += d * d;
      }
    }
    if (iter_distances) iter_distances->push_back(std::sqrt(dist2));
  }

  Waveform out;
  out.sample_rate = mc.sample_rate;
  out.samples = std::move(x);
  return out;
}

Waveform copy_synthesis(const Waveform& w, const Resynthesizer& r,
                        const MelConfig& cfg) {
  return r.resynthesize(mel_spectrogram(w, cfg));
}

}  // namespace esdd
