// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_VOCODER_HPP
#define ESDD_VOCODER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "esdd/audio.hpp"
#include "esdd/mel.hpp"

namespace esdd {

// Mel-to-waveform resynthesizer. Implementations must return audio at the
// mel spectrogram's sample rate covering the analyzed frame span, so that
// fix_duration-normalized lengths match the source.
class Resynthesizer {
 public:
  virtual ~Resynthesizer() = default;
  virtual std::string name() const = 0;
  virtual Waveform resynthesize(const MelSpec& mel) const = 0;
};

struct GriffinLimConfig {
  int iterations = 32;
  enum class PhaseInit { kZero, kRandom };
  PhaseInit phase_init = PhaseInit::kZero;
  uint64_t seed = 0;  // used for kRandom
};

// Classic Griffin-Lim phase recovery against a magnitude target obtained by
// the pseudo-inverse of the mel filterbank (clamped at zero). The iteration
// alternates least-squares iSTFT and STFT; if iter_distances is given, the
// Frobenius distance || |STFT(x_t)| - M ||_F is recorded after every
// iteration (non-increasing by construction).
Waveform griffin_lim(const MelSpec& m, const GriffinLimConfig& cfg,
                     std::vector<double>* iter_distances = nullptr);

class GriffinLimResynthesizer : public Resynthesizer {
 public:
  explicit GriffinLimResynthesizer(GriffinLimConfig cfg = {}) : cfg_(cfg) {}
  std::string name() const override { return "gl"; }
  Waveform resynthesize(const MelSpec& mel) const override {
    return griffin_lim(mel, cfg_);
  }

 private:
  GriffinLimConfig cfg_;
};

// Analysis-resynthesis of a bona fide waveform; callers label the result as
// spoofed training material.
Waveform copy_synthesis(const Waveform& w, const Resynthesizer& r,
                        const MelConfig& cfg);

}  // namespace esdd

#endif  // ESDD_VOCODER_HPP
