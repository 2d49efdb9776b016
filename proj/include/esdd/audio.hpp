// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_AUDIO_HPP
#define ESDD_AUDIO_HPP

#include <string>
#include <vector>

namespace esdd {

// Mono sample sequence in nominal range [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  int length() const { return static_cast<int>(samples.size()); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// Reads a WAV file (16-bit PCM or 32-bit IEEE float). Multi-channel input is
// averaged down to mono. 16-bit samples are scaled by 1/32768.
// Throws DataError for missing files, unsupported encodings or empty audio.
Waveform load_waveform(const std::string& path);

// Writes mono 16-bit PCM. Samples are clipped to [-1, 1] before quantization.
void save_waveform(const std::string& path, const Waveform& w);

// Trims or cyclically repeats to exactly round(target_seconds * sample_rate)
// samples: longer input keeps its prefix, shorter input wraps around
// (out[i] = in[i mod len]).
Waveform fix_duration(const Waveform& w, double target_seconds);

}  // namespace esdd

#endif  // ESDD_AUDIO_HPP
