// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/specaug.hpp"

#include <algorithm>

namespace esdd {

MelSpec spec_augment(const MelSpec& m, const SpecAugConfig& cfg,
                     RngStream& rng) {
  MelSpec out = m;
  int frames = m.frames();
  int bins = m.n_mels();

  int max_f = std::min(cfg.max_freq_width, bins);
  for (int i = 0; i < cfg.n_freq_masks; ++i) {
    int width = rng.uniform_int(0, max_f);
    int start = rng.uniform_int(0, bins - width);
    out.values.block(0, start, frames, width).setConstant(cfg.fill_value);
  }

  int max_t = std::min(cfg.max_time_width, frames);
  for (int i = 0; i < cfg.n_time_masks; ++i) {
    int width = rng.uniform_int(0, max_t);
    int start = rng.uniform_int(0, frames - width);
    out.values.block(start, 0, width, bins).setConstant(cfg.fill_value);
  }
  return out;
}

}  // namespace esdd
