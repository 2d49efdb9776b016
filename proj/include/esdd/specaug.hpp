// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_SPECAUG_HPP
#define ESDD_SPECAUG_HPP

#include <cmath>

#include "esdd/mel.hpp"
#include "esdd/rng.hpp"

namespace esdd {

struct SpecAugConfig {
  int n_freq_masks = 2;
  int max_freq_width = 16;  // mel bins
  int n_time_masks = 2;
  int max_time_width = 40;  // frames
  double fill_value = std::log(1e-10);
};

// Masks n_freq_masks random mel-bin bands and n_time_masks random frame
// bands with fill_value. Band widths are uniform in [0, max_width] (clipped
// to the spectrogram size); everything outside the bands is left untouched.
// Deterministic given the rng state: frequency masks are drawn first, then
// time masks, each as (width, start) pairs.
MelSpec spec_augment(const MelSpec& m, const SpecAugConfig& cfg,
                     RngStream& rng);

}  // namespace esdd

#endif  // ESDD_SPECAUG_HPP
