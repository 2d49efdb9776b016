// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_CONFIG_HPP
#define ESDD_CONFIG_HPP

#include <cstdint>
#include <string>

#include "esdd/branch.hpp"
#include "esdd/fusion.hpp"
#include "esdd/loss.hpp"
#include "esdd/mel.hpp"
#include "esdd/specaug.hpp"

namespace esdd {

struct FrontendConfig {
  MelConfig mel;
  double duration_s = 4.0;
  bool specaug = true;
  SpecAugConfig specaug_cfg;

  int target_samples() const;
  int frames() const;  // frame count after fix_duration
};

struct TrainConfig {
  int batch_size = 8;
  int epochs = 3;
  double lr = 1e-4;
  std::string optimizer = "adam";  // adam | sgd
  ClassWeights class_weights;
  int max_steps = 0;        // 0 = no cap
  double target_loss = 0.0; // > 0: stop once epoch loss < target and acc == 1
  int checkpoint_every = 1; // epochs
  bool augment = false;     // copy-synthesis augmentation of the train set
};

struct AugmentConfig {
  double ratio = 0.3;
  int gl_iterations = 32;
};

// Full experiment description, serialized as flat `key = value` lines with
// dotted section prefixes (see README for the key list).
struct ExperimentConfig {
  uint64_t seed = 42;
  FrontendConfig frontend;
  EncoderConfig encoder;
  FusionConfig fusion;
  SplitMode split = SplitMode::kChannel;
  BranchConfig branch;
  TrainConfig training;
  AugmentConfig augmentation;

  // Patch grid implied by the frontend settings.
  GridMeta grid() const;
  // Cross-section consistency checks; throws ConfigError naming the
  // offending keys.
  void validate() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

// Desk-scale preset (the defaults above); paper-scale preset uses
// dim 768 / 12 heads, batch 32, 20 epochs.
ExperimentConfig desk_preset();
ExperimentConfig paper_preset();

}  // namespace esdd

#endif  // ESDD_CONFIG_HPP
