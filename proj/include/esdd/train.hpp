// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_TRAIN_HPP
#define ESDD_TRAIN_HPP

#include <string>
#include <vector>

#include "esdd/config.hpp"
#include "esdd/manifest.hpp"
#include "esdd/model.hpp"

namespace esdd {

struct EpochMetrics {
  int epoch = 0;
  double train_loss = 0.0;
  double train_acc = 0.0;
  double wallclock_s = 0.0;
};

struct TrainResult {
  std::vector<EpochMetrics> epochs;
  int steps = 0;
  std::string final_checkpoint;
};

// Trains the model in place over seeded shuffled mini-batches with
// class-weighted cross-entropy. SpecAug (if enabled) is applied per sample
// per step; copy-synthesis augmentation (if enabled) extends the manifest
// once, up front. Writes metrics.tsv (`epoch<TAB>train_loss<TAB>train_acc
// <TAB>wallclock_s`), periodic checkpoints and final.bin into out_dir. When
// dev_rows is non-null, per-epoch dev EER goes to dev_eer.tsv.
// Single-threaded and deterministic in the config seed. Throws DataError on
// a single-class manifest or a non-finite loss.
TrainResult train_model(Model& model, const std::vector<ManifestRow>& rows,
                        const std::vector<ManifestRow>* dev_rows,
                        const std::string& out_dir);

}  // namespace esdd

#endif  // ESDD_TRAIN_HPP
