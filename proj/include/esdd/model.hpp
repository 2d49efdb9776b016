// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_MODEL_HPP
#define ESDD_MODEL_HPP

#include <array>
#include <memory>
#include <optional>

#include "esdd/branch.hpp"
#include "esdd/config.hpp"
#include "esdd/fusion.hpp"

namespace esdd {

// The detection network: encoder -> top-k fusion -> split -> two branch
// back-ends -> head. Parameters are seeded from the experiment seed, so the
// same config always builds the same initial model.
class Model {
 public:
  explicit Model(const ExperimentConfig& cfg);
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  struct ForwardResult {
    ag::Var logits;                     // 1 x 2 (fake, real)
    GridVar fused;                      // fused token grid
    std::optional<ag::Var> gate;        // fusion weights (gated modes)
    std::vector<GridVar> layers;        // full encoder layer stack
  };

  // Builds one forward pass into the given graph.
  ForwardResult forward(ag::Graph& g, const MelSpec& mel) const;

  // Inference helpers (grad-free forwards).
  std::array<double, 2> logits(const MelSpec& mel) const;
  double score(const MelSpec& mel) const;
  std::optional<FusionWeights> fusion_weights(const MelSpec& mel) const;

  ag::ParamStore& params() { return store_; }
  const ag::ParamStore& params() const { return store_; }
  const ExperimentConfig& config() const { return cfg_; }

  void save(const std::string& path) const;
  void load(const std::string& path);

 private:
  ExperimentConfig cfg_;
  ag::ParamStore store_;
  std::unique_ptr<EncoderParams> encoder_;
  std::unique_ptr<ConcatProjParams> concat_;
  std::unique_ptr<CnnGateParams> cnn_gate_;
  std::unique_ptr<SeGateParams> se_gate_;
  std::unique_ptr<BranchParams> branch_a_;
  std::unique_ptr<BranchParams> branch_b_;  // null in single-branch mode
  std::unique_ptr<HeadParams> head_;
};

}  // namespace esdd

#endif  // ESDD_MODEL_HPP
