// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/model.hpp"

#include "esdd/checkpoint.hpp"
#include "esdd/error.hpp"

namespace esdd {

Model::Model(const ExperimentConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  RngStream rng(cfg_.seed ^ 0x6d6f64656cULL);  // model-init stream
  GridMeta grid = cfg_.grid();

  RngStream enc_rng = rng.derive("encoder");
  encoder_ = std::make_unique<EncoderParams>(store_, cfg_.encoder, grid,
                                             enc_rng);

  RngStream fus_rng = rng.derive("fusion");
  switch (cfg_.fusion.mode) {
    case FusionMode::kConcat:
      concat_ = std::make_unique<ConcatProjParams>(store_, cfg_.fusion.k,
                                                   cfg_.encoder.dim, fus_rng);
      break;
    case FusionMode::kCnnGate:
      cnn_gate_ =
          std::make_unique<CnnGateParams>(store_, cfg_.fusion.k, fus_rng);
      break;
    case FusionMode::kSeGate:
      se_gate_ = std::make_unique<SeGateParams>(store_, cfg_.fusion.k, fus_rng);
      break;
  }

  int branch_in = cfg_.encoder.dim;
  if (cfg_.split == SplitMode::kChannel) branch_in = cfg_.encoder.dim / 2;
  RngStream br_rng = rng.derive("branch");
  branch_a_ = std::make_unique<BranchParams>(store_, branch_in, cfg_.branch,
                                             br_rng, "branch0");
  if (cfg_.split != SplitMode::kNone) {
    branch_b_ = std::make_unique<BranchParams>(store_, branch_in, cfg_.branch,
                                               br_rng, "branch1");
  }

  int head_in = branch_a_->readout_dim() * (branch_b_ ? 2 : 1);
  RngStream hd_rng = rng.derive("head");
  head_ = std::make_unique<HeadParams>(store_, head_in, hd_rng);
}

Model::ForwardResult Model::forward(ag::Graph& g, const MelSpec& mel) const {
  ForwardResult res;
  GridVar tokens = patchify(g, mel, *encoder_);
  res.layers = encode(g, tokens, *encoder_);
  std::vector<GridVar> topk = select_topk(res.layers, cfg_.fusion.k);

  switch (cfg_.fusion.mode) {
    case FusionMode::kConcat:
      res.fused = fuse_concat(g, topk, *concat_);
      break;
    case FusionMode::kCnnGate: {
      auto [fused, w] = fuse_cnn_gate(g, topk, mel, *cnn_gate_);
      res.fused = fused;
      res.gate = w;
      break;
    }
    case FusionMode::kSeGate: {
      auto [fused, w] = fuse_se_gate(g, topk, *se_gate_);
      res.fused = fused;
      res.gate = w;
      break;
    }
  }

  if (cfg_.split == SplitMode::kNone) {
    ag::Var e = branch_forward(g, res.fused, *branch_a_);
    res.logits = classify_single(g, e, *head_);
  } else {
    auto [first, second] = cfg_.split == SplitMode::kFrequency
                               ? split_frequency(g, res.fused)
                               : split_channel(g, res.fused);
    ag::Var e1 = branch_forward(g, first, *branch_a_);
    ag::Var e2 = branch_forward(g, second, *branch_b_);
    res.logits = classify(g, e1, e2, *head_);
  }
  return res;
}

std::array<double, 2> Model::logits(const MelSpec& mel) const {
  ag::Graph g(/*grad_enabled=*/false);
  ForwardResult r = forward(g, mel);
  const auto& v = g.value(r.logits);
  return {v(0, 0), v(0, 1)};
}

double Model::score(const MelSpec& mel) const {
  auto l = logits(mel);
  return score_from_logits(l[kClassFake], l[kClassReal]);
}

std::optional<FusionWeights> Model::fusion_weights(const MelSpec& mel) const {
  ag::Graph g(/*grad_enabled=*/false);
  ForwardResult r = forward(g, mel);
  if (!r.gate) return std::nullopt;
  FusionWeights w;
  w.w = g.value(*r.gate).row(0).transpose();
  return w;
}

void Model::save(const std::string& path) const {
  save_checkpoint(path, store_);
}

void Model::load(const std::string& path) { load_checkpoint(path, store_); }

}  // namespace esdd
