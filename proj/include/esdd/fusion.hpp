// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_FUSION_HPP
#define ESDD_FUSION_HPP

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "esdd/encoder.hpp"

namespace esdd {

enum class FusionMode { kConcat, kCnnGate, kSeGate };

FusionMode fusion_mode_from_string(const std::string& s);  // throws ConfigError
std::string to_string(FusionMode m);

struct FusionConfig {
  FusionMode mode = FusionMode::kSeGate;
  int k = 4;
};

// Softmax fusion weights over the selected layers: nonnegative, sum 1.
struct FusionWeights {
  Eigen::VectorXd w;
  void validate(double tol = 1e-6) const;  // throws DataError
};

// Last k layers of the stack in encoder order (layer L-k+1 ... L).
std::vector<GridVar> select_topk(const std::vector<GridVar>& stack, int k);

// Per-token linear projection of the per-layer concatenated features,
// k*dim -> dim. With k = 1 and an identity matrix this is the identity map,
// which the tests rely on.
class ConcatProjParams {
 public:
  ConcatProjParams(ag::ParamStore& store, int k, int dim, RngStream& rng,
                   const std::string& prefix = "fusion.concat");
  ag::Parameter* w;  // k*dim x dim
  ag::Parameter* b;  // 1 x dim
  int k;
  int dim;
};

GridVar fuse_concat(ag::Graph& g, const std::vector<GridVar>& topk,
                    const ConcatProjParams& proj);

// Three stride-2 3x3 convolutions (channels 8 -> 16 -> 32, ReLU) over the
// mel image, global average pooling, then linear + softmax to k weights.
class CnnGateParams {
 public:
  CnnGateParams(ag::ParamStore& store, int k, RngStream& rng,
                const std::string& prefix = "fusion.cnn_gate");
  struct Conv {
    ag::Parameter* w;  // out_ch x in_ch*9
    ag::Parameter* b;  // out_ch x 1
    int in_ch, out_ch;
  };
  Conv conv[3];
  ag::Parameter* lin_w;  // 32 x k
  ag::Parameter* lin_b;  // 1 x k
  int k;
};

// The mel spectrogram must be the one the encoder consumed (same bins, and
// the same frame count before patch cropping).
std::pair<GridVar, ag::Var> fuse_cnn_gate(ag::Graph& g,
                                          const std::vector<GridVar>& topk,
                                          const MelSpec& mel,
                                          const CnnGateParams& gate);

// Squeeze-and-excitation gate: per-layer scalar descriptors (mean over all
// tokens and channels), two-layer MLP k -> ceil(k/2) -> k, softmax.
class SeGateParams {
 public:
  SeGateParams(ag::ParamStore& store, int k, RngStream& rng,
               const std::string& prefix = "fusion.se_gate");
  ag::Parameter* w1;  // k x hidden
  ag::Parameter* b1;  // 1 x hidden
  ag::Parameter* w2;  // hidden x k
  ag::Parameter* b2;  // 1 x k
  int k;
  int hidden;
};

std::pair<GridVar, ag::Var> fuse_se_gate(ag::Graph& g,
                                         const std::vector<GridVar>& topk,
                                         const SeGateParams& gate);

// Weighted sum of the stacked grids given a 1 x k weight node.
GridVar weighted_sum(ag::Graph& g, const std::vector<GridVar>& topk,
                     ag::Var weights);

}  // namespace esdd

#endif  // ESDD_FUSION_HPP
