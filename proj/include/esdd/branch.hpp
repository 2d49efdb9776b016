// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_BRANCH_HPP
#define ESDD_BRANCH_HPP

#include <string>
#include <utility>

#include "esdd/encoder.hpp"

namespace esdd {

enum class SplitMode { kFrequency, kChannel, kNone };

SplitMode split_mode_from_string(const std::string& s);  // throws ConfigError
std::string to_string(SplitMode m);

struct BranchConfig {
  int dim = 32;    // branch embedding width E
  int layers = 2;  // graph-attention layers G
  void validate() const;
};

// Low half = patch rows 0 .. h/2-1 (the lowest mel frequencies), high half =
// rows h/2 .. h-1. Requires even h; frequency-major token order is preserved.
std::pair<GridVar, GridVar> split_frequency(ag::Graph& g, const GridVar& in);

// First and second channel halves; requires even dim.
std::pair<GridVar, GridVar> split_channel(ag::Graph& g, const GridVar& in);

// Input projection to E, G rounds of dense softmax self-attention with
// residual connections, then a max+mean readout over tokens (width 2E).
class BranchParams {
 public:
  BranchParams(ag::ParamStore& store, int in_dim, const BranchConfig& cfg,
               RngStream& rng, const std::string& prefix);
  struct GatLayer {
    ag::Parameter *wq, *wk, *wv, *wo;
    ag::Parameter *bq, *bk, *bv, *bo;
  };
  ag::Parameter* proj_w;  // in_dim x E
  ag::Parameter* proj_b;  // 1 x E
  std::vector<GatLayer> layers;
  int in_dim;
  BranchConfig cfg;

  int readout_dim() const { return 2 * cfg.dim; }
};

ag::Var branch_forward(ag::Graph& g, const GridVar& in, const BranchParams& p);

// Linear map from the concatenated branch readouts to the two class logits,
// column 0 = fake, column 1 = real.
class HeadParams {
 public:
  HeadParams(ag::ParamStore& store, int in_dim, RngStream& rng,
             const std::string& prefix = "head");
  ag::Parameter* w;  // in_dim x 2
  ag::Parameter* b;  // 1 x 2
  int in_dim;
};

ag::Var classify(ag::Graph& g, ag::Var e1, ag::Var e2, const HeadParams& h);
ag::Var classify_single(ag::Graph& g, ag::Var e, const HeadParams& h);

// Detection score: real logit minus fake logit (higher = more bona fide).
double score_from_logits(double fake_logit, double real_logit);

}  // namespace esdd

#endif  // ESDD_BRANCH_HPP
