// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_ENCODER_HPP
#define ESDD_ENCODER_HPP

#include <string>
#include <vector>

#include "esdd/autograd.hpp"
#include "esdd/mel.hpp"
#include "esdd/rng.hpp"

namespace esdd {

struct EncoderConfig {
  int depth = 12;
  int dim = 64;
  int heads = 4;
  double mlp_ratio = 4.0;
  int patch = 16;

  int mlp_hidden() const { return static_cast<int>(dim * mlp_ratio); }
  void validate() const;  // throws ConfigError
};

// Patch grid geometry: h patches along frequency, w along time.
struct GridMeta {
  int h = 0;
  int w = 0;
  int patch = 16;

  int tokens() const { return h * w; }
  bool operator==(const GridMeta&) const = default;
};

// Token grid as a graph node: tokens() x dim matrix in frequency-major order
// (token t = i*w + j for patch row i, column j).
struct GridVar {
  ag::Var tokens;
  GridMeta meta;
  int dim = 0;
};

// Grid produced by a spectrogram of `frames` frames and n_mels bins.
// Throws DataError if n_mels is not divisible by the patch size or if fewer
// than one patch column fits.
GridMeta patch_grid(int frames, int n_mels, int patch);

// Parameter handles for the patch embedding, positional table and the
// transformer blocks. Registration order is fixed so checkpoints are stable.
class EncoderParams {
 public:
  EncoderParams(ag::ParamStore& store, const EncoderConfig& cfg,
                const GridMeta& grid, RngStream& rng,
                const std::string& prefix = "encoder");

  struct Block {
    ag::Parameter *ln1_g, *ln1_b;
    ag::Parameter *wq, *bq, *wk, *bk, *wv, *bv, *wo, *bo;
    ag::Parameter *ln2_g, *ln2_b;
    ag::Parameter *w1, *b1, *w2, *b2;
  };

  EncoderConfig cfg;
  GridMeta grid;
  ag::Parameter* patch_embed;  // patch*patch x dim
  ag::Parameter* pos_embed;    // tokens x dim
  std::vector<Block> blocks;
};

// Crops the spectrogram to whole patches (trailing frames dropped), embeds
// each 16x16 patch (row-major over frequency then time within the patch) and
// adds the positional embedding for token i*W + j.
GridVar patchify(ag::Graph& g, const MelSpec& m, const EncoderParams& p);

// Pre-norm transformer stack over the token sequence; returns the residual
// stream after every block (layer 1..depth).
std::vector<GridVar> encode(ag::Graph& g, GridVar x, const EncoderParams& p);

// Gaussian init helpers shared by the model modules.
void init_normal(ag::Parameter& p, double std_dev, RngStream& rng);
void init_constant(ag::Parameter& p, double v);

}  // namespace esdd

#endif  // ESDD_ENCODER_HPP
