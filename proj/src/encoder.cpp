// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/encoder.hpp"

#include <cmath>

#include "esdd/error.hpp"

namespace esdd {

void EncoderConfig::validate() const {
  if (depth < 1) throw ConfigError("encoder.depth must be >= 1");
  if (dim < 2) throw ConfigError("encoder.dim must be >= 2");
  if (heads < 1 || dim % heads != 0)
    throw ConfigError("encoder.heads must divide encoder.dim");
  if (mlp_ratio <= 0.0) throw ConfigError("encoder.mlp_ratio must be > 0");
  if (patch < 1) throw ConfigError("encoder patch size must be >= 1");
}

GridMeta patch_grid(int frames, int n_mels, int patch) {
  if (n_mels % patch != 0)
    throw DataError("patchify: n_mels (" + std::to_string(n_mels) +
                    ") not divisible by patch size " + std::to_string(patch));
  if (frames < patch)
    throw DataError("patchify: fewer frames (" + std::to_string(frames) +
                    ") than one patch column (" + std::to_string(patch) + ")");
  GridMeta m;
  m.patch = patch;
  m.h = n_mels / patch;
  m.w = frames / patch;
  return m;
}

void init_normal(ag::Parameter& p, double std_dev, RngStream& rng) {
  for (long i = 0; i < p.value.size(); ++i)
    p.value.data()[i] = std_dev * rng.normal();
}

void init_constant(ag::Parameter& p, double v) { p.value.setConstant(v); }

EncoderParams::EncoderParams(ag::ParamStore& store, const EncoderConfig& c,
                             const GridMeta& g, RngStream& rng,
                             const std::string& prefix)
    : cfg(c), grid(g) {
  cfg.validate();
  int d = cfg.dim;
  int ps = cfg.patch * cfg.patch;

  patch_embed = &store.add(prefix + ".patch_embed.w", ps, d);
  init_normal(*patch_embed, 0.02, rng);
  pos_embed = &store.add(prefix + ".pos_embed", grid.tokens(), d);
  init_normal(*pos_embed, 0.01, rng);

  int hidden = cfg.mlp_hidden();
  blocks.resize(cfg.depth);
  for (int l = 0; l < cfg.depth; ++l) {
    std::string bp = prefix + ".block" + std::to_string(l);
    Block& b = blocks[l];
    b.ln1_g = &store.add(bp + ".ln1.g", 1, d);
    b.ln1_b = &store.add(bp + ".ln1.b", 1, d);
    init_constant(*b.ln1_g, 1.0);
    b.wq = &store.add(bp + ".attn.wq", d, d);
    b.bq = &store.add(bp + ".attn.bq", 1, d);
    b.wk = &store.add(bp + ".attn.wk", d, d);
    b.bk = &store.add(bp + ".attn.bk", 1, d);
    b.wv = &store.add(bp + ".attn.wv", d, d);
    b.bv = &store.add(bp + ".attn.bv", 1, d);
    b.wo = &store.add(bp + ".attn.wo", d, d);
    b.bo = &store.add(bp + ".attn.bo", 1, d);
    for (ag::Parameter* w : {b.wq, b.wk, b.wv, b.wo}) init_normal(*w, 0.02, rng);
    b.ln2_g = &store.add(bp + ".ln2.g", 1, d);
    b.ln2_b = &store.add(bp + ".ln2.b", 1, d);
    init_constant(*b.ln2_g, 1.0);
    b.w1 = &store.add(bp + ".mlp.w1", d, hidden);
    b.b1 = &store.add(bp + ".mlp.b1", 1, hidden);
    b.w2 = &store.add(bp + ".mlp.w2", hidden, d);
    b.b2 = &store.add(bp + ".mlp.b2", 1, d);
    init_normal(*b.w1, 0.02, rng);
    init_normal(*b.w2, 0.02, rng);
  }
}

GridVar patchify(ag::Graph& g, const MelSpec& m, const EncoderParams& p) {
  int patch = p.cfg.patch;
  GridMeta meta = patch_grid(m.frames(), m.n_mels(), patch);
  if (!(meta == p.grid))
    throw DataError("patchify: spectrogram grid " + std::to_string(meta.h) +
                    "x" + std::to_string(meta.w) +
                    " does not match the configured positional table " +
                    std::to_string(p.grid.h) + "x" + std::to_string(p.grid.w));

  // (freq x time) view of the cropped spectrogram; mel row 0 is the lowest
  // frequency and maps to patch row i = 0.
  Eigen::MatrixXd freq_time = m.values.transpose();
  int flat = patch * patch;
  Eigen::MatrixXd patches(meta.tokens(), flat);
  for (int i = 0; i < meta.h; ++i) {
    for (int j = 0; j < meta.w; ++j) {
      for (int fr = 0; fr < patch; ++fr) {
        for (int tc = 0; tc < patch; ++tc) {
          patches(i * meta.w + j, fr * patch + tc) =
              freq_time(i * patch + fr, j * patch + tc);
        }
      }
    }
  }

  ag::Var x = g.matmul(g.input(std::move(patches)), g.param(*p.patch_embed));
  x = g.add(x, g.param(*p.pos_embed));
  return GridVar{x, meta, p.cfg.dim};
}

namespace {

ag::Var attention(ag::Graph& g, ag::Var x, const EncoderParams::Block& b,
                  int dim, int heads) {
  int dh = dim / heads;
  double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(dh));
  ag::Var q = g.linear(x, *b.wq, b.bq);
  ag::Var k = g.linear(x, *b.wk, b.bk);
  ag::Var v = g.linear(x, *b.wv, b.bv);
  std::vector<ag::Var> outs;
  outs.reserve(heads);
  for (int h = 0; h < heads; ++h) {
    ag::Var qh = g.slice_cols(q, h * dh, dh);
    ag::Var kh = g.slice_cols(k, h * dh, dh);
    ag::Var vh = g.slice_cols(v, h * dh, dh);
    ag::Var scores = g.scale(g.matmul(qh, g.transpose(kh)), inv_sqrt);
    ag::Var attn = g.softmax_rows(scores);
    outs.push_back(g.matmul(attn, vh));
  }
  ag::Var merged = heads == 1 ? outs[0] : g.concat_cols(outs);
  return g.linear(merged, *b.wo, b.bo);
}

}  // namespace

std::vector<GridVar> encode(ag::Graph& g, GridVar in, const EncoderParams& p) {
  if (in.dim != p.cfg.dim)
    throw DataError("encode: token dim " + std::to_string(in.dim) +
                    " does not match encoder dim " +
                    std::to_string(p.cfg.dim));
  std::vector<GridVar> layers;
  layers.reserve(p.cfg.depth);
  ag::Var x = in.tokens;
  for (const auto& b : p.blocks) {
    ag::Var n1 = g.layer_norm(x, g.param(*b.ln1_g), g.param(*b.ln1_b));
    x = g.add(x, attention(g, n1, b, p.cfg.dim, p.cfg.heads));
    ag::Var n2 = g.layer_norm(x, g.param(*b.ln2_g), g.param(*b.ln2_b));
    ag::Var h = g.gelu(g.linear(n2, *b.w1, b.b1));
    x = g.add(x, g.linear(h, *b.w2, b.b2));
    layers.push_back(GridVar{x, in.meta, in.dim});
  }
  return layers;
}

}  // namespace esdd
