// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/branch.hpp"

#include <cmath>

#include "esdd/error.hpp"

namespace esdd {

SplitMode split_mode_from_string(const std::string& s) {
  if (s == "frequency") return SplitMode::kFrequency;
  if (s == "channel") return SplitMode::kChannel;
  if (s == "none") return SplitMode::kNone;
  throw ConfigError("split.mode must be one of frequency|channel|none, got '" +
                    s + "'");
}

std::string to_string(SplitMode m) {
  switch (m) {
    case SplitMode::kFrequency: return "frequency";
    case SplitMode::kChannel: return "channel";
    case SplitMode::kNone: return "none";
  }
  return "?";
}

void BranchConfig::validate() const {
  if (dim < 2) throw ConfigError("branch.dim must be >= 2");
  if (layers < 1) throw ConfigError("branch.layers must be >= 1");
}

std::pair<GridVar, GridVar> split_frequency(ag::Graph& g, const GridVar& in) {
  if (in.meta.h % 2 != 0)
    throw DataError("split_frequency: H=" + std::to_string(in.meta.h) +
                    " is odd");
  int half_rows = (in.meta.h / 2) * in.meta.w;
  GridMeta half = in.meta;
  half.h = in.meta.h / 2;
  ag::Var low = g.slice_rows(in.tokens, 0, half_rows);
  ag::Var high = g.slice_rows(in.tokens, half_rows, half_rows);
  return {GridVar{low, half, in.dim}, GridVar{high, half, in.dim}};
}

std::pair<GridVar, GridVar> split_channel(ag::Graph& g, const GridVar& in) {
  if (in.dim % 2 != 0)
    throw DataError("split_channel: dim=" + std::to_string(in.dim) +
                    " is odd");
  int half = in.dim / 2;
  ag::Var a = g.slice_cols(in.tokens, 0, half);
  ag::Var b = g.slice_cols(in.tokens, half, half);
  return {GridVar{a, in.meta, half}, GridVar{b, in.meta, half}};
}

BranchParams::BranchParams(ag::ParamStore& store, int in_dim_,
                           const BranchConfig& c, RngStream& rng,
                           const std::string& prefix)
    : in_dim(in_dim_), cfg(c) {
  cfg.validate();
  int e = cfg.dim;
  proj_w = &store.add(prefix + ".proj.w", in_dim, e);
  proj_b = &store.add(prefix + ".proj.b", 1, e);
  init_normal(*proj_w, 0.02, rng);
  layers.resize(cfg.layers);
  for (int l = 0; l < cfg.layers; ++l) {
    std::string lp = prefix + ".gat" + std::to_string(l);
    GatLayer& gl = layers[l];
    gl.wq = &store.add(lp + ".wq", e, e);
    gl.bq = &store.add(lp + ".bq", 1, e);
    gl.wk = &store.add(lp + ".wk", e, e);
    gl.bk = &store.add(lp + ".bk", 1, e);
    gl.wv = &store.add(lp + ".wv", e, e);
    gl.bv = &store.add(lp + ".bv", 1, e);
    gl.wo = &store.add(lp + ".wo", e, e);
    gl.bo = &store.add(lp + ".bo", 1, e);
    for (ag::Parameter* w : {gl.wq, gl.wk, gl.wv, gl.wo})
      init_normal(*w, 0.02, rng);
  }
}

ag::Var branch_forward(ag::Graph& g, const GridVar& in, const BranchParams& p) {
  if (in.dim != p.in_dim)
    throw DataError("branch_forward: token dim " + std::to_string(in.dim) +
                    " does not match branch input projection (" +
                    std::to_string(p.in_dim) + ")");
  double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(p.cfg.dim));
  ag::Var x = g.linear(in.tokens, *p.proj_w, p.proj_b);
  for (const auto& gl : p.layers) {
    ag::Var q = g.linear(x, *gl.wq, gl.bq);
    ag::Var k = g.linear(x, *gl.wk, gl.bk);
    ag::Var v = g.linear(x, *gl.wv, gl.bv);
    ag::Var attn = g.softmax_rows(g.scale(g.matmul(q, g.transpose(k)), inv_sqrt));
    ag::Var ctx = g.linear(g.matmul(attn, v), *gl.wo, gl.bo);
    x = g.add(x, ctx);
  }
  return g.concat_cols({g.max_rows(x), g.mean_rows(x)});
}

HeadParams::HeadParams(ag::ParamStore& store, int in_dim_, RngStream& rng,
                       const std::string& prefix)
    : in_dim(in_dim_) {
  w = &store.add(prefix + ".w", in_dim, 2);
  b = &store.add(prefix + ".b", 1, 2);
  init_normal(*w, 0.02, rng);
}

ag::Var classify(ag::Graph& g, ag::Var e1, ag::Var e2, const HeadParams& h) {
  ag::Var cat = g.concat_cols({e1, e2});
  if (g.value(cat).cols() != h.in_dim)
    throw DataError("classify: embedding width " +
                    std::to_string(g.value(cat).cols()) +
                    " does not match head (" + std::to_string(h.in_dim) + ")");
  return g.add_rowvec(g.matmul(cat, g.param(*h.w)), g.param(*h.b));
}

ag::Var classify_single(ag::Graph& g, ag::Var e, const HeadParams& h) {
  if (g.value(e).cols() != h.in_dim)
    throw DataError("classify: embedding width " +
                    std::to_string(g.value(e).cols()) +
                    " does not match head (" + std::to_string(h.in_dim) + ")");
  return g.add_rowvec(g.matmul(e, g.param(*h.w)), g.param(*h.b));
}

double score_from_logits(double fake_logit, double real_logit) {
  return real_logit - fake_logit;
}

}  // namespace esdd
