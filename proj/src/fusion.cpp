// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/fusion.hpp"

#include <cmath>

#include "esdd/error.hpp"

namespace esdd {

FusionMode fusion_mode_from_string(const std::string& s) {
  if (s == "concat") return FusionMode::kConcat;
  if (s == "cnn_gate") return FusionMode::kCnnGate;
  if (s == "se_gate") return FusionMode::kSeGate;
  throw ConfigError("fusion.mode must be one of concat|cnn_gate|se_gate, got '" +
                    s + "'");
}

std::string to_string(FusionMode m) {
  switch (m) {
    case FusionMode::kConcat: return "concat";
    case FusionMode::kCnnGate: return "cnn_gate";
    case FusionMode::kSeGate: return "se_gate";
  }
  return "?";
}

void FusionWeights::validate(double tol) const {
  double sum = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    if (!(w(i) >= 0.0))
      throw DataError("fusion weight " + std::to_string(i) + " is negative");
    sum += w(i);
  }
  if (std::abs(sum - 1.0) > tol)
    throw DataError("fusion weights sum to " + std::to_string(sum));
}

std::vector<GridVar> select_topk(const std::vector<GridVar>& stack, int k) {
  int l = static_cast<int>(stack.size());
  if (k < 1 || k > l)
    throw DataError("select_topk: k=" + std::to_string(k) +
                    " out of range for " + std::to_string(l) + " layers");
  return std::vector<GridVar>(stack.end() - k, stack.end());
}

namespace {

void check_stack(const std::vector<GridVar>& topk) {
  if (topk.empty()) throw DataError("fusion: empty layer stack");
  for (const auto& gv : topk) {
    if (!(gv.meta == topk[0].meta) || gv.dim != topk[0].dim)
      throw DataError("fusion: heterogeneous grid shapes in stack");
  }
}

}  // namespace

// ----------------------------------------------------------------- concat

ConcatProjParams::ConcatProjParams(ag::ParamStore& store, int k_, int dim_,
                                   RngStream& rng, const std::string& prefix)
    : k(k_), dim(dim_) {
  w = &store.add(prefix + ".w", k * dim, dim);
  b = &store.add(prefix + ".b", 1, dim);
  init_normal(*w, 0.02, rng);
}

GridVar fuse_concat(ag::Graph& g, const std::vector<GridVar>& topk,
                    const ConcatProjParams& proj) {
  check_stack(topk);
  int k = static_cast<int>(topk.size());
  if (k != proj.k || topk[0].dim != proj.dim)
    throw DataError("fuse_concat: projection sized for k=" +
                    std::to_string(proj.k) + ", dim=" +
                    std::to_string(proj.dim));
  std::vector<ag::Var> parts;
  parts.reserve(k);
  for (const auto& gv : topk) parts.push_back(gv.tokens);
  ag::Var stacked = k == 1 ? parts[0] : g.concat_cols(parts);
  ag::Var fused = g.add_rowvec(g.matmul(stacked, g.param(*proj.w)),
                               g.param(*proj.b));
  return GridVar{fused, topk[0].meta, topk[0].dim};
}

// ----------------------------------------------------------------- cnn gate

CnnGateParams::CnnGateParams(ag::ParamStore& store, int k_, RngStream& rng,
                             const std::string& prefix)
    : k(k_) {
  const int channels[4] = {1, 8, 16, 32};
  for (int i = 0; i < 3; ++i) {
    conv[i].in_ch = channels[i];
    conv[i].out_ch = channels[i + 1];
    conv[i].w = &store.add(prefix + ".conv" + std::to_string(i) + ".w",
                           conv[i].out_ch, conv[i].in_ch * 9);
    conv[i].b = &store.add(prefix + ".conv" + std::to_string(i) + ".b",
                           conv[i].out_ch, 1);
    init_normal(*conv[i].w, 0.02, rng);
  }
  lin_w = &store.add(prefix + ".lin.w", 32, k);
  lin_b = &store.add(prefix + ".lin.b", 1, k);
  // Zero init so training starts from the uniform mixture.
}

std::pair<GridVar, ag::Var> fuse_cnn_gate(ag::Graph& g,
                                          const std::vector<GridVar>& topk,
                                          const MelSpec& mel,
                                          const CnnGateParams& gate) {
  check_stack(topk);
  int k = static_cast<int>(topk.size());
  if (k != gate.k)
    throw DataError("fuse_cnn_gate: gate sized for k=" + std::to_string(gate.k));
  const GridMeta& meta = topk[0].meta;
  if (mel.n_mels() != meta.h * meta.patch ||
      mel.frames() / meta.patch != meta.w)
    throw DataError("fuse_cnn_gate: mel spectrogram does not match the "
                    "encoder input grid");

  // Mel image as a 1-channel (frames x n_mels) picture, row-major pixels.
  int h = mel.frames(), w = mel.n_mels();
  Eigen::MatrixXd img(1, static_cast<long>(h) * w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      img(0, static_cast<long>(y) * w + x) = mel.values(y, x);

  ag::Var cur = g.input(std::move(img));
  int ch = h, cw = w;
  for (int i = 0; i < 3; ++i) {
    cur = g.conv2d(cur, g.param(*gate.conv[i].w), g.param(*gate.conv[i].b),
                   ch, cw, 3, 3, /*stride=*/2, /*pad=*/1);
    cur = g.relu(cur);
    ch = (ch + 2 - 3) / 2 + 1;
    cw = (cw + 2 - 3) / 2 + 1;
  }
  // Global average pool over pixels, one value per channel -> 1 x 32.
  ag::Var pooled = g.mean_rows(g.transpose(cur));
  ag::Var logits = g.add_rowvec(g.matmul(pooled, g.param(*gate.lin_w)),
                                g.param(*gate.lin_b));
  ag::Var weights = g.softmax_rows(logits);
  return {weighted_sum(g, topk, weights), weights};
}

// ------------------------------------------------------------------ se gate

SeGateParams::SeGateParams(ag::ParamStore& store, int k_, RngStream& rng,
                           const std::string& prefix)
    : k(k_), hidden((k_ + 1) / 2) {
  w1 = &store.add(prefix + ".w1", k, hidden);
  b1 = &store.add(prefix + ".b1", 1, hidden);
  w2 = &store.add(prefix + ".w2", hidden, k);
  b2 = &store.add(prefix + ".b2", 1, k);
  init_normal(*w1, 0.02, rng);
  // w2/b2 zero init: uniform weights at the start of training.
}

std::pair<GridVar, ag::Var> fuse_se_gate(ag::Graph& g,
                                         const std::vector<GridVar>& topk,
                                         const SeGateParams& gate) {
  check_stack(topk);
  int k = static_cast<int>(topk.size());
  if (k != gate.k)
    throw DataError("fuse_se_gate: gate sized for k=" + std::to_string(gate.k));

  // Squeeze: one scalar per layer (mean over tokens and channels).
  std::vector<ag::Var> descr;
  descr.reserve(k);
  for (const auto& gv : topk) descr.push_back(g.mean_all(gv.tokens));
  ag::Var d = k == 1 ? descr[0] : g.concat_cols(descr);  // 1 x k

  ag::Var hid = g.relu(
      g.add_rowvec(g.matmul(d, g.param(*gate.w1)), g.param(*gate.b1)));
  ag::Var logits =
      g.add_rowvec(g.matmul(hid, g.param(*gate.w2)), g.param(*gate.b2));
  ag::Var weights = g.softmax_rows(logits);
  return {weighted_sum(g, topk, weights), weights};
}

GridVar weighted_sum(ag::Graph& g, const std::vector<GridVar>& topk,
                     ag::Var weights) {
  check_stack(topk);
  int k = static_cast<int>(topk.size());
  if (g.value(weights).rows() != 1 || g.value(weights).cols() != k)
    throw DataError("weighted_sum: weight vector must be 1 x k");
  ag::Var acc;
  for (int i = 0; i < k; ++i) {
    ag::Var wi = g.slice_cols(weights, i, 1);
    ag::Var term = g.mul_scalar(topk[i].tokens, wi);
    acc = i == 0 ? term : g.add(acc, term);
  }
  return GridVar{acc, topk[0].meta, topk[0].dim};
}

}  // namespace esdd
