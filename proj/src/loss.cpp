// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "esdd/error.hpp"

namespace esdd {

void ClassWeights::validate() const {
  if (!(w_fake > 0.0) || !(w_real > 0.0))
    throw ConfigError("class weights must be > 0");
}

ag::Var weighted_cross_entropy(ag::Graph& g, ag::Var logits, int label,
                               const ClassWeights& cw) {
  if (label != kClassFake && label != kClassReal)
    throw std::invalid_argument("weighted_cross_entropy: label must be 0 or 1");
  const auto& v = g.value(logits);
  if (v.rows() != 1 || v.cols() != 2)
    throw std::invalid_argument("weighted_cross_entropy: logits must be 1x2");
  double w = label == kClassFake ? cw.w_fake : cw.w_real;
  ag::Var ls = g.log_softmax_rows(logits);
  return g.scale(g.slice_cols(ls, label, 1), -w);
}

double weighted_cross_entropy(const std::array<double, 2>& logits, int label,
                              const ClassWeights& cw) {
  if (label != kClassFake && label != kClassReal)
    throw std::invalid_argument("weighted_cross_entropy: label must be 0 or 1");
  double w = label == kClassFake ? cw.w_fake : cw.w_real;
  double mx = std::max(logits[0], logits[1]);
  double lse =
      mx + std::log(std::exp(logits[0] - mx) + std::exp(logits[1] - mx));
  return -w * (logits[label] - lse);
}

}  // namespace esdd
