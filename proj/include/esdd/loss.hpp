// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_LOSS_HPP
#define ESDD_LOSS_HPP

#include <array>

#include "esdd/autograd.hpp"

namespace esdd {

// Class indices match the logit layout: 0 = fake/spoof, 1 = real/bona fide.
constexpr int kClassFake = 0;
constexpr int kClassReal = 1;

struct ClassWeights {
  double w_fake = 0.1;
  double w_real = 0.9;
  void validate() const;  // both must be > 0
};

// loss = -w_label * log softmax(logits)[label]. Batch losses are averaged by
// the caller (per-sample weight, no renormalization by the weight sum).
ag::Var weighted_cross_entropy(ag::Graph& g, ag::Var logits, int label,
                               const ClassWeights& cw);

// Plain-value twin of the graph op, for scoring paths and tests.
double weighted_cross_entropy(const std::array<double, 2>& logits, int label,
                              const ClassWeights& cw);

}  // namespace esdd

#endif  // ESDD_LOSS_HPP
