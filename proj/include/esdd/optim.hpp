// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_OPTIM_HPP
#define ESDD_OPTIM_HPP

#include <map>
#include <memory>
#include <string>

#include "esdd/autograd.hpp"

namespace esdd {

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  // Applies one update from the accumulated gradients (does not zero them).
  virtual void step(ag::ParamStore& store) = 0;
};

class Sgd : public Optimizer {
 public:
  explicit Sgd(double lr) : lr_(lr) {}
  void step(ag::ParamStore& store) override;

 private:
  double lr_;
};

class Adam : public Optimizer {
 public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999,
                double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}
  void step(ag::ParamStore& store) override;

 private:
  struct State {
    ag::Mat m, v;
  };
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  std::map<std::string, State> state_;
};

std::unique_ptr<Optimizer> make_optimizer(const std::string& name, double lr);

}  // namespace esdd

#endif  // ESDD_OPTIM_HPP
