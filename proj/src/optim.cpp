// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/optim.hpp"

#include <cmath>

#include "esdd/error.hpp"

namespace esdd {

void Sgd::step(ag::ParamStore& store) {
  for (ag::Parameter* p : store.all()) p->value -= lr_ * p->grad;
}

void Adam::step(ag::ParamStore& store) {
  ++t_;
  double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (ag::Parameter* p : store.all()) {
    State& s = state_[p->name];
    if (s.m.size() == 0) {
      s.m = ag::Mat::Zero(p->value.rows(), p->value.cols());
      s.v = ag::Mat::Zero(p->value.rows(), p->value.cols());
    }
    s.m = beta1_ * s.m + (1.0 - beta1_) * p->grad;
    s.v = beta2_ * s.v + (1.0 - beta2_) * p->grad.cwiseProduct(p->grad);
    ag::Mat mhat = s.m / bc1;
    ag::Mat vhat = s.v / bc2;
    p->value -=
        lr_ * mhat.cwiseQuotient(vhat.cwiseSqrt().array().matrix() +
                                 ag::Mat::Constant(vhat.rows(), vhat.cols(), eps_));
  }
}

std::unique_ptr<Optimizer> make_optimizer(const std::string& name, double lr) {
  if (name == "adam") return std::make_unique<Adam>(lr);
  if (name == "sgd") return std::make_unique<Sgd>(lr);
  throw ConfigError("unknown optimizer: " + name);
}

}  // namespace esdd
