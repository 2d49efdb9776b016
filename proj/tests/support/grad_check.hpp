// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Central finite-difference gradient checking shared by the unit and
// acceptance suites.

#ifndef ESDD_TESTS_GRAD_CHECK_HPP
#define ESDD_TESTS_GRAD_CHECK_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "esdd/autograd.hpp"
#include "esdd/rng.hpp"

namespace esdd_test {

struct GradCheckResult {
  int checked = 0;
  int failed = 0;
  double max_rel_err = 0.0;
  std::string worst;
};

// loss_fn evaluates the scalar loss with the current parameter values;
// grad_fn runs one backward pass, leaving gradients in the store.
// Samples `per_group` entries from every name prefix in `groups` (empty
// prefix = all parameters) and compares the analytic gradient against
// (f(x+h) - f(x-h)) / 2h.
inline GradCheckResult finite_diff_check(
    esdd::ag::ParamStore& store, const std::vector<std::string>& groups,
    int per_group, const std::function<double()>& loss_fn,
    const std::function<void()>& grad_fn, esdd::RngStream& rng,
    double step = 1e-4, double tol = 1e-3) {
  store.zero_grad();
  grad_fn();

  GradCheckResult res;
  for (const std::string& prefix : groups) {
    auto params = store.group(prefix);
    long total = 0;
    for (auto* p : params) total += p->size();
    for (int s = 0; s < per_group && total > 0; ++s) {
      long flat = static_cast<long>(rng.next_u64() % total);
      esdd::ag::Parameter* target = nullptr;
      for (auto* p : params) {
        if (flat < p->size()) {
          target = p;
          break;
        }
        flat -= p->size();
      }
      double saved = target->value.data()[flat];
      double analytic = target->grad.data()[flat];

      target->value.data()[flat] = saved + step;
      double up = loss_fn();
      target->value.data()[flat] = saved - step;
      double down = loss_fn();
      target->value.data()[flat] = saved;

      double numeric = (up - down) / (2.0 * step);
      double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
      double rel = std::abs(analytic - numeric) / denom;
      ++res.checked;
      if (rel > res.max_rel_err) {
        res.max_rel_err = rel;
        res.worst = target->name + "[" + std::to_string(flat) + "]";
      }
      if (rel >= tol) ++res.failed;
    }
  }
  return res;
}

}  // namespace esdd_test

#endif  // ESDD_TESTS_GRAD_CHECK_HPP
