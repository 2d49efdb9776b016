// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <functional>

#include "esdd/autograd.hpp"
#include "support/grad_check.hpp"
#include "support/test_util.hpp"

using namespace esdd;
using ag::Graph;
using ag::Mat;
using ag::Var;
using esdd_test::random_matrix;

namespace {

// Checks d(loss)/d(params) for a scalar-valued graph builder against central
// finite differences over every parameter entry.
void check_op(const std::function<Var(Graph&, std::vector<ag::Parameter*>&)>& build,
              std::vector<std::pair<int, int>> shapes, uint64_t seed,
              double tol = 1e-6) {
  RngStream rng(seed);
  ag::ParamStore store;
  std::vector<ag::Parameter*> params;
  for (size_t i = 0; i < shapes.size(); ++i) {
    auto& p = store.add("p" + std::to_string(i), shapes[i].first,
                        shapes[i].second);
    p.value = random_matrix(shapes[i].first, shapes[i].second, rng, 0.8);
    params.push_back(&p);
  }

  auto loss = [&] {
    Graph g(false);
    std::vector<ag::Parameter*> ps = params;
    return g.value(build(g, ps))(0, 0);
  };
  auto grad = [&] {
    Graph g;
    std::vector<ag::Parameter*> ps = params;
    g.backward(build(g, ps));
  };

  RngStream pick(seed ^ 0xabcdef);
  auto res = esdd_test::finite_diff_check(store, {""}, 40, loss, grad, pick,
                                          1e-5, tol);
  CHECK(res.failed == 0);
  INFO("max rel err ", res.max_rel_err, " at ", res.worst);
  CHECK(res.max_rel_err < tol);
}

}  // namespace

TEST_SUITE("autograd") {

TEST_CASE("matmul + add chain") {
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        Var a = g.param(*p[0]);
        Var b = g.param(*p[1]);
        Var c = g.param(*p[2]);
        return g.sum_all(g.add(g.matmul(a, b), c));
      },
      {{4, 5}, {5, 3}, {4, 3}}, 1);
}

TEST_CASE("elementwise mul, sub and scale") {
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        Var a = g.param(*p[0]);
        Var b = g.param(*p[1]);
        return g.mean_all(g.scale(g.mul(a, g.sub(a, b)), 1.7));
      },
      {{6, 4}, {6, 4}}, 2);
}

TEST_CASE("mul_scalar couples both operands") {
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        Var a = g.param(*p[0]);
        Var s = g.param(*p[1]);
        return g.sum_all(g.mul_scalar(a, s));
      },
      {{3, 7}, {1, 1}}, 3);
}

TEST_CASE("add_rowvec broadcast") {
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        return g.sum_all(g.mul(g.add_rowvec(g.param(*p[0]), g.param(*p[1])),
                               g.param(*p[0])));
      },
      {{5, 6}, {1, 6}}, 4);
}

TEST_CASE("relu and gelu") {
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        return g.sum_all(g.relu(g.param(*p[0])));
      },
      {{8, 8}}, 5, 1e-4);  // relu kinks tolerate a looser bound
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        return g.sum_all(g.gelu(g.param(*p[0])));
      },
      {{8, 8}}, 6);
}

TEST_CASE("softmax and log_softmax rows") {
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        return g.sum_all(g.mul(g.softmax_rows(g.param(*p[0])), g.param(*p[1])));
      },
      {{5, 7}, {5, 7}}, 7);
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        return g.sum_all(
            g.mul(g.log_softmax_rows(g.param(*p[0])), g.param(*p[1])));
      },
      {{5, 7}, {5, 7}}, 8);
}

TEST_CASE("layer_norm") {
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        Var y = g.layer_norm(g.param(*p[0]), g.param(*p[1]), g.param(*p[2]));
        return g.sum_all(g.mul(y, g.param(*p[3])));
      },
      {{6, 9}, {1, 9}, {1, 9}, {6, 9}}, 9, 1e-5);
}

TEST_CASE("transpose, slices and concats") {
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        Var a = g.param(*p[0]);
        Var t = g.transpose(a);
        Var s1 = g.slice_rows(a, 1, 3);
        Var s2 = g.slice_cols(a, 2, 2);
        Var c = g.concat_cols({s1, g.slice_rows(a, 0, 3)});
        Var r = g.concat_rows({s2, g.slice_cols(a, 0, 2)});
        return g.add(g.add(g.sum_all(t), g.sum_all(g.mul(c, c))),
                     g.mean_all(g.mul(r, r)));
      },
      {{6, 6}}, 10);
}

TEST_CASE("pooling ops") {
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        Var a = g.param(*p[0]);
        Var pooled = g.concat_cols({g.max_rows(a), g.mean_rows(a)});
        return g.sum_all(g.mul(pooled, pooled));
      },
      {{7, 5}}, 11, 1e-4);  // max kinks
}

TEST_CASE("conv2d with padding and stride") {
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        Var img = g.param(*p[0]);    // 2 channels, 7x5 image
        Var wgt = g.param(*p[1]);    // 3 out channels
        Var bias = g.param(*p[2]);
        Var out = g.conv2d(img, wgt, bias, 7, 5, 3, 3, 2, 1);
        return g.sum_all(g.mul(out, out));
      },
      {{2, 35}, {3, 18}, {3, 1}}, 12);
}

TEST_CASE("parameter reused twice accumulates both paths") {
  check_op(
      [](Graph& g, std::vector<ag::Parameter*>& p) {
        Var a = g.param(*p[0]);
        Var b = g.param(*p[0]);  // same parameter, second leaf
        return g.sum_all(g.matmul(a, g.transpose(b)));
      },
      {{4, 4}}, 13);
}

TEST_CASE("backward accumulates into parameter grads across samples") {
  ag::ParamStore store;
  auto& p = store.add("w", 2, 2);
  p.value << 1.0, 2.0, 3.0, 4.0;

  for (int i = 0; i < 3; ++i) {
    Graph g;
    g.backward(g.sum_all(g.param(p)));
  }
  CHECK(p.grad == Mat::Constant(2, 2, 3.0));
  store.zero_grad();
  CHECK(p.grad == Mat::Zero(2, 2));
}

TEST_CASE("grad-disabled graphs refuse backward") {
  ag::ParamStore store;
  auto& p = store.add("w", 1, 1);
  Graph g(false);
  Var v = g.sum_all(g.param(p));
  CHECK_THROWS_AS(g.backward(v), std::logic_error);
}

TEST_CASE("shape mismatches are rejected") {
  Graph g;
  Var a = g.input(Mat::Zero(2, 3));
  Var b = g.input(Mat::Zero(3, 3));
  CHECK_THROWS_AS(g.add(a, b), std::invalid_argument);
  CHECK_THROWS_AS(g.mul(a, b), std::invalid_argument);
  CHECK_THROWS_AS(g.matmul(b, a), std::invalid_argument);
  CHECK_THROWS_AS(g.slice_rows(a, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(g.backward(a), std::invalid_argument);
}

}  // TEST_SUITE
